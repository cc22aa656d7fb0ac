#include "fdbo/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "fdbo/alpha_continuity.hpp"
#include "fdbo/data.hpp"
#include "fdbo/dyadic_blocks.hpp"
#include "fdbo/evolution.hpp"
#include "fdbo/picard_illposedness.hpp"
#include "fdbo/semigroup.hpp"

namespace fdbo::acceptance {
namespace {

using report::Json;

std::string g4(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

double rel_change(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

#define FDBO_TOLERANCE_FIELDS(X)                                                                              \
  X(c1_abs) X(c2_variation) X(c3_ratio_cap) X(c3_grid_change) X(c4_residual) X(c4_growth) X(c5_ratio_max)   \
  X(c5_nu_min) X(c5_mismatch) X(c6_min_slope) X(c6_window) X(c6_subcritical_max) X(c7_window_low)            \
  X(c7_window_high) X(c8_u2) X(c8_u3) X(c9_min_blocks) X(c9_stability) X(c9_vacuous) X(c10_refit)

CriterionResult c1_envelope(const Options& opt) {
  CriterionResult r{1, "semigroup envelope", false, "", Json::object()};
  const Grid g(4096, 64.0 * kPi);
  const auto times = log_time_grid(0.01, 5.0, 8);
  const double pairs[][2] = {{1, 2}, {1, 3}, {1, 4}, {1.5, 2}};
  double worst = -INFINITY;
  Json rows = Json::array();
  for (const auto& ab : pairs) {
    const SymbolParams p(ab[0], ab[1]);
    double excess = -INFINITY;
    for (double t : times) {
      const double psi = psi_envelope(t, p);
      for (int i = 0; i < g.n(); ++i) {
        const double k = g.k(i);
        const double lhs = std::exp(growth_dissipation_symbol(k, p) * t);
        excess = std::max(excess, lhs - psi * std::exp(-0.5 * std::pow(std::abs(k), p.beta) * t));
      }
    }
    rows.push_back({{"alpha", p.alpha}, {"beta", p.beta}, {"max_excess", excess}});
    worst = std::max(worst, excess);
  }
  r.passed = worst <= opt.tol.c1_abs;
  r.detail = {{"n", g.n()}, {"period", g.period()}, {"times", times.size()}, {"pairs", rows}, {"max_excess", worst}};
  r.summary = "max(e^{mt} - psi e^{-|xi|^b t/2}) = " + g4(worst) + " (limit " + g4(opt.tol.c1_abs) + ")";
  return r;
}

CriterionResult c2_smoothing(const Options& opt) {
  CriterionResult r{2, "smoothing rate grid stability", false, "", Json::object()};
  const SymbolParams p(1.0, 2.0);
  const auto times = log_time_grid(1e-3, 1.0, 8);
  const int ns[] = {256, 512, 1024};
  const double deltas[] = {0.0, 0.5 * p.beta, p.beta};
  const int data = 20;
  double worst = 0.0;
  double sup_at_zero = 0.0;
  Json rows = Json::array();
  for (double delta : deltas) {
    double var_max = 0.0;
    for (int d = 0; d < data; ++d) {
      double lo = INFINITY, hi = 0.0;
      for (int n : ns) {
        const Grid g(n, 2.0 * kPi);
        const SpectralField u = random_band_limited(g, 16, opt.seed + d);
        const double sr = smoothing_check(u, 0.0, delta, p, times).sup_ratio;
        lo = std::min(lo, sr);
        hi = std::max(hi, sr);
        if (delta == 0.0) sup_at_zero = std::max(sup_at_zero, sr);
      }
      var_max = std::max(var_max, (hi - lo) / lo);
    }
    rows.push_back({{"delta", delta}, {"max_variation", var_max}});
    worst = std::max(worst, var_max);
  }
  r.passed = worst < opt.tol.c2_variation;
  r.detail = {{"data", data}, {"band", 16}, {"deltas", rows}, {"max_variation", worst}, {"sup_ratio_delta0", sup_at_zero}};
  r.summary = "max sup_ratio variation over n = " + g4(worst) + " (limit " + g4(opt.tol.c2_variation) + ")";
  return r;
}

CriterionResult c3_kernels(const Options& opt) {
  CriterionResult r{3, "kernel rates", false, "", Json::object()};
  const Grid coarse(8192, 40.0 * kPi), fine(16384, 80.0 * kPi);
  const auto times = log_time_grid(1e-3, 1.0, 4);
  double worst_ratio = 0.0, worst_change = 0.0;
  Json rows = Json::array();
  for (double beta : {2.0, 4.0}) {
    const SymbolParams p(1.0, beta);
    for (double s : {0.0, 1.0}) {
      const double rr = std::max((3.0 + 2.0 * s) / beta, 0.0) + 0.1;
      double kmax = 0.0, wmax = 0.0, change = 0.0;
      for (double t : times) {
        const double psi = psi_envelope(t, p);
        const double kref = psi * std::pow(t, -s / beta - 0.5 / beta);
        const double wref = psi * std::pow(t, -0.5 * rr);
        const double kc = kernel_l2_norm(s, t, p, coarse) / kref, kf = kernel_l2_norm(s, t, p, fine) / kref;
        const double wc = weighted_kernel_l2_norm(s, t, p, coarse) / wref;
        const double wf = weighted_kernel_l2_norm(s, t, p, fine) / wref;
        kmax = std::max({kmax, kc, kf});
        wmax = std::max({wmax, wc, wf});
        change = std::max({change, rel_change(kc, kf), rel_change(wc, wf)});
      }
      rows.push_back({{"beta", beta}, {"s", s}, {"r", rr}, {"sup_kernel_ratio", kmax}, {"sup_weighted_ratio", wmax}, {"grid_change", change}});
      worst_ratio = std::max({worst_ratio, kmax, wmax});
      worst_change = std::max(worst_change, change);
    }
  }
  r.passed = worst_ratio <= opt.tol.c3_ratio_cap && worst_change <= opt.tol.c3_grid_change;
  r.detail = {{"cases", rows}, {"sup_ratio", worst_ratio}, {"grid_change", worst_change}};
  r.summary = "sup ratio " + g4(worst_ratio) + " (cap " + g4(opt.tol.c3_ratio_cap) + "), grid change " + g4(worst_change) +
              " (limit " + g4(opt.tol.c3_grid_change) + ")";
  return r;
}

SpectralField smooth_datum(const Options& opt) { return random_smooth_datum(Grid(256, 2.0 * kPi), 0.1, opt.seed); }

CriterionResult c4_energy(const Options& opt) {
  CriterionResult r{4, "energy identity", false, "", Json::object()};
  const SymbolParams p(1.0, 2.0);
  const SpectralField u0 = smooth_datum(opt);
  SolverConfig sc;
  sc.dt = 1e-4;
  sc.t_end = 1.0;
  const Trajectory traj = solve(u0, sc, p);
  const EnergyBalance eb = energy_balance(traj);
  const double n0 = sobolev_norm(u0, 0.0);
  double growth = 0.0;
  for (size_t k = 0; k < traj.states.size(); ++k)
    growth = std::max(growth, sobolev_norm(traj.states[k], 0.0) / (n0 * std::exp(traj.times[k])));
  r.passed = eb.max_residual <= opt.tol.c4_residual && growth <= opt.tol.c4_growth;
  r.detail = {{"frames", traj.states.size()}, {"max_residual", eb.max_residual}, {"max_l2_over_exp", growth},
              {"l2_initial", n0}, {"l2_final", sobolev_norm(traj.states.back(), 0.0)}};
  r.summary = "max residual " + g4(eb.max_residual) + " (limit " + g4(opt.tol.c4_residual) + "), sup |u|/(|u0|e^t) " +
              g4(growth);
  return r;
}

CriterionResult c5_picard(const Options& opt) {
  CriterionResult r{5, "picard contraction", false, "", Json::object()};
  const SymbolParams p(1.0, 2.0);
  const SpectralField u0 = smooth_datum(opt);
  PicardOptions po;
  po.norm_s = 2.0;
  std::vector<double> Ts = {0.4, 0.2, 0.1, 0.05}, factors;
  double worst_factor = 0.0, worst_mismatch = 0.0;
  bool converged = true;
  Json rows = Json::array();
  for (double T : Ts) {
    const PicardResult pr = picard_iterate(u0, T, 40, p, po);
    SolverConfig sc;
    sc.dt = 1e-4;
    sc.t_end = T;
    sc.record_every = 1 << 30;
    const SpectralField ref = solve(u0, sc, p).states.back();
    const double mismatch = sobolev_norm(pr.final_state() - ref, 2.0) / sobolev_norm(ref, 2.0);
    factors.push_back(pr.contraction_factor);
    worst_factor = std::max(worst_factor, pr.contraction_factor);
    worst_mismatch = std::max(worst_mismatch, mismatch);
    converged = converged && pr.converged;
    rows.push_back({{"T", T}, {"iterations", pr.diff_norms.size()}, {"contraction_factor", pr.contraction_factor},
                    {"converged", pr.converged}, {"stepper_mismatch_h2", mismatch}});
  }
  const double nu = illposed::loglog_slope(Ts, factors);
  r.passed = worst_factor < opt.tol.c5_ratio_max && nu > opt.tol.c5_nu_min && converged && worst_mismatch <= opt.tol.c5_mismatch;
  r.detail = {{"runs", rows}, {"fitted_nu", nu}, {"max_factor", worst_factor}, {"max_mismatch", worst_mismatch}};
  r.summary = "max ratio " + g4(worst_factor) + ", nu " + g4(nu) + ", H2 mismatch " + g4(worst_mismatch) + " (limit " +
              g4(opt.tol.c5_mismatch) + ")";
  return r;
}

CriterionResult c6_c2_inflation(const Options& opt) {
  CriterionResult r{6, "C2 inflation threshold", false, "", Json::object()};
  illposed::InflationConfig c;
  c.order = 2;
  c.s = -1.25;
  const auto super = illposed::inflation_sweep(c);
  c.s = -0.5;
  const auto sub = illposed::inflation_sweep(c);
  const double dev = std::abs(super.fitted_slope - super.theoretical_slope);
  r.passed = super.fitted_slope >= opt.tol.c6_min_slope && dev <= opt.tol.c6_window &&
             sub.fitted_slope <= opt.tol.c6_subcritical_max;
  r.detail = {{"s_-1.25", report::to_json(super)}, {"s_-0.5", report::to_json(sub)}};
  r.summary = "slope " + g4(super.fitted_slope) + " vs " + g4(super.theoretical_slope) + " at s=-1.25, " +
              g4(sub.fitted_slope) + " at s=-0.5";
  return r;
}

CriterionResult c7_c3_inflation(const Options& opt) {
  CriterionResult r{7, "C3 inflation", false, "", Json::object()};
  illposed::InflationConfig low;
  low.order = 3;
  low.beta = 1.5;
  low.s = -0.5;
  const auto a = illposed::inflation_sweep(low);
  illposed::InflationConfig high;
  high.order = 3;
  high.beta = 2.5;
  high.s = 1.5 - high.beta - 0.25;
  const auto b = illposed::inflation_sweep(high);
  const double da = std::abs(a.fitted_slope - a.theoretical_slope);
  const double db = std::abs(b.fitted_slope - b.theoretical_slope);
  r.passed = da <= opt.tol.c7_window_low && db <= opt.tol.c7_window_high;
  r.detail = {{"beta_1.5", report::to_json(a)}, {"beta_2.5", report::to_json(b)}};
  r.summary = "beta=1.5: " + g4(a.fitted_slope) + " vs " + g4(a.theoretical_slope) + ", beta=2.5: " + g4(b.fitted_slope) +
              " vs " + g4(b.theoretical_slope);
  return r;
}

double rel_l2(const SpectralField& a, const SpectralField& b) {
  return sobolev_norm(a - b, 0.0) / std::max(sobolev_norm(b, 0.0), 1e-300);
}

CriterionResult c8_oracle(const Options& opt) {
  CriterionResult r{8, "closed form vs quadrature oracle", false, "", Json::object()};
  const SymbolParams p(1.0, 2.0);
  const Grid g(256, 2.0 * kPi);
  std::mt19937_64 rng(opt.seed ^ 0x8u);
  std::uniform_int_distribution<int> pickN(12, 24);
  std::uniform_real_distribution<double> pickS(-1.5, 0.5);
  double e2max = 0.0, e3max = 0.0;
  Json rows = Json::array();
  for (int d = 0; d < 10; ++d) {
    const int N = pickN(rng);
    std::uniform_int_distribution<int> pickW(4, std::min(8, (N - 1) / 2));
    const int omega = pickW(rng);
    const double s = pickS(rng);
    const double t = std::pow(N, -p.beta - 0.05);
    const SpectralField u0 = illposed::build_datum({illposed::DatumKind::LinePair, double(N), double(omega), s}, g);
    const auto oracle = illposed::picard_derivatives(u0, t, p);
    const double e2 = rel_l2(illposed::u2_closed_form_lattice(u0, t, p), oracle.u2);
    const double e3 = rel_l2(illposed::u3_closed_form_lattice(u0, t, p), oracle.u3);
    e2max = std::max(e2max, e2);
    e3max = std::max(e3max, e3);
    rows.push_back({{"N", N}, {"omega", omega}, {"s", s}, {"t", t}, {"u2_error", e2}, {"u3_error", e3}});
  }
  r.passed = e2max <= opt.tol.c8_u2 && e3max <= opt.tol.c8_u3;
  r.detail = {{"draws", rows}, {"max_u2_error", e2max}, {"max_u3_error", e3max}};
  r.summary = "max rel error u2 " + g4(e2max) + " (limit " + g4(opt.tol.c8_u2) + "), u3 " + g4(e3max) + " (limit " +
              g4(opt.tol.c8_u3) + ")";
  return r;
}

CriterionResult c9_blocks(const Options& opt) {
  CriterionResult r{9, "dyadic block estimates", false, "", Json::object()};
  dyadic::EstimateOptions fine;
  fine.resolution = 32;
  dyadic::EstimateOptions coarse = fine;
  coarse.resolution = 16;
  bool ok = true;
  std::string parts;
  Json regimes = Json::array();
  for (auto reg : {dyadic::Regime::HighModulation, dyadic::Regime::PlusPlus, dyadic::Regime::PlusMinus}) {
    const auto blocks = dyadic::enumerate_blocks(reg, 5, 120, fine);
    const double c32 = dyadic::sup_ratio(dyadic::estimate_all(blocks, reg, 1.0, fine));
    const double c16 = dyadic::sup_ratio(dyadic::estimate_all(blocks, reg, 1.0, coarse));
    const double change = rel_change(c16, c32);
    const bool pass = blocks.size() >= opt.tol.c9_min_blocks && std::isfinite(c32) && c32 > 0.0 && change <= opt.tol.c9_stability;
    ok = ok && pass;
    regimes.push_back({{"regime", dyadic::regime_name(reg)}, {"blocks", blocks.size()}, {"C_32", c32}, {"C_16", c16}, {"change", change}});
    parts += dyadic::regime_name(reg) + " n=" + std::to_string(blocks.size()) + " C=" + g4(c32) + " (" + g4(change) + ") ";
  }
  // one block failing each admissibility relation
  const dyadic::BlockSpec vacuous[] = {
      {{16, 1, 1}, {1, 1, 1}, 1},
      {{4, 4, 4}, {1, 1, 1024}, 16},
      {{4, 4, 4}, {1024, 1024, 1024}, 1024},
  };
  double vac = 0.0;
  for (const auto& b : vacuous) {
    const auto e = dyadic::estimate_block_norm(b, dyadic::Regime::HighModulation, 1.0, fine);
    vac = std::max(vac, e.bound > 0.0 ? e.estimate / e.bound : e.estimate);
  }
  ok = ok && vac <= opt.tol.c9_vacuous;
  r.passed = ok;
  r.detail = {{"regimes", regimes}, {"vacuous_max_ratio", vac}};
  r.summary = parts + "vacuous " + g4(vac);
  return r;
}

alpha::ConvergenceReport alpha_study(const Options& opt, double dt) {
  alpha::FamilyConfig fc;
  fc.beta = 2.0;
  fc.alphas = {1.0, 1.5, 1.75, 1.9, 1.99, 2.0};
  fc.s0 = 3.0;
  fc.T = 1.0;
  fc.solver.dt = dt;
  fc.solver.record_every = static_cast<int>(std::lround(1e-2 / dt));
  const SpectralField u0 = random_smooth_datum(Grid(64, 2.0 * kPi), 0.1, opt.seed);
  return alpha::convergence_study(alpha::run_family(u0, fc), 1.5);
}

CriterionResult c10_alpha_limit(const Options& opt) {
  CriterionResult r{10, "alpha limit", false, "", Json::object()};
  const auto rep = alpha_study(opt, 1e-3);
  const auto half = alpha_study(opt, 5e-4);
  const double refit = rel_change(half.fitted_C, rep.fitted_C);
  r.passed = rep.tail_monotone && rep.dissipative && rep.envelope_ok && rep.fitted_C > 0.0 && refit <= opt.tol.c10_refit;
  r.detail = {{"report", report::to_json(rep)}, {"fitted_C_half_dt", half.fitted_C}, {"refit_change", refit}};
  r.summary = "C " + g4(rep.fitted_C) + " (half dt " + g4(half.fitted_C) + "), tail monotone " +
              (rep.tail_monotone ? "yes" : "no") + ", max quadratic form " + g4(rep.max_quadratic_form);
  return r;
}

using Fn = CriterionResult (*)(const Options&);
constexpr Fn kCriteria[] = {c1_envelope, c2_smoothing, c3_kernels,      c4_energy, c5_picard,
                            c6_c2_inflation, c7_c3_inflation, c8_oracle, c9_blocks, c10_alpha_limit};

}  // namespace

Tolerances read_tolerances(const cli::ConfigTable& cfg) {
  Tolerances t;
#define X(f) t.f = cfg.get_double("tol." #f, t.f);
  FDBO_TOLERANCE_FIELDS(X)
#undef X
  return t;
}

report::Json to_json(const Tolerances& t) {
  Json j;
#define X(f) j[#f] = t.f;
  FDBO_TOLERANCE_FIELDS(X)
#undef X
  return j;
}

std::vector<CriterionResult> run_criteria(const Options& opt) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= 10; ++id) {
    if (!opt.only.empty() && std::find(opt.only.begin(), opt.only.end(), id) == opt.only.end()) continue;
    try {
      out.push_back(kCriteria[id - 1](opt));
    } catch (const std::exception& e) {
      CriterionResult r{id, "criterion " + std::to_string(id), false, std::string("error: ") + e.what(), Json::object()};
      out.push_back(r);
    }
  }
  return out;
}

report::Json results_json(const std::vector<CriterionResult>& results, const Options& opt) {
  Json crit = Json::array();
  bool all = true;
  for (const auto& r : results) {
    crit.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"summary", r.summary}, {"detail", r.detail}});
    all = all && r.passed;
  }
  return Json{{"tool_version", report::kToolVersion},
              {"format_version", report::kFormatVersion},
              {"seed", opt.seed},
              {"tolerances", to_json(opt.tol)},
              {"all_passed", all},
              {"criteria", crit}};
}

CriterionResult determinism_check(const report::Json& first, const Options& opt) {
  CriterionResult r{11, "determinism", false, "", Json::object()};
  const std::string a = first.dump(2);
  const std::string b = results_json(run_criteria(opt), opt).dump(2);
  size_t diff = 0;
  while (diff < std::min(a.size(), b.size()) && a[diff] == b[diff]) ++diff;
  r.passed = a == b;
  r.detail = {{"bytes", a.size()}, {"identical", r.passed}};
  if (!r.passed) r.detail["first_difference_at"] = diff;
  r.summary = r.passed ? "rerun JSON identical (" + std::to_string(a.size()) + " bytes)"
                       : "rerun JSON differs at byte " + std::to_string(diff);
  return r;
}

std::string format_line(const CriterionResult& r) {
  return std::string(r.passed ? "PASS" : "FAIL") + "  " + (r.id < 10 ? " " : "") + std::to_string(r.id) + "  " + r.name +
         ": " + r.summary;
}

}  // namespace fdbo::acceptance
