#include "fdbo/experiments.hpp"

#include <cmath>
#include <ostream>

#include "fdbo/data.hpp"

namespace fdbo::cli {
namespace {

using report::Json;

struct Common {
  std::string out;
};

Grid read_grid(const ConfigTable& c, long n_default, double period_default) {
  const long n = c.get_int("n", n_default);
  const double period = c.get_double("period", period_default);
  if (n < 4 || n % 2 != 0) throw ConfigError("n must be an even integer >= 4");
  if (!(period > 0.0)) throw ConfigError("period must be positive");
  return Grid(static_cast<int>(n), period);
}

SymbolParams read_params(const ConfigTable& c, double alpha_default = 1.0, double beta_default = 2.0) {
  const double a = c.get_double("alpha", alpha_default);
  const double b = c.get_double("beta", beta_default);
  return SymbolParams(a, b);
}

std::uint64_t read_seed(const ConfigTable& c) {
  const long s = c.get_int("seed", 1);
  if (s < 0) throw ConfigError("seed must be nonnegative");
  return static_cast<std::uint64_t>(s);
}

SpectralField read_datum(const ConfigTable& c, const Grid& g) {
  const std::string kind = c.get_string("datum", "smooth");
  if (kind == "smooth") {
    const double amp = c.get_double("amplitude", 0.1);
    return random_smooth_datum(g, amp, read_seed(c));
  }
  if (kind == "band") {
    const long band = c.get_int("band", 8);
    const double amp = c.get_double("amplitude", 0.1);
    SpectralField u = random_band_limited(g, static_cast<int>(band), read_seed(c));
    u *= amp;
    return u;
  }
  if (kind == "mode") {
    const long j = c.get_int("mode", 1);
    return single_mode(g, static_cast<int>(j), c.get_double("amplitude", 0.1));
  }
  throw ConfigError("datum must be smooth, band or mode");
}

Json run_simulate(const ConfigTable& c, const Common& cm, std::vector<std::string>& artifacts) {
  const Grid g = read_grid(c, 256, 2.0 * kPi);
  const SymbolParams p = read_params(c);
  SolverConfig sc;
  sc.dt = c.get_double("dt", 1e-4);
  sc.t_end = c.get_double("t_end", 1.0);
  sc.scheme = parse_scheme(c.get_string("scheme", "ifrk4"));
  sc.dealias = c.get_bool("dealias", true);
  sc.nonlinear = c.get_bool("nonlinear", true);
  sc.record_every = static_cast<int>(c.get_int("record_every", 10));
  const double s = c.get_double("s", 1.0);
  const bool snapshot = c.get_bool("snapshot", true);
  const SpectralField u0 = read_datum(c, g);
  c.reject_unused();

  const Trajectory traj = solve(u0, sc, p);
  const EnergyBalance eb = energy_balance(traj);
  double growth_excess = 0.0;
  const double n0 = sobolev_norm(u0, 0.0);
  for (size_t k = 0; k < traj.states.size(); ++k)
    growth_excess = std::max(growth_excess, sobolev_norm(traj.states[k], 0.0) / (n0 * std::exp(traj.times[k])));

  report::write_timeseries_csv(cm.out + ".csv", traj, s);
  artifacts.push_back(cm.out + ".csv");
  if (snapshot) {
    write_snapshot(cm.out + ".fdbo", traj);
    artifacts.push_back(cm.out + ".fdbo");
  }
  return Json{{"frames", traj.times.size()},
              {"t_final", traj.times.back()},
              {"l2_initial", n0},
              {"l2_final", sobolev_norm(traj.states.back(), 0.0)},
              {"hs_final", sobolev_norm(traj.states.back(), s)},
              {"max_energy_residual", eb.max_residual},
              {"max_l2_over_exp_growth", growth_excess},
              {"stability_dt", max_stable_dt(u0, sc.dealias)}};
}

Json run_semigroup_check(const ConfigTable& c, const Common&, std::vector<std::string>&) {
  const Grid g = read_grid(c, 512, 2.0 * kPi);
  const SymbolParams p = read_params(c);
  const double s = c.get_double("s", 0.0);
  const auto deltas = c.get_doubles("deltas", {0.0, 0.5 * p.beta, p.beta});
  const long count = c.get_int("samples", 20);
  const long band = c.get_int("band", 16);
  const auto seed = read_seed(c);
  const auto times = log_time_grid(c.get_double("t_lo", 1e-3), c.get_double("t_hi", 1.0), static_cast<int>(c.get_int("per_decade", 8)));
  c.reject_unused();
  if (count < 1) throw ConfigError("samples must be >= 1");

  double worst_envelope = -INFINITY;
  for (double t : times) {
    const double psi = psi_envelope(t, p);
    for (int i = 0; i < g.n(); ++i) {
      const double k = std::abs(g.k(i));
      worst_envelope = std::max(worst_envelope, std::abs(semigroup_multiplier(g.k(i), t, p)) - psi * std::exp(-0.5 * std::pow(k, p.beta) * t));
    }
  }
  Json rows = Json::array();
  for (double delta : deltas) {
    std::vector<double> sups;
    for (long d = 0; d < count; ++d) {
      const SpectralField u = random_band_limited(g, static_cast<int>(band), seed + d);
      sups.push_back(smoothing_check(u, s, delta, p, times).sup_ratio);
    }
    rows.push_back({{"delta", delta}, {"sup_ratio", sups}});
  }
  return Json{{"envelope_max_excess", worst_envelope}, {"times", times}, {"smoothing", rows}};
}

Json run_kernel_rates(const ConfigTable& c, const Common&, std::vector<std::string>&) {
  const Grid g = read_grid(c, 8192, 40.0 * kPi);
  const SymbolParams p = read_params(c);
  const auto ss = c.get_doubles("s_list", {0.0, 1.0});
  const auto times = log_time_grid(c.get_double("t_lo", 1e-3), c.get_double("t_hi", 1.0), static_cast<int>(c.get_int("per_decade", 4)));
  c.reject_unused();
  Json rows = Json::array();
  for (double s : ss) {
    const double r = std::max((3.0 + 2.0 * s) / p.beta, 0.0) + 0.1;
    std::vector<double> k, kr, w, wr;
    for (double t : times) {
      const double psi = psi_envelope(t, p);
      k.push_back(kernel_l2_norm(s, t, p, g));
      kr.push_back(k.back() / (psi * std::pow(t, -s / p.beta - 0.5 / p.beta)));
      w.push_back(weighted_kernel_l2_norm(s, t, p, g));
      wr.push_back(w.back() / (psi * std::pow(t, -0.5 * r)));
    }
    rows.push_back({{"s", s}, {"r", r}, {"kernel", k}, {"kernel_ratio", kr}, {"weighted", w}, {"weighted_ratio", wr}});
  }
  return Json{{"times", times}, {"rates", rows}};
}

Json run_picard(const ConfigTable& c, const Common&, std::vector<std::string>&) {
  const Grid g = read_grid(c, 256, 2.0 * kPi);
  const SymbolParams p = read_params(c);
  const auto Ts = c.get_doubles("T_list", {0.4, 0.2, 0.1, 0.05});
  const long iters = c.get_int("iters", 40);
  PicardOptions opt;
  opt.panels = static_cast<int>(c.get_int("panels", opt.panels));
  opt.order = static_cast<int>(c.get_int("order", opt.order));
  opt.norm_s = c.get_double("norm_s", opt.norm_s);
  const double dt = c.get_double("dt", 1e-4);
  const SpectralField u0 = read_datum(c, g);
  c.reject_unused();

  Json rows = Json::array();
  std::vector<double> ts, factors;
  for (double T : Ts) {
    const PicardResult r = picard_iterate(u0, T, static_cast<int>(iters), p, opt);
    SolverConfig sc;
    sc.dt = std::min(dt, T);
    sc.t_end = T;
    sc.record_every = 1 << 30;
    const SpectralField ref = solve(u0, sc, p).states.back();
    const double mismatch = sobolev_norm(r.final_state() - ref, opt.norm_s) / sobolev_norm(ref, opt.norm_s);
    Json j = report::picard_summary(r);
    j["stepper_relative_mismatch"] = mismatch;
    rows.push_back(j);
    ts.push_back(T);
    factors.push_back(r.contraction_factor);
  }
  return Json{{"runs", rows}, {"fitted_nu", illposed::loglog_slope(ts, factors)}};
}

Json run_inflation(const ConfigTable& c, const Common&, std::vector<std::string>&) {
  illposed::InflationConfig ic;
  ic.kind = illposed::parse_kind(c.get_string("kind", "line-pair"));
  ic.order = static_cast<int>(c.get_int("order", 2));
  ic.alpha = c.get_double("alpha", ic.alpha);
  ic.beta = c.get_double("beta", ic.beta);
  ic.s = c.get_double("s", ic.s);
  ic.epsilon = c.get_double("epsilon", ic.epsilon);
  ic.N_list = c.get_doubles("N_list", ic.N_list);
  ic.omega = c.get_double("omega", ic.omega);
  ic.eps1 = c.get_double("eps1", ic.eps1);
  ic.quad.panels = static_cast<int>(c.get_int("quad_panels", ic.quad.panels));
  ic.quad.order = static_cast<int>(c.get_int("quad_order", ic.quad.order));
  c.reject_unused();
  return report::to_json(illposed::inflation_sweep(ic));
}

Json run_blocks(const ConfigTable& c, const Common&, std::vector<std::string>&) {
  const dyadic::Regime r = dyadic::parse_regime(c.get_string("regime", "high-mod"));
  const long scales = c.get_int("scales", 5);
  const double gamma = c.get_double("gamma", 1.0);
  const long max_blocks = c.get_int("max_blocks", 120);
  dyadic::EstimateOptions opt;
  opt.resolution = static_cast<int>(c.get_int("resolution", opt.resolution));
  opt.xi_refinement = static_cast<int>(c.get_int("xi_refinement", opt.xi_refinement));
  opt.max_sweeps = static_cast<int>(c.get_int("max_sweeps", opt.max_sweeps));
  opt.tol = c.get_double("tol", opt.tol);
  opt.seed = static_cast<unsigned>(c.get_int("seed", 0));
  c.reject_unused();
  const auto est = dyadic::sweep_blocks(r, static_cast<int>(scales), gamma, opt, static_cast<int>(max_blocks));
  return Json{{"regime", dyadic::regime_name(r)}, {"count", est.size()}, {"sup_ratio", dyadic::sup_ratio(est)}, {"blocks", report::to_json(est)}};
}

Json run_alpha_limit(const ConfigTable& c, const Common&, std::vector<std::string>&) {
  const Grid g = read_grid(c, 64, 2.0 * kPi);
  alpha::FamilyConfig fc;
  fc.beta = c.get_double("beta", 2.0);
  fc.alphas = c.get_doubles("alphas", {1.0, 1.5, 1.75, 1.9, 1.99, fc.beta});
  fc.s0 = c.get_double("s0", fc.s0);
  fc.T = c.get_double("T", fc.T);
  fc.envelope_tol = c.get_double("envelope_tol", fc.envelope_tol);
  fc.solver.dt = c.get_double("dt", 1e-3);
  fc.solver.record_every = static_cast<int>(c.get_int("record_every", 10));
  const double s = c.get_double("s", 1.5);
  const SpectralField u0 = read_datum(c, g);
  c.reject_unused();
  const auto run = alpha::run_family(u0, fc);
  return report::to_json(alpha::convergence_study(run, s));
}

using Runner = Json (*)(const ConfigTable&, const Common&, std::vector<std::string>&);

struct Entry {
  const char* name;
  Runner fn;
};

constexpr Entry kExperiments[] = {
    {"simulate", run_simulate},   {"semigroup-check", run_semigroup_check}, {"kernel-rates", run_kernel_rates},
    {"picard", run_picard},       {"inflation", run_inflation},             {"blocks", run_blocks},
    {"alpha-limit", run_alpha_limit},
};

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& e : kExperiments) v.emplace_back(e.name);
    return v;
  }();
  return names;
}

report::Json run_experiment(const std::string& name, const ConfigTable& cfg, bool reproducible) {
  Runner fn = nullptr;
  for (const auto& e : kExperiments)
    if (name == e.name) fn = e.fn;
  if (!fn) throw ConfigError("unknown experiment '" + name + "'");
  report::RunClock clock(reproducible);
  Common cm;
  cm.out = cfg.get_string("out", "fdbo_" + name);
  std::vector<std::string> artifacts;
  Json results = fn(cfg, cm, artifacts);
  artifacts.insert(artifacts.begin(), cm.out + ".json");
  results["artifacts"] = artifacts;
  Json config = cfg.resolved();
  config["experiment"] = name;
  const Json env = report::envelope(name, config, results, clock);
  report::write_json(cm.out + ".json", env);
  return env;
}

int run_and_report(const std::string& name, const ConfigTable& cfg, bool reproducible, std::ostream& out,
                   std::ostream& err) {
  try {
    const Json env = run_experiment(name, cfg, reproducible);
    out << env["results"]["artifacts"][0].get<std::string>() << '\n';
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InstabilityError& e) {
    err << "numerical instability at t = " << report::format_double(e.time()) << ": " << e.what() << '\n';
    return kExitInstability;
  } catch (const NonContractionError& e) {
    err << "numerical instability: " << e.what() << '\n';
    return kExitInstability;
  } catch (const dyadic::NonConvergenceError& e) {
    err << "numerical instability: " << e.what() << '\n';
    return kExitInstability;
  } catch (const std::domain_error& e) {
    err << "numerical instability: " << e.what() << '\n';
    return kExitInstability;
  }
}

}  // namespace fdbo::cli
