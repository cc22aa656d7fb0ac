#include "fdbo/alpha_continuity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fdbo/parallel.hpp"

namespace fdbo::alpha {
namespace {

double sup_envelope_ratio(const Trajectory& tr, double s0, double a, double c) {
  double worst = 0.0;
  for (size_t k = 0; k < tr.times.size(); ++k)
    worst = std::max(worst, sobolev_norm(tr.states[k], s0) / uniform_bound_g(tr.times[k], a, c));
  return worst;
}

bool envelope_holds(const Trajectory& tr, double s0, double a, double c) {
  if (!(tr.times.back() < g_blowup_time(a, c))) return false;
  return sup_envelope_ratio(tr, s0, a, c) <= 1.0;
}

}  // namespace

double g_blowup_time(double u0_norm, double c) {
  if (!(u0_norm > 0.0) || !(c > 0.0)) throw std::invalid_argument("g: need positive norm and c");
  return 2.0 / c * std::log((1.0 + u0_norm) / u0_norm);
}

double uniform_bound_g(double t, double u0_norm, double c) {
  if (t < 0.0) throw std::invalid_argument("g: t must be nonnegative");
  if (!(t < g_blowup_time(u0_norm, c))) throw std::domain_error("g: t at or beyond the blow-up time");
  const double e = std::exp(0.5 * c * t);
  return u0_norm * e / (1.0 - u0_norm * (e - 1.0));
}

double growth_term_A(double alpha, double beta) {
  if (alpha >= beta) return 0.0;
  const double r = alpha / beta;
  return std::pow(r, alpha / (beta - alpha)) * (beta - alpha) / beta;
}

FamilyRun run_family(const SpectralField& u0, const FamilyConfig& cfg) {
  if (cfg.alphas.empty() || cfg.alphas.back() != cfg.beta)
    throw std::invalid_argument("run_family: the last alpha must equal beta");
  for (size_t i = 1; i < cfg.alphas.size(); ++i)
    if (!(cfg.alphas[i] > cfg.alphas[i - 1])) throw std::invalid_argument("run_family: alphas must increase");
  FamilyRun run;
  run.alphas = cfg.alphas;
  run.beta = cfg.beta;
  run.s0 = cfg.s0;
  run.u0_norm = sobolev_norm(u0, cfg.s0);
  const double a = run.u0_norm;
  if (!(a > 0.0)) throw std::invalid_argument("run_family: datum must be nonzero");

  SolverConfig sc = cfg.solver;
  sc.t_end = cfg.T;
  const Trajectory bo = solve(u0, sc, SymbolParams(cfg.beta, cfg.beta));
  double lo = 1e-8;
  if (envelope_holds(bo, cfg.s0, a, lo)) {
    run.c = lo;
  } else {
    double hi = 2.0 / cfg.T * std::log((1.0 + a) / a) * (1.0 - 1e-9);
    if (!envelope_holds(bo, cfg.s0, a, hi))
      throw std::runtime_error("run_family: no c keeps the BO member under g on the requested horizon");
    for (int it = 0; it < 200 && hi - lo > 1e-12 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      (envelope_holds(bo, cfg.s0, a, mid) ? hi : lo) = mid;
    }
    run.c = hi;
  }
  run.T = std::min(cfg.T, 0.5 * g_blowup_time(a, run.c));
  sc.t_end = run.T;
  if (sc.dt > sc.t_end) sc.dt = sc.t_end;

  run.trajectories.resize(cfg.alphas.size(), Trajectory{u0.grid, SymbolParams(cfg.beta, cfg.beta), {}, {}});
  parallel_for(cfg.alphas.size(), [&](size_t i) {
    run.trajectories[i] = solve(u0, sc, SymbolParams(cfg.alphas[i], cfg.beta));
  });
  for (size_t i = 0; i < cfg.alphas.size(); ++i) {
    const double r = sup_envelope_ratio(run.trajectories[i], cfg.s0, a, run.c);
    run.envelope_max_ratio = std::max(run.envelope_max_ratio, r);
    if (r > 1.0 + cfg.envelope_tol) run.violators.push_back(cfg.alphas[i]);
  }
  run.envelope_ok = run.violators.empty();
  return run;
}

ConvergenceReport convergence_study(const FamilyRun& run, double s) {
  if (!(s < run.s0 - std::max(run.beta / 2.0, 1.0)))
    throw std::invalid_argument("convergence_study: need s < s0 - max(beta/2, 1)");
  ConvergenceReport rep;
  rep.beta = run.beta;
  rep.s0 = run.s0;
  rep.s = s;
  rep.T = run.T;
  rep.c = run.c;
  rep.alphas = run.alphas;
  rep.envelope_ok = run.envelope_ok;
  const Trajectory& ub = run.trajectories.back();
  const Grid& g = ub.grid;
  const size_t frames = ub.times.size();

  // ‖(|ξ|^{α/2} - |ξ|^{β/2})⟨ξ⟩^s û^β(τ)‖ integrated by the trapezoid rule
  auto b_term = [&](double al) {
    std::vector<double> f(frames);
    for (size_t k = 0; k < frames; ++k) {
      double acc = 0.0;
      for (int i = 0; i < g.n(); ++i) {
        const double ak = std::abs(g.k(i));
        if (ak == 0.0) continue;
        const double w = (std::pow(ak, al / 2.0) - std::pow(ak, run.beta / 2.0)) * std::pow(japanese(ak), s);
        acc += w * w * std::norm(ub.states[k][i]);
      }
      f[k] = std::sqrt(g.period() * acc);
    }
    double integral = 0.0;
    for (size_t k = 1; k < frames; ++k) integral += 0.5 * (f[k] + f[k - 1]) * (ub.times[k] - ub.times[k - 1]);
    return integral;
  };

  rep.max_quadratic_form = -1e300;
  for (size_t i = 0; i < run.alphas.size(); ++i) {
    const double al = run.alphas[i];
    const Trajectory& ua = run.trajectories[i];
    if (ua.times.size() != frames) throw std::runtime_error("convergence_study: trajectories have different time stamps");
    double D = 0.0;
    for (size_t k = 0; k < frames; ++k) {
      const SpectralField w = ua.states[k] - ub.states[k];
      D = std::max(D, sobolev_norm(w, s));
      double q = 0.0;
      for (int j = 0; j < g.n(); ++j) {
        const double kk = g.k(j);
        q += growth_dissipation_symbol(kk, SymbolParams(al, run.beta)) * std::pow(japanese(kk), 2.0 * s) * std::norm(w[j]);
      }
      rep.max_quadratic_form = std::max(rep.max_quadratic_form, q);
    }
    const double A = growth_term_A(al, run.beta);
    const double B = al < run.beta ? b_term(al) : 0.0;
    rep.D.push_back(D);
    rep.A.push_back(A);
    rep.B.push_back(B);
    const double r = A + B > 0.0 ? D * D / (A + B) : 0.0;
    rep.ratio.push_back(r);
    rep.fitted_C = std::max(rep.fitted_C, r);
  }
  rep.dissipative = rep.max_quadratic_form <= 0.0;
  const size_t m = run.alphas.size() - 1;  // members strictly below beta
  rep.tail_monotone = m >= 3 && rep.D[m - 3] >= rep.D[m - 2] && rep.D[m - 2] >= rep.D[m - 1];
  return rep;
}

}  // namespace fdbo::alpha
