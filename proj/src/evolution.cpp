#include "fdbo/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fdbo/duhamel.hpp"
#include "fdbo/fft.hpp"
#include "fdbo/semigroup.hpp"

namespace fdbo {
namespace {

cplx cexp(cplx z) { return std::exp(z.real()) * cplx(std::cos(z.imag()), std::sin(z.imag())); }

bool all_finite(const SpectralField& u) {
  for (const auto& c : u.coeffs)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  return true;
}

// Kassam-Trefethen contour means for the ETDRK4 coefficient functions.
void etd_coefficients(cplx z, double h, cplx& q, cplx& f1, cplx& f2, cplx& f3) {
  constexpr int M = 32;
  q = f1 = f2 = f3 = 0.0;
  for (int m = 0; m < M; ++m) {
    const double th = 2.0 * kPi * (m + 0.5) / M;
    const cplx r = z + cplx(std::cos(th), std::sin(th));
    const cplx er = std::exp(r);
    const cplx r3 = r * r * r;
    q += (std::exp(0.5 * r) - 1.0) / r;
    f1 += (-4.0 - r + er * (4.0 - 3.0 * r + r * r)) / r3;
    f2 += (2.0 + r + er * (r - 2.0)) / r3;
    f3 += (-4.0 - 3.0 * r - r * r + er * (4.0 - r)) / r3;
  }
  q *= h / M;
  f1 *= h / M;
  f2 *= h / M;
  f3 *= h / M;
}

}  // namespace

Scheme parse_scheme(const std::string& name) {
  if (name == "ifrk4" || name == "IFRK4") return Scheme::IFRK4;
  if (name == "etdrk4" || name == "ETDRK4") return Scheme::ETDRK4;
  throw std::invalid_argument("unknown scheme '" + name + "' (expected ifrk4 or etdrk4)");
}

std::string scheme_name(Scheme s) { return s == Scheme::IFRK4 ? "ifrk4" : "etdrk4"; }

void SolverConfig::validate() const {
  if (!(dt > 0.0) || !(t_end > 0.0)) throw std::invalid_argument("solver: dt and t_end must be positive");
  if (dt > t_end) throw std::invalid_argument("solver: dt must not exceed t_end");
  if (record_every < 1) throw std::invalid_argument("solver: record_every must be >= 1");
  if (!(picard_tol > 0.0) || picard_max_iters < 1) throw std::invalid_argument("solver: bad picard settings");
}

double max_stable_dt(const SpectralField& u, bool dealias_on) {
  double umax = 0.0;
  for (double v : to_physical(u)) umax = std::max(umax, std::abs(v));
  if (umax == 0.0) return std::numeric_limits<double>::infinity();
  const int n = u.grid.n();
  const double kmax = u.grid.dk() * (dealias_on ? n / 3 : n / 2);
  return 2.8 / (kmax * umax);
}

Stepper::Stepper(const Grid& grid, const SymbolParams& p, double dt, const SolverConfig& cfg)
    : grid_(grid), dt_(dt), scheme_(cfg.scheme), dealias_(cfg.dealias), nonlinear_(cfg.nonlinear) {
  const int n = grid.n();
  e_full_.resize(n);
  e_half_.resize(n);
  if (scheme_ == Scheme::ETDRK4) {
    q_.resize(n);
    f1_.resize(n);
    f2_.resize(n);
    f3_.resize(n);
  }
  for (int i = 0; i < n; ++i) {
    const double k = grid.k(i);
    const cplx L = grid.is_nyquist(i) ? cplx(growth_dissipation_symbol(k, p), 0.0) : linear_symbol(k, p);
    e_full_[i] = cexp(L * dt);
    e_half_[i] = cexp(L * (0.5 * dt));
    if (scheme_ == Scheme::ETDRK4) etd_coefficients(L * dt, dt, q_[i], f1_[i], f2_[i], f3_[i]);
  }
}

SpectralField Stepper::rhs(const SpectralField& u) const {
  SpectralField f = nonlinearity(u, dealias_);
  f *= -1.0;
  return f;
}

SpectralField Stepper::advance(const SpectralField& u) const {
  const int n = grid_.n();
  SpectralField out(grid_);
  if (!nonlinear_) {
    for (int i = 0; i < n; ++i) out[i] = e_full_[i] * u[i];
    return out;
  }
  const double h = dt_;
  if (scheme_ == Scheme::IFRK4) {
    const SpectralField a = rhs(u);
    SpectralField tmp(grid_);
    for (int i = 0; i < n; ++i) tmp[i] = e_half_[i] * (u[i] + 0.5 * h * a[i]);
    const SpectralField b = rhs(tmp);
    for (int i = 0; i < n; ++i) tmp[i] = e_half_[i] * u[i] + 0.5 * h * b[i];
    const SpectralField c = rhs(tmp);
    for (int i = 0; i < n; ++i) tmp[i] = e_full_[i] * u[i] + h * e_half_[i] * c[i];
    const SpectralField d = rhs(tmp);
    for (int i = 0; i < n; ++i)
      out[i] = e_full_[i] * u[i] + h / 6.0 * (e_full_[i] * a[i] + 2.0 * e_half_[i] * (b[i] + c[i]) + d[i]);
    return out;
  }
  const SpectralField nu = rhs(u);
  SpectralField a(grid_), b(grid_), c(grid_);
  for (int i = 0; i < n; ++i) a[i] = e_half_[i] * u[i] + q_[i] * nu[i];
  const SpectralField na = rhs(a);
  for (int i = 0; i < n; ++i) b[i] = e_half_[i] * u[i] + q_[i] * na[i];
  const SpectralField nb = rhs(b);
  for (int i = 0; i < n; ++i) c[i] = e_half_[i] * a[i] + q_[i] * (2.0 * nb[i] - nu[i]);
  const SpectralField nc = rhs(c);
  for (int i = 0; i < n; ++i)
    out[i] = e_full_[i] * u[i] + f1_[i] * nu[i] + 2.0 * f2_[i] * (na[i] + nb[i]) + f3_[i] * nc[i];
  return out;
}

SpectralField step(const SpectralField& u, double dt, const SolverConfig& cfg, const SymbolParams& p) {
  if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be positive");
  SpectralField out = Stepper(u.grid, p, dt, cfg).advance(u);
  if (!all_finite(out)) throw InstabilityError(dt, "step: non-finite coefficient after one step");
  return out;
}

Trajectory solve(const SpectralField& u0, const SolverConfig& cfg, const SymbolParams& p) {
  cfg.validate();
  if (!u0.is_hermitian(1e-10)) throw std::invalid_argument("solve: initial datum is not Hermitian");
  const long nsteps = static_cast<long>(std::ceil(cfg.t_end / cfg.dt - 1e-9));
  const double dt = cfg.t_end / nsteps;
  if (cfg.nonlinear && dt > max_stable_dt(u0, cfg.dealias))
    throw std::invalid_argument("solve: dt exceeds the stability bound " + std::to_string(max_stable_dt(u0, cfg.dealias)));
  Stepper stepper(u0.grid, p, dt, cfg);
  Trajectory traj{u0.grid, p, {0.0}, {u0}};
  SpectralField u = u0;
  for (long k = 1; k <= nsteps; ++k) {
    u = stepper.advance(u);
    const double t = k == nsteps ? cfg.t_end : k * dt;
    if (!all_finite(u)) throw InstabilityError(t, "solve: non-finite coefficient at t = " + std::to_string(t));
    if (k % cfg.record_every == 0 || k == nsteps) {
      traj.times.push_back(t);
      traj.states.push_back(u);
    }
  }
  return traj;
}

EnergyBalance energy_balance(const Trajectory& traj) {
  EnergyBalance out;
  const auto& p = traj.params;
  const size_t m = traj.states.size();
  std::vector<double> e(m);
  for (size_t k = 0; k < m; ++k) e[k] = std::pow(sobolev_norm(traj.states[k], 0.0), 2);
  for (size_t k = 1; k + 1 < m; ++k) {
    const auto& u = traj.states[k];
    const double dedt = 0.5 * (e[k + 1] - e[k - 1]) / (traj.times[k + 1] - traj.times[k - 1]);
    double r = dedt;
    if (!p.pure_bo()) r += -std::pow(homogeneous_norm(u, 0.5 * p.alpha), 2) + std::pow(homogeneous_norm(u, 0.5 * p.beta), 2);
    const double rel = e[k] > 0.0 ? std::abs(r) / e[k] : std::abs(r);
    out.times.push_back(traj.times[k]);
    out.residuals.push_back(rel);
    out.max_residual = std::max(out.max_residual, rel);
  }
  return out;
}

PicardResult picard_iterate(const SpectralField& u0, double T, int iters, const SymbolParams& p, const PicardOptions& opt) {
  if (iters < 1) throw std::invalid_argument("picard_iterate: iters must be >= 1");
  DuhamelPlan plan(u0.grid, p, T, opt.panels, opt.order);
  const auto free = plan.free_evolution(u0);
  const int nodes = plan.node_count();

  auto pack = [&](const DuhamelPlan::Result& r) {
    std::vector<SpectralField> row = r.at_nodes;
    row.push_back(r.at_end);
    return row;
  };
  auto sup_diff = [&](const std::vector<SpectralField>& a, const std::vector<SpectralField>& b) {
    double d = 0.0;
    for (size_t k = 0; k < a.size(); ++k) d = std::max(d, sobolev_norm(a[k] - b[k], opt.norm_s));
    return d;
  };

  PicardResult res;
  res.node_times = plan.node_times();
  res.T = T;
  res.norm_s = opt.norm_s;
  res.iterates.push_back(pack(free));
  double scale = 0.0;
  for (const auto& f : res.iterates[0]) scale = std::max(scale, sobolev_norm(f, opt.norm_s));
  const double floor = 1e-11 * scale;
  int rising = 0;
  for (int it = 0; it < iters; ++it) {
    const auto& cur = res.iterates.back();
    std::vector<SpectralField> forcing;
    forcing.reserve(nodes);
    for (int k = 0; k < nodes; ++k) {
      SpectralField f = nonlinearity(cur[k], opt.dealias);
      f *= -1.0;
      forcing.push_back(std::move(f));
    }
    auto duh = plan.integrate(forcing);
    std::vector<SpectralField> next = pack(free);
    for (int k = 0; k < nodes; ++k) next[k] += duh.at_nodes[k];
    next[nodes] += duh.at_end;
    for (const auto& f : next)
      if (!all_finite(f)) throw InstabilityError(T, "picard_iterate: non-finite iterate");
    const double d = sup_diff(next, cur);
    res.iterates.push_back(std::move(next));
    if (!res.diff_norms.empty()) {
      const double prev = res.diff_norms.back();
      if (prev > floor) {
        res.contraction_factor = std::max(res.contraction_factor, d / prev);
        rising = d >= prev ? rising + 1 : 0;
        if (rising >= 3) throw NonContractionError("picard_iterate: successive differences grew 3 times in a row");
      }
    }
    res.diff_norms.push_back(d);
    if (d <= opt.tol * std::max(scale, 1e-300)) {
      res.converged = true;
      break;
    }
  }
  return res;
}

double y_norm(const Trajectory& traj, double s, double T, double beta) {
  double best = 0.0;
  for (size_t k = 0; k < traj.times.size(); ++k) {
    const double t = traj.times[k];
    if (!(t > 0.0) || t > T * (1.0 + 1e-12)) continue;
    const double v = sobolev_norm(traj.states[k], s) + std::pow(t, std::abs(s) / beta) * sobolev_norm(traj.states[k], 0.0);
    best = std::max(best, v);
  }
  return best;
}

SpaceTimeField spacetime_transform(const Trajectory& traj) {
  const size_t M = traj.times.size();
  if (M < 2) throw std::invalid_argument("spacetime_transform: need at least two frames");
  const double dt = traj.times[1] - traj.times[0];
  for (size_t m = 1; m < M; ++m)
    if (std::abs(traj.times[m] - traj.times[m - 1] - dt) > 1e-9 * dt)
      throw std::invalid_argument("spacetime_transform: frames must be uniformly spaced");
  const Grid& g = traj.grid;
  const int n = g.n();
  const double span = M * dt;
  SpaceTimeField out;
  out.dxi = g.dk();
  out.dtau = 2.0 * kPi / span;
  for (int i = 0; i < n; ++i) out.xi.push_back(g.k(i));
  for (size_t l = 0; l < M; ++l) {
    const long sl = l <= M / 2 ? static_cast<long>(l) : static_cast<long>(l) - static_cast<long>(M);
    out.tau.push_back(out.dtau * sl);
  }
  out.values.resize(static_cast<size_t>(n) * M);
  const double xscale = g.period() / std::sqrt(2.0 * kPi);
  const double tscale = dt / std::sqrt(2.0 * kPi);
  std::vector<cplx> row(M), freq;
  for (int i = 0; i < n; ++i) {
    for (size_t m = 0; m < M; ++m) {
      const double w = std::pow(std::sin(kPi * (m + 1.0) / (M + 1.0)), 2);
      row[m] = w * xscale * traj.states[m][i];
    }
    fft::forward(row, freq);
    for (size_t l = 0; l < M; ++l) out.values[i * M + l] = tscale * freq[l];
  }
  return out;
}

double xbs_norm(const SpaceTimeField& f, double b, double s, const SymbolParams& p) {
  double acc = 0.0;
  const size_t nt = f.tau.size();
  for (size_t i = 0; i < f.xi.size(); ++i) {
    const double xi = f.xi[i];
    const double ws = std::pow(japanese(xi), 2.0 * s);
    const double m = std::abs(growth_dissipation_symbol(xi, p));
    for (size_t l = 0; l < nt; ++l) {
      const double mod = std::abs(f.tau[l] + xi * std::abs(xi)) + m;
      acc += std::pow(japanese(mod), 2.0 * b) * ws * std::norm(f.at(i, l));
    }
  }
  return std::sqrt(acc * f.dxi * f.dtau);
}

}  // namespace fdbo
