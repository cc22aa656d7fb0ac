#include "fdbo/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fdbo {

double psi_envelope(double t, const SymbolParams& p) {
  if (p.pure_bo()) return 1.0;
  const double a = p.alpha, b = p.beta;
  const double rate = std::pow(2.0 * a / b, a / (b - a)) * (b - a) / b;
  return std::exp(rate * t);
}

cplx semigroup_multiplier(double xi, double t, const SymbolParams& p) {
  const double phase = dispersion_phase(xi) * t;
  const double mag = std::exp(growth_dissipation_symbol(xi, p) * t);
  return {mag * std::cos(phase), mag * std::sin(phase)};
}

SpectralField apply_semigroup(const SpectralField& u, double t, const SymbolParams& p) {
  if (!(t >= 0.0)) throw std::invalid_argument("apply_semigroup: t must be nonnegative");
  SpectralField out(u.grid);
  for (int i = 0; i < u.grid.n(); ++i) {
    const double k = u.grid.k(i);
    if (u.grid.is_nyquist(i)) {
      // keep the Nyquist slot real; the phase is not representable there
      out.coeffs[i] = std::exp(growth_dissipation_symbol(k, p) * t) * u.coeffs[i];
    } else {
      out.coeffs[i] = semigroup_multiplier(k, t, p) * u.coeffs[i];
    }
  }
  return out;
}

double kernel_l2_norm(double s, double t, const SymbolParams& p, const Grid& grid) {
  double acc = 0.0;
  for (int i = 0; i < grid.n(); ++i) {
    const double k = std::abs(grid.k(i));
    if (k == 0.0 && s > 0.0) continue;
    const double w = s == 0.0 ? 1.0 : std::pow(k, s);
    acc += w * w * std::exp(2.0 * growth_dissipation_symbol(k, p) * t);
  }
  return std::sqrt(grid.dk() * acc);
}

double weighted_kernel_l2_norm(double s, double t, const SymbolParams& p, const Grid& grid) {
  if (!(t > 0.0 && t <= 1.0)) throw std::invalid_argument("weighted_kernel_l2_norm: need 0 < t <= 1");
  double acc = 0.0;
  for (int i = 0; i < grid.n(); ++i) {
    const double k = grid.k(i);
    const double w = std::abs(k) * std::pow(japanese(k), s);
    acc += w * w * std::exp(2.0 * growth_dissipation_symbol(k, p) * t);
  }
  return std::sqrt(grid.dk() * acc);
}

SmoothingReport smoothing_check(const SpectralField& u, double s, double delta, const SymbolParams& p,
                                const std::vector<double>& t_grid) {
  if (delta < 0.0) throw std::invalid_argument("smoothing_check: delta must be nonnegative");
  SmoothingReport rep;
  const double base = sobolev_norm(u, s);
  for (double t : t_grid) {
    const double lhs = sobolev_norm(apply_semigroup(u, t, p), s + delta);
    const double bound = psi_envelope(t, p) * (1.0 + std::pow(t, -delta / p.beta)) * base;
    const double r = bound > 0.0 ? lhs / bound : 0.0;
    rep.t_samples.push_back(t);
    rep.ratio_samples.push_back(r);
    rep.sup_ratio = std::max(rep.sup_ratio, r);
  }
  return rep;
}

std::vector<double> log_time_grid(double t_lo, double t_hi, int per_decade) {
  const int count = static_cast<int>(std::lround(std::log10(t_hi / t_lo) * per_decade));
  std::vector<double> out;
  for (int i = 0; i <= count; ++i) out.push_back(t_lo * std::pow(10.0, static_cast<double>(i) / per_decade));
  out.back() = t_hi;
  return out;
}

}  // namespace fdbo
