#pragma once

#include <vector>

#include "fdbo/spectral_core.hpp"

namespace fdbo {

// exp((2α/β)^{α/(β-α)} (β-α)/β · t); identically 1 in the pure BO case.
double psi_envelope(double t, const SymbolParams& p);

cplx semigroup_multiplier(double xi, double t, const SymbolParams& p);
SpectralField apply_semigroup(const SpectralField& u, double t, const SymbolParams& p);

// Riemann sums with weight dk over the grid frequencies, i.e. the continuous
// L² norms in ξ sampled on the grid.
double kernel_l2_norm(double s, double t, const SymbolParams& p, const Grid& grid);
double weighted_kernel_l2_norm(double s, double t, const SymbolParams& p, const Grid& grid);

struct SmoothingReport {
  std::vector<double> t_samples;
  std::vector<double> ratio_samples;
  double sup_ratio = 0.0;
};

SmoothingReport smoothing_check(const SpectralField& u, double s, double delta, const SymbolParams& p,
                                const std::vector<double>& t_grid);

// Logarithmic times from t_lo to t_hi with a fixed count per decade, endpoints included.
std::vector<double> log_time_grid(double t_lo, double t_hi, int per_decade);

}  // namespace fdbo
