#include "fdbo/data.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace fdbo {
namespace {

template <typename Weight>
SpectralField hermitian_random(const Grid& g, std::uint64_t seed, int jmax, Weight weight) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  SpectralField u(g);
  for (int j = 1; j <= jmax; ++j) {
    const double re = normal(rng);
    const double im = normal(rng);
    const cplx c = weight(g.dk() * j) * cplx(re, im);
    u[g.slot(j)] = c;
    u[g.slot(-j)] = std::conj(c);
  }
  return u;
}

}  // namespace

SpectralField random_smooth_datum(const Grid& g, double l2_norm, std::uint64_t seed) {
  SpectralField u = hermitian_random(g, seed, g.n() / 2 - 1, [](double k) { return std::exp(-0.5 * k * k); });
  const double nrm = sobolev_norm(u, 0.0);
  if (nrm == 0.0) throw std::runtime_error("random_smooth_datum: degenerate draw");
  u *= l2_norm / nrm;
  return u;
}

SpectralField random_band_limited(const Grid& g, int band, std::uint64_t seed) {
  if (band < 1 || 2 * band >= g.n()) throw std::invalid_argument("random_band_limited: band outside the grid");
  SpectralField u = hermitian_random(g, seed, band, [](double) { return 1.0; });
  u *= 1.0 / sobolev_norm(u, 0.0);
  return u;
}

SpectralField white_noise(const Grid& g, std::uint64_t seed) {
  return hermitian_random(g, seed, g.n() / 2 - 1, [](double) { return 1.0; });
}

SpectralField single_mode(const Grid& g, int j0, double amplitude) {
  if (j0 == 0 || 2 * std::abs(j0) >= g.n()) throw std::invalid_argument("single_mode: mode outside the grid");
  SpectralField u(g);
  u[g.slot(j0)] = amplitude;
  u[g.slot(-j0)] = amplitude;
  return u;
}

}  // namespace fdbo
