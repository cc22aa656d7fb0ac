#include "fdbo/spectral_core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fdbo/fft.hpp"

namespace fdbo {

Grid::Grid(int n_modes, double period) : n_(n_modes), period_(period) {
  if (n_modes < 8 || n_modes % 2 != 0)
    throw std::invalid_argument("grid: n_modes must be even and >= 8, got " + std::to_string(n_modes));
  if (!(period > 0.0) || !std::isfinite(period)) throw std::invalid_argument("grid: period must be positive");
}

std::vector<double> Grid::wavenumbers() const {
  std::vector<double> k(n_);
  for (int i = 0; i < n_; ++i) k[i] = this->k(i);
  return k;
}

SymbolParams::SymbolParams(double a, double b) : alpha(a), beta(b) {
  if (!(a > 0.0) || !(b > 0.0) || a > b || !std::isfinite(a) || !std::isfinite(b))
    throw std::invalid_argument("symbol params: need 0 < alpha <= beta");
}

SpectralField::SpectralField(const Grid& g) : grid(g), coeffs(g.n(), cplx(0.0, 0.0)) {}

SpectralField::SpectralField(const Grid& g, std::vector<cplx> c) : grid(g), coeffs(std::move(c)) {
  if (static_cast<int>(coeffs.size()) != g.n()) throw std::invalid_argument("spectral field: size mismatch");
}

bool SpectralField::is_hermitian(double rel_tol) const {
  double scale = 0.0;
  for (const auto& c : coeffs) scale = std::max(scale, std::abs(c));
  const double tol = rel_tol * std::max(scale, 1e-300);
  const int n = grid.n();
  if (std::abs(coeffs[0].imag()) > tol || std::abs(coeffs[n / 2].imag()) > tol) return false;
  for (int j = 1; j < n / 2; ++j)
    if (std::abs(coeffs[j] - std::conj(coeffs[n - j])) > tol) return false;
  return true;
}

void SpectralField::symmetrize() {
  const int n = grid.n();
  coeffs[0] = coeffs[0].real();
  coeffs[n / 2] = coeffs[n / 2].real();
  for (int j = 1; j < n / 2; ++j) {
    const cplx avg = 0.5 * (coeffs[j] + std::conj(coeffs[n - j]));
    coeffs[j] = avg;
    coeffs[n - j] = std::conj(avg);
  }
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
  for (size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += o.coeffs[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
  for (size_t i = 0; i < coeffs.size(); ++i) coeffs[i] -= o.coeffs[i];
  return *this;
}

SpectralField& SpectralField::operator*=(double a) {
  for (auto& c : coeffs) c *= a;
  return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double a, SpectralField b) { return b *= a; }

cplx hilbert_symbol(double xi) {
  if (xi > 0.0) return {0.0, -1.0};
  if (xi < 0.0) return {0.0, 1.0};
  return {0.0, 0.0};
}

double growth_dissipation_symbol(double xi, const SymbolParams& p) {
  const double a = std::abs(xi);
  if (a == 0.0) return 0.0;
  if (p.pure_bo()) return 0.0;
  return std::pow(a, p.alpha) - std::pow(a, p.beta);
}

double dispersion_phase(double xi) { return -xi * std::abs(xi); }

cplx linear_symbol(double xi, const SymbolParams& p) {
  return {growth_dissipation_symbol(xi, p), dispersion_phase(xi)};
}

double max_growth(const SymbolParams& p) {
  if (p.pure_bo()) return 0.0;
  const double r = p.alpha / p.beta;
  return std::pow(r, p.alpha / (p.beta - p.alpha)) - std::pow(r, p.beta / (p.beta - p.alpha));
}

double sobolev_norm(const SpectralField& u, double s) {
  double acc = 0.0;
  for (int i = 0; i < u.grid.n(); ++i) {
    const double w = s == 0.0 ? 1.0 : std::pow(1.0 + u.grid.k(i) * u.grid.k(i), s);
    acc += w * std::norm(u.coeffs[i]);
  }
  return std::sqrt(u.grid.period() * acc);
}

double homogeneous_norm(const SpectralField& u, double a) {
  double acc = 0.0;
  for (int i = 1; i < u.grid.n(); ++i) acc += std::pow(std::abs(u.grid.k(i)), 2.0 * a) * std::norm(u.coeffs[i]);
  return std::sqrt(u.grid.period() * acc);
}

SpectralField dx(const SpectralField& u) {
  SpectralField out(u.grid);
  for (int i = 0; i < u.grid.n(); ++i) {
    if (u.grid.is_nyquist(i)) continue;
    out.coeffs[i] = cplx(0.0, u.grid.k(i)) * u.coeffs[i];
  }
  return out;
}

void dealias(SpectralField& u) {
  const int n = u.grid.n();
  for (int i = 0; i < n; ++i)
    if (3 * std::abs(u.grid.signed_mode(i)) > n) u.coeffs[i] = 0.0;
}

std::vector<double> to_physical(const SpectralField& u) {
  std::vector<cplx> phys;
  fft::backward(u.coeffs, phys);
  std::vector<double> out(phys.size());
  for (size_t i = 0; i < phys.size(); ++i) out[i] = phys[i].real();
  return out;
}

SpectralField from_physical(const Grid& g, const std::vector<double>& values) {
  if (static_cast<int>(values.size()) != g.n()) throw std::invalid_argument("from_physical: size mismatch");
  std::vector<cplx> in(values.begin(), values.end());
  std::vector<cplx> out;
  fft::forward(in, out);
  const double inv = 1.0 / g.n();
  for (auto& c : out) c *= inv;
  SpectralField f(g, std::move(out));
  f.symmetrize();
  return f;
}

double collocation_l2(const Grid& g, const std::vector<double>& values) {
  double acc = 0.0;
  for (double v : values) acc += v * v;
  return std::sqrt(g.period() / g.n() * acc);
}

SpectralField bilinear_flux(const SpectralField& u, const SpectralField& v, bool dealias_on) {
  SpectralField a = u;
  SpectralField b = v;
  if (dealias_on) {
    dealias(a);
    dealias(b);
  }
  auto pa = to_physical(a);
  const auto pb = to_physical(b);
  for (size_t i = 0; i < pa.size(); ++i) pa[i] *= pb[i];
  SpectralField prod = from_physical(u.grid, pa);
  if (dealias_on) dealias(prod);
  SpectralField out = dx(prod);
  out *= 0.5;
  out.coeffs[0] = 0.0;
  return out;
}

SpectralField nonlinearity(const SpectralField& u, bool dealias_on) { return bilinear_flux(u, u, dealias_on); }

}  // namespace fdbo
