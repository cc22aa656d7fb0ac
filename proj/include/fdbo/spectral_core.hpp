#pragma once

#include <cmath>
#include <complex>
#include <vector>

namespace fdbo {

using cplx = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;

// Periodic grid on [0, L) with n collocation points. Coefficient slot idx holds
// the signed mode j = idx for idx <= n/2 and j = idx - n otherwise, so the
// frequency set is 2πj/L with -n/2 < j <= n/2.
class Grid {
 public:
  Grid(int n_modes, double period);

  int n() const { return n_; }
  double period() const { return period_; }
  double dk() const { return 2.0 * kPi / period_; }

  int signed_mode(int idx) const { return idx <= n_ / 2 ? idx : idx - n_; }
  int slot(int j) const { return j >= 0 ? j : j + n_; }
  bool is_nyquist(int idx) const { return idx == n_ / 2; }
  double k(int idx) const { return dk() * signed_mode(idx); }
  double k_max() const { return dk() * (n_ / 2); }
  std::vector<double> wavenumbers() const;

  bool operator==(const Grid& o) const { return n_ == o.n_ && period_ == o.period_; }

 private:
  int n_;
  double period_;
};

struct SymbolParams {
  double alpha;
  double beta;

  SymbolParams(double a, double b);
  bool pure_bo() const { return alpha == beta; }
};

// Fourier coefficients c_j of a real field, u(x) = Σ c_j e^{i k_j x}.
// Norms follow ‖u‖²_{L²} = L Σ |c_j|², which equals (L/n) Σ u(x_k)².
struct SpectralField {
  Grid grid;
  std::vector<cplx> coeffs;

  explicit SpectralField(const Grid& g);
  SpectralField(const Grid& g, std::vector<cplx> c);

  cplx& operator[](int idx) { return coeffs[idx]; }
  const cplx& operator[](int idx) const { return coeffs[idx]; }
  cplx mode(int j) const { return coeffs[grid.slot(j)]; }

  bool is_hermitian(double rel_tol = 1e-12) const;
  // Projects onto real fields: averages conjugate pairs and drops Im of the
  // zero and Nyquist slots.
  void symmetrize();

  SpectralField& operator+=(const SpectralField& o);
  SpectralField& operator-=(const SpectralField& o);
  SpectralField& operator*=(double a);
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double a, SpectralField b);

cplx hilbert_symbol(double xi);
double growth_dissipation_symbol(double xi, const SymbolParams& p);
double dispersion_phase(double xi);
// Full linear generator: e^{t·linear_symbol} is the semigroup multiplier.
cplx linear_symbol(double xi, const SymbolParams& p);

// max over x >= 0 of x^α - x^β, attained at x = (α/β)^{1/(β-α)}; 0 when α = β.
double max_growth(const SymbolParams& p);

inline double japanese(double xi) { return std::sqrt(1.0 + xi * xi); }

double sobolev_norm(const SpectralField& u, double s);
// ‖D^{a} u‖_{L²} with the homogeneous weight |ξ|^a (zero mode dropped).
double homogeneous_norm(const SpectralField& u, double a);

SpectralField dx(const SpectralField& u);
// Zeroes all modes with |j| > n/3.
void dealias(SpectralField& u);
// Coefficients of ∂x(uv)/2 by collocation; with dealias both factors and the
// product are truncated by the 2/3 rule.
SpectralField bilinear_flux(const SpectralField& u, const SpectralField& v, bool dealias_on);
SpectralField nonlinearity(const SpectralField& u, bool dealias_on);

std::vector<double> to_physical(const SpectralField& u);
SpectralField from_physical(const Grid& g, const std::vector<double>& values);
double collocation_l2(const Grid& g, const std::vector<double>& values);

}  // namespace fdbo
