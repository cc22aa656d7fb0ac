#pragma once

#include <string>
#include <vector>

#include "fdbo/spectral_core.hpp"

namespace fdbo::illposed {

enum class DatumKind { LinePair, LineAsym, TorusTwoMode };

DatumKind parse_kind(const std::string& name);
std::string kind_name(DatumKind k);

struct InflationDatum {
  DatumKind kind = DatumKind::LinePair;
  double N = 64.0;
  double omega = 1.0;
  double s = 0.0;

  void validate() const;
};

// Characteristic-function piece amp·χ_[lo, hi] of û₀.
struct Band {
  double lo;
  double hi;
  double amp;
};

// Bands of a line datum, mirrored so the datum is real.
std::vector<Band> datum_bands(const InflationDatum& d);

// Samples û₀ on the grid in the coefficient convention c = √(2π)·û₀/L. Line
// data require ω >= 4 grid spacings and N + 4ω inside the grid; the torus
// datum puts N^{-s} on modes ±N and ±(N-1) of a 2π-periodic grid.
SpectralField build_datum(const InflationDatum& d, const Grid& grid);

cplx sigma(double xi, double xi1, const SymbolParams& p);

struct ResonanceEval {
  double xi, xi1, xi2;
  cplx sigma_outer;  // σ(ξ, ξ₂)
  cplx sigma_inner;  // σ(ξ₂, ξ₁)
  cplx eta;          // sum of the two
};

ResonanceEval resonance_eval(double xi, double xi1, double xi2, const SymbolParams& p);

// (e^{zt} - 1)/z, equal to t at z = 0.
cplx duhamel_factor(cplx z, double t);
// (E(a+b, t) - E(a, t))/b = ∫_0^t e^{aτ} E(b, τ) dτ, finite at b = 0.
cplx duhamel_divided_difference(cplx a, cplx b, double t);

struct LineQuadrature {
  int panels = 3;
  int order = 12;
  bool adaptive = false;  // Gauss-Kronrod for the u₂ inner integral
  double tol = 1e-12;
  int output_panels = 2;
  int output_order = 12;
};

// Closed forms in continuous frequency with the unitary transform:
// û₂(ξ,t) = -(iξ/√(2π)) e^{p(ξ)t} ∫ û₀(ξ-ξ₁) û₀(ξ₁) E(σ(ξ,ξ₁),t) dξ₁,
// û₃(ξ,t) = -(3ξ/2π) e^{p(ξ)t} ∬ û₀(ξ-ξ₂) û₀(ξ₂-ξ₁) û₀(ξ₁) ξ₂ D(σ(ξ,ξ₂), σ(ξ₂,ξ₁), t) dξ₁dξ₂,
// with D the divided difference above.
std::vector<cplx> u2_closed_form(const std::vector<Band>& bands, double t, const std::vector<double>& xi,
                                 const SymbolParams& p, const LineQuadrature& q = {});
std::vector<cplx> u3_closed_form(const std::vector<Band>& bands, double t, const std::vector<double>& xi,
                                 const SymbolParams& p, const LineQuadrature& q = {});

// ‖u_k(t)‖_{H^s} over the whole output support (k = 2 or 3), split at all
// sums of band edges.
double line_hs_norm(int k, const std::vector<Band>& bands, double t, double s, const SymbolParams& p,
                    const LineQuadrature& q = {});

// Same closed forms with sums over grid modes in place of the integrals.
SpectralField u2_closed_form_lattice(const SpectralField& u0, double t, const SymbolParams& p);
SpectralField u3_closed_form_lattice(const SpectralField& u0, double t, const SymbolParams& p);

// u₂ = -∫S(t-τ)∂x(u₁²)dτ and u₃ = -3∫S(t-τ)∂x(u₁u₂)dτ by Gauss-Legendre time
// quadrature with exact semigroup weights, no dealiasing.
struct PicardDerivatives {
  SpectralField u1, u2, u3;
};

PicardDerivatives picard_derivatives(const SpectralField& u0, double t, const SymbolParams& p, int panels = 16,
                                     int order = 10);

// Largest |j| with a nonzero coefficient.
int support_radius(const SpectralField& u, double rel_tol = 0.0);

struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
  int samples = 0;
};

// |σ(ξ,ξ₁)|/N^β over ξ ∈ [-ω/2, ω/2], ξ₁ in the line-pair support set.
Bracket sigma_bracket(double N, double omega, const SymbolParams& p, int per_axis = 24);
// |Im η|/ω² and |Re η|/N^β over ξ ∈ [N+3ω, N+4ω] and (ξ₁, ξ₂) in the three
// line-pair support pieces.
struct EtaBrackets {
  Bracket im_over_omega2;
  Bracket re_over_Nbeta;
};
EtaBrackets eta_brackets(double N, double omega, const SymbolParams& p, int per_axis = 12);

// Sign consistency of Re σ(ξ,ξ₂) on the ++- piece and on the two mixed pieces,
// each with |Re σ|/N^β >= floor.
bool sigma_outer_sign_check(double N, double omega, const SymbolParams& p, double floor = 1e-3,
                            int per_axis = 12);

struct InflationConfig {
  DatumKind kind = DatumKind::LinePair;
  int order = 2;
  double s = -1.25;
  double alpha = 1.0;
  double beta = 2.0;
  std::vector<double> N_list = {64, 128, 256, 512, 1024, 2048, 4096};
  double epsilon = 0.05;
  double omega = 1.0;  // line-pair, order 2
  double eps1 = 1.0 / 64.0;
  LineQuadrature quad;
};

struct InflationEntry {
  double N;
  double t_N;
  double omega;
  double norm;
};

struct InflationReport {
  std::string kind;
  int order = 2;
  double alpha = 0.0, beta = 0.0, s = 0.0, epsilon = 0.0;
  std::string omega_rule;
  double eps1 = 0.0;
  int eps1_halvings = 0;
  std::vector<InflationEntry> entries;
  double fitted_slope = 0.0;
  double theoretical_slope = 0.0;
  bool monotone = true;
  double refinement_change = 0.0;  // relative norm change at the largest N with doubled panels
};

double theoretical_slope(const InflationConfig& c);
InflationReport inflation_sweep(const InflationConfig& c);

// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace fdbo::illposed
