#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "fdbo/spectral_core.hpp"

namespace fdbo {

enum class Scheme { IFRK4, ETDRK4 };

Scheme parse_scheme(const std::string& name);
std::string scheme_name(Scheme s);

struct SolverConfig {
  double dt = 1e-3;
  double t_end = 1.0;
  Scheme scheme = Scheme::IFRK4;
  bool dealias = true;
  bool nonlinear = true;
  int record_every = 1;
  int picard_max_iters = 40;
  double picard_tol = 1e-13;

  void validate() const;
};

struct Trajectory {
  Grid grid;
  SymbolParams params;
  std::vector<double> times;
  std::vector<SpectralField> states;
};

class InstabilityError : public std::runtime_error {
 public:
  InstabilityError(double t, const std::string& what) : std::runtime_error(what), time_(t) {}
  double time() const { return time_; }

 private:
  double time_;
};

class NonContractionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Largest dt for which the explicit treatment of u·u_x stays inside the RK4
// stability region along the imaginary axis, estimated from sup|u| and the
// largest retained wavenumber.
double max_stable_dt(const SpectralField& u, bool dealias_on);

// Precomputed exponential factors for one (grid, params, dt, scheme).
class Stepper {
 public:
  Stepper(const Grid& grid, const SymbolParams& p, double dt, const SolverConfig& cfg);
  SpectralField advance(const SpectralField& u) const;
  double dt() const { return dt_; }

 private:
  SpectralField rhs(const SpectralField& u) const;

  Grid grid_;
  double dt_;
  Scheme scheme_;
  bool dealias_;
  bool nonlinear_;
  std::vector<cplx> e_full_, e_half_;
  std::vector<cplx> q_, f1_, f2_, f3_;  // ETDRK4 coefficients
};

SpectralField step(const SpectralField& u, double dt, const SolverConfig& cfg, const SymbolParams& p);

// Uses dt' = t_end / ceil(t_end / dt) so the final state lands on t_end.
Trajectory solve(const SpectralField& u0, const SolverConfig& cfg, const SymbolParams& p);

struct EnergyBalance {
  std::vector<double> times;
  std::vector<double> residuals;  // |r(t)| / ‖u(t)‖²
  double max_residual = 0.0;
};

EnergyBalance energy_balance(const Trajectory& traj);

struct PicardResult {
  std::vector<double> node_times;  // quadrature nodes in (0, T)
  double T = 0.0;
  // iterates[n][k]: iterate n at node k; the last entry of each row is t = T
  std::vector<std::vector<SpectralField>> iterates;
  std::vector<double> diff_norms;  // sup_t ‖u^{(n+1)} - u^{(n)}‖_{H^s}
  double contraction_factor = 0.0;
  double norm_s = 0.0;
  bool converged = false;

  const SpectralField& final_state() const { return iterates.back().back(); }
};

struct PicardOptions {
  int panels = 8;
  int order = 10;
  double norm_s = 2.0;
  double tol = 1e-13;  // relative to sup_t ‖u^{(0)}‖_{H^s}
  bool dealias = true;
};

PicardResult picard_iterate(const SpectralField& u0, double T, int iters, const SymbolParams& p,
                            const PicardOptions& opt = {});

double y_norm(const Trajectory& traj, double s, double T, double beta);

// Space-time samples û(ξ, τ) on a rectangular grid, normalized so that the
// Riemann sum Σ|û|² dξ dτ is the space-time L² norm.
struct SpaceTimeField {
  std::vector<double> xi;
  std::vector<double> tau;
  double dxi = 0.0;
  double dtau = 0.0;
  std::vector<cplx> values;  // values[i * tau.size() + l]

  cplx at(size_t i, size_t l) const { return values[i * tau.size() + l]; }
};

// Time transform of a uniformly sampled trajectory; frame m of M is weighted
// by sin²(π(m+1)/(M+1)) so the windowed signal vanishes at both ends.
SpaceTimeField spacetime_transform(const Trajectory& traj);

double xbs_norm(const SpaceTimeField& f, double b, double s, const SymbolParams& p);

void write_snapshot(const std::string& path, const Trajectory& traj);
Trajectory read_snapshot(const std::string& path);

}  // namespace fdbo
