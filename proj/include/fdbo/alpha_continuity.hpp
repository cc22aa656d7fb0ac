#pragma once

#include <vector>

#include "fdbo/evolution.hpp"

namespace fdbo::alpha {

// g(t) = a e^{ct/2} / (1 - a(e^{ct/2} - 1)) with a = ‖u₀‖; rejects t at or
// past the blow-up time.
double uniform_bound_g(double t, double u0_norm, double c);
double g_blowup_time(double u0_norm, double c);

// (α/β)^{α/(β-α)} (β-α)/β, zero at α = β.
double growth_term_A(double alpha, double beta);

struct FamilyConfig {
  std::vector<double> alphas;  // increasing, last entry equals beta
  double beta = 2.0;
  double s0 = 3.0;
  double T = 1.0;  // upper limit; the horizon is min(T, half the blow-up time of g)
  double envelope_tol = 0.05;
  SolverConfig solver;
};

struct FamilyRun {
  std::vector<double> alphas;
  double beta = 0.0;
  double s0 = 0.0;
  double T = 0.0;
  double c = 0.0;
  double u0_norm = 0.0;
  std::vector<Trajectory> trajectories;
  double envelope_max_ratio = 0.0;  // sup of ‖u^α(t)‖_{H^{s0}} / g(t)
  bool envelope_ok = false;
  std::vector<double> violators;
};

// c is the smallest value for which the pure BO member stays under g on the
// requested horizon; it is then frozen for every α.
FamilyRun run_family(const SpectralField& u0, const FamilyConfig& cfg);

struct ConvergenceReport {
  double beta = 0.0, s0 = 0.0, s = 0.0, T = 0.0, c = 0.0;
  std::vector<double> alphas, D, A, B, ratio;
  double fitted_C = 0.0;
  bool envelope_ok = false;
  bool tail_monotone = false;   // D non-increasing over the last three α < β
  double max_quadratic_form = 0.0;  // max over stored w of Σ(|k|^α-|k|^β)|⟨k⟩^s ŵ|²
  bool dissipative = false;
};

ConvergenceReport convergence_study(const FamilyRun& run, double s);

}  // namespace fdbo::alpha
