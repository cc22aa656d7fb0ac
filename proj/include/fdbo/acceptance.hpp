#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fdbo/config.hpp"
#include "fdbo/report.hpp"

namespace fdbo::acceptance {

// Pass thresholds. The defaults are the acceptance values; overrides exist
// only so the failure path can be exercised.
struct Tolerances {
  double c1_abs = 1e-12;
  double c2_variation = 0.10;
  double c3_ratio_cap = 10.0;
  double c3_grid_change = 0.01;
  double c4_residual = 1e-6;
  double c4_growth = 1.0001;
  double c5_ratio_max = 1.0;
  double c5_nu_min = 0.0;
  double c5_mismatch = 1e-5;
  double c6_min_slope = 0.2;
  double c6_window = 0.1;
  double c6_subcritical_max = 0.0;
  double c7_window_low = 0.15;
  double c7_window_high = 0.2;
  double c8_u2 = 1e-6;
  double c8_u3 = 1e-5;
  double c9_min_blocks = 100;
  double c9_stability = 0.2;
  double c9_vacuous = 1e-3;
  double c10_refit = 0.25;
};

// Reads keys tol.<field> (e.g. tol.c6_min_slope) from cfg.
Tolerances read_tolerances(const cli::ConfigTable& cfg);
report::Json to_json(const Tolerances& t);

struct Options {
  std::uint64_t seed = 20240611;
  std::vector<int> only;  // empty: criteria 1..10
  Tolerances tol;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string summary;
  report::Json detail;
};

std::vector<CriterionResult> run_criteria(const Options& opt);

// Deterministic document: no timing, no host data.
report::Json results_json(const std::vector<CriterionResult>& results, const Options& opt);

// Runs the selected criteria again and compares the serialized documents byte by byte.
CriterionResult determinism_check(const report::Json& first, const Options& opt);

std::string format_line(const CriterionResult& r);

}  // namespace fdbo::acceptance
