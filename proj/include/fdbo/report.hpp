#pragma once

#include <chrono>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fdbo/alpha_continuity.hpp"
#include "fdbo/dyadic_blocks.hpp"
#include "fdbo/evolution.hpp"
#include "fdbo/picard_illposedness.hpp"
#include "fdbo/semigroup.hpp"

namespace fdbo::report {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.4.0";
inline constexpr int kFormatVersion = 1;

// Shortest decimal string that parses back to the same double.
std::string format_double(double x);

Json to_json(const SmoothingReport& r);
Json to_json(const illposed::InflationReport& r);
Json to_json(const dyadic::NormEstimate& e);
Json to_json(const std::vector<dyadic::NormEstimate>& v);
Json to_json(const alpha::ConvergenceReport& r);
Json picard_summary(const PicardResult& r);

// t, l2_norm, hs_norm, energy_residual per recorded frame; the residual is
// empty at the two end frames where no centered difference exists.
void write_timeseries_csv(const std::string& path, const Trajectory& traj, double s);

// Wall-clock bookkeeping for the report envelope. With reproducible set the
// timing fields are fixed so identical runs give identical bytes.
class RunClock {
 public:
  explicit RunClock(bool reproducible);
  std::string started_at() const;
  double wall_seconds() const;

 private:
  bool reproducible_;
  std::chrono::system_clock::time_point start_;
  std::chrono::steady_clock::time_point mono_;
};

// {tool_version, format_version, experiment, config, started_at, wall_seconds, results}
Json envelope(const std::string& experiment, const Json& config, const Json& results, const RunClock& clock);

void write_json(const std::string& path, const Json& j);

}  // namespace fdbo::report
