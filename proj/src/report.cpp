#include "fdbo/report.hpp"

#include <charconv>
#include <cmath>
#include <ctime>
#include <fstream>
#include <stdexcept>

namespace fdbo::report {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

Json to_json(const SmoothingReport& r) {
  return Json{{"t", r.t_samples}, {"ratio", r.ratio_samples}, {"sup_ratio", r.sup_ratio}};
}

Json to_json(const illposed::InflationReport& r) {
  Json entries = Json::array();
  for (const auto& e : r.entries) entries.push_back({{"N", e.N}, {"t_N", e.t_N}, {"omega", e.omega}, {"norm", e.norm}});
  return Json{{"kind", r.kind},
              {"order", r.order},
              {"alpha", r.alpha},
              {"beta", r.beta},
              {"s", r.s},
              {"epsilon", r.epsilon},
              {"omega_rule", r.omega_rule},
              {"eps1", r.eps1},
              {"eps1_halvings", r.eps1_halvings},
              {"entries", entries},
              {"fitted_slope", r.fitted_slope},
              {"theoretical_slope", r.theoretical_slope},
              {"monotone", r.monotone},
              {"refinement_change", r.refinement_change}};
}

Json to_json(const dyadic::NormEstimate& e) {
  const auto& b = e.block;
  return Json{{"N", b.N}, {"L", b.L},           {"H", b.H},         {"estimate", e.estimate},
              {"bound", e.bound}, {"ratio", e.ratio}, {"samples", e.samples}, {"sweeps", e.sweeps}};
}

Json to_json(const std::vector<dyadic::NormEstimate>& v) {
  Json a = Json::array();
  for (const auto& e : v) a.push_back(to_json(e));
  return a;
}

Json to_json(const alpha::ConvergenceReport& r) {
  return Json{{"beta", r.beta},
              {"s0", r.s0},
              {"s", r.s},
              {"T", r.T},
              {"c", r.c},
              {"alphas", r.alphas},
              {"D", r.D},
              {"A", r.A},
              {"B", r.B},
              {"ratio", r.ratio},
              {"fitted_C", r.fitted_C},
              {"envelope_ok", r.envelope_ok},
              {"tail_monotone", r.tail_monotone},
              {"max_quadratic_form", r.max_quadratic_form},
              {"dissipative", r.dissipative}};
}

Json picard_summary(const PicardResult& r) {
  return Json{{"T", r.T},
              {"iterations", r.iterates.size()},
              {"nodes", r.node_times.size()},
              {"norm_s", r.norm_s},
              {"diff_norms", r.diff_norms},
              {"contraction_factor", r.contraction_factor},
              {"converged", r.converged}};
}

void write_timeseries_csv(const std::string& path, const Trajectory& traj, double s) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  const EnergyBalance eb = energy_balance(traj);
  os << "t,l2_norm,hs_norm,energy_residual\n";
  for (size_t k = 0; k < traj.states.size(); ++k) {
    os << format_double(traj.times[k]) << ',' << format_double(sobolev_norm(traj.states[k], 0.0)) << ','
       << format_double(sobolev_norm(traj.states[k], s)) << ',';
    // energy_balance skips the first and last frame
    if (k >= 1 && k + 1 < traj.states.size()) os << format_double(eb.residuals[k - 1]);
    os << '\n';
  }
  if (!os) throw std::runtime_error("write failed for " + path);
}

RunClock::RunClock(bool reproducible)
    : reproducible_(reproducible), start_(std::chrono::system_clock::now()), mono_(std::chrono::steady_clock::now()) {}

std::string RunClock::started_at() const {
  if (reproducible_) return "1970-01-01T00:00:00Z";
  const std::time_t t = std::chrono::system_clock::to_time_t(start_);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

double RunClock::wall_seconds() const {
  if (reproducible_) return 0.0;
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - mono_).count();
}

Json envelope(const std::string& experiment, const Json& config, const Json& results, const RunClock& clock) {
  return Json{{"tool_version", kToolVersion}, {"format_version", kFormatVersion}, {"experiment", experiment},
              {"config", config},             {"started_at", clock.started_at()}, {"wall_seconds", clock.wall_seconds()},
              {"results", results}};
}

void write_json(const std::string& path, const Json& j) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  os << j.dump(2) << '\n';
  if (!os) throw std::runtime_error("write failed for " + path);
}

}  // namespace fdbo::report
