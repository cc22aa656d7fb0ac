#include <algorithm>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fdbo/acceptance.hpp"
#include "fdbo/config.hpp"
#include "fdbo/experiments.hpp"

namespace {

using fdbo::cli::ConfigError;
using fdbo::cli::ConfigTable;

// "--key value" and "--key=value" pairs left over after CLI11 parsing.
void apply_overrides(ConfigTable& cfg, const std::vector<std::string>& extras) {
  for (size_t i = 0; i < extras.size(); ++i) {
    const std::string& a = extras[i];
    if (a.rfind("--", 0) != 0 || a.size() == 2) throw ConfigError("unexpected argument '" + a + "'");
    const std::string body = a.substr(2);
    if (const auto eq = body.find('='); eq != std::string::npos) {
      cfg.set(body.substr(0, eq), body.substr(eq + 1));
    } else {
      if (i + 1 >= extras.size()) throw ConfigError("option '" + a + "' needs a value");
      cfg.set(body, extras[++i]);
    }
  }
}

void apply_sets(ConfigTable& cfg, const std::vector<std::string>& sets) {
  for (const auto& s : sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + s + "'");
    cfg.set(s.substr(0, eq), s.substr(eq + 1));
  }
}

int run_check(const ConfigTable& cfg, bool json, bool reproducible) {
  fdbo::acceptance::Options opt;
  opt.seed = static_cast<std::uint64_t>(cfg.get_int("seed", static_cast<long>(opt.seed)));
  for (double id : cfg.get_doubles("only", {})) opt.only.push_back(static_cast<int>(id));
  const bool rerun = cfg.get_bool("rerun", true);
  opt.tol = fdbo::acceptance::read_tolerances(cfg);
  cfg.reject_unused();

  fdbo::report::RunClock clock(reproducible);
  auto results = fdbo::acceptance::run_criteria(opt);
  const auto doc = fdbo::acceptance::results_json(results, opt);
  if (rerun) results.push_back(fdbo::acceptance::determinism_check(doc, opt));
  bool all = true;
  for (const auto& r : results) all = all && r.passed;
  if (json) {
    auto out = fdbo::acceptance::results_json(results, opt);
    out["started_at"] = clock.started_at();
    out["wall_seconds"] = clock.wall_seconds();
    std::cout << out.dump(2) << '\n';
  } else {
    for (const auto& r : results) std::cout << fdbo::acceptance::format_line(r) << '\n';
  }
  if (!all) {
    for (const auto& r : results)
      if (!r.passed) std::cerr << "failed criterion " << r.id << ": " << r.name << '\n';
    return fdbo::cli::kExitAcceptance;
  }
  return fdbo::cli::kExitOk;
}

// Experiment subcommands take arbitrary "--key value" pairs. Joining them into
// "--key=value" before CLI11 sees them keeps values such as "++" intact.
std::vector<std::string> join_key_values(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  const auto names = fdbo::cli::experiment_names();
  if (args.size() < 2 || std::find(names.begin(), names.end(), args[1]) == names.end()) return args;
  std::vector<std::string> out(args.begin(), args.begin() + 2);
  for (size_t i = 2; i < args.size(); ++i) {
    const std::string& a = args[i];
    const bool key = a.rfind("--", 0) == 0 && a.size() > 2 && a.find('=') == std::string::npos;
    if (key && a != "--reproducible" && a != "--help" && i + 1 < args.size() && args[i + 1].rfind("--", 0) != 0) {
      out.push_back(a + "=" + args[i + 1]);
      ++i;
    } else {
      out.push_back(a);
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fdbo: pseudospectral experiments for u_t + H u_xx - (D^a - D^b) u + u u_x = 0"};
  app.require_subcommand(1);

  bool reproducible = false;
  std::string config_path;
  std::vector<CLI::App*> experiments;
  for (const auto& name : fdbo::cli::experiment_names()) {
    auto* sub = app.add_subcommand(name, "run the " + name + " experiment; any --key value sets a config key");
    sub->add_option("--config", config_path, "key = value file, overridden by flags");
    sub->add_flag("--reproducible", reproducible, "fix started_at and wall_seconds");
    sub->allow_extras();
    sub->positionals_at_end(false);
    experiments.push_back(sub);
  }

  std::vector<std::string> sets;
  auto* run = app.add_subcommand("run", "run the experiment named by the 'experiment' key of a config file");
  run->add_option("config", config_path, "config file")->required();
  run->add_option("--set", sets, "key=value override");
  run->add_flag("--reproducible", reproducible, "fix started_at and wall_seconds");

  bool json = false;
  auto* check = app.add_subcommand("check", "run the acceptance suite");
  check->add_option("config", config_path, "optional config with seed, only, rerun and tol.* keys");
  check->add_option("--set", sets, "key=value override");
  check->add_flag("--json", json, "print machine-readable results");
  check->add_flag("--reproducible", reproducible, "fix started_at and wall_seconds");

  try {
    auto args = join_key_values(argc, argv);
    args.erase(args.begin());
    std::reverse(args.begin(), args.end());  // CLI11 consumes from the back
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : fdbo::cli::kExitConfig;
  }

  try {
    ConfigTable cfg = config_path.empty() ? ConfigTable{} : ConfigTable::load(config_path);
    if (*check) {
      apply_sets(cfg, sets);
      return run_check(cfg, json, reproducible);
    }
    if (*run) {
      apply_sets(cfg, sets);
      const std::string name = cfg.require_string("experiment");
      return fdbo::cli::run_and_report(name, cfg, reproducible, std::cout, std::cerr);
    }
    for (auto* sub : experiments) {
      if (!*sub) continue;
      apply_overrides(cfg, sub->remaining());
      return fdbo::cli::run_and_report(sub->get_name(), cfg, reproducible, std::cout, std::cerr);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return fdbo::cli::kExitConfig;
  }
  return fdbo::cli::kExitConfig;
}
