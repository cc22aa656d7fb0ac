#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fdbo/config.hpp"

namespace fdbo::cli {

const std::vector<std::string>& experiment_names();

// Reads every parameter of the experiment from cfg (unknown keys are a
// ConfigError), runs it, writes <out>.json plus any CSV/snapshot artifacts and
// returns the report envelope.
report::Json run_experiment(const std::string& name, const ConfigTable& cfg, bool reproducible);

// run_experiment with exceptions mapped to exit codes: ConfigError and
// invalid_argument give 2, instability and non-contraction give 3.
int run_and_report(const std::string& name, const ConfigTable& cfg, bool reproducible, std::ostream& out,
                   std::ostream& err);

}  // namespace fdbo::cli
