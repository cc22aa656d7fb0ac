#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "fdbo/report.hpp"

namespace fdbo::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitInstability = 3;
inline constexpr int kExitAcceptance = 4;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Flat `key = value` table. '#' starts a comment, '-' and '_' in keys are
// interchangeable, lists are comma separated. Every typed read records the
// resolved value (default included) so reports can embed the full config.
class ConfigTable {
 public:
  static ConfigTable parse(const std::string& text, const std::string& origin = "<config>");
  static ConfigTable load(const std::string& path);

  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const;

  std::string get_string(const std::string& key, const std::string& fallback) const;
  std::string require_string(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  long get_int(const std::string& key, long fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<double> get_doubles(const std::string& key, const std::vector<double>& fallback) const;

  // Throws ConfigError naming any key that was supplied but never read.
  void reject_unused() const;

  const report::Json& resolved() const { return resolved_; }
  const std::map<std::string, std::string>& entries() const { return values_; }

 private:
  const std::string* lookup(const std::string& key) const;

  std::map<std::string, std::string> values_;
  mutable std::set<std::string> used_;
  mutable report::Json resolved_ = report::Json::object();
};

std::string normalize_key(const std::string& key);

}  // namespace fdbo::cli
