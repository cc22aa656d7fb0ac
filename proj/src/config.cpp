#include "fdbo/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace fdbo::cli {
namespace {

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

double to_double(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  double v = 0.0;
  const char* first = t.data();
  if (!t.empty() && t[0] == '+') ++first;
  const auto res = std::from_chars(first, t.data() + t.size(), v);
  if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size())
    throw ConfigError("key '" + key + "': expected a number, got '" + text + "'");
  return v;
}

}  // namespace

std::string normalize_key(const std::string& key) {
  std::string k = trim(key);
  std::replace(k.begin(), k.end(), '-', '_');
  return k;
}

ConfigTable ConfigTable::parse(const std::string& text, const std::string& origin) {
  ConfigTable t;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = normalize_key(line.substr(0, eq));
    if (key.empty()) throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
    if (t.values_.count(key)) throw ConfigError(origin + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
    t.values_[key] = trim(line.substr(eq + 1));
  }
  return t;
}

ConfigTable ConfigTable::load(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot read config file " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return parse(ss.str(), path);
}

void ConfigTable::set(const std::string& key, const std::string& value) { values_[normalize_key(key)] = trim(value); }

bool ConfigTable::has(const std::string& key) const { return values_.count(normalize_key(key)) > 0; }

const std::string* ConfigTable::lookup(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return nullptr;
  used_.insert(key);
  return &it->second;
}

std::string ConfigTable::get_string(const std::string& key, const std::string& fallback) const {
  const std::string* v = lookup(key);
  const std::string out = v ? *v : fallback;
  resolved_[key] = out;
  return out;
}

std::string ConfigTable::require_string(const std::string& key) const {
  const std::string* v = lookup(key);
  if (!v) throw ConfigError("missing required key '" + key + "'");
  resolved_[key] = *v;
  return *v;
}

double ConfigTable::get_double(const std::string& key, double fallback) const {
  const std::string* v = lookup(key);
  const double out = v ? to_double(key, *v) : fallback;
  resolved_[key] = out;
  return out;
}

long ConfigTable::get_int(const std::string& key, long fallback) const {
  const std::string* v = lookup(key);
  long out = fallback;
  if (v) {
    const std::string t = trim(*v);
    const auto res = std::from_chars(t.data(), t.data() + t.size(), out);
    if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size())
      throw ConfigError("key '" + key + "': expected an integer, got '" + *v + "'");
  }
  resolved_[key] = out;
  return out;
}

bool ConfigTable::get_bool(const std::string& key, bool fallback) const {
  const std::string* v = lookup(key);
  bool out = fallback;
  if (v) {
    std::string t = trim(*v);
    std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
    if (t == "true" || t == "1" || t == "yes" || t == "on")
      out = true;
    else if (t == "false" || t == "0" || t == "no" || t == "off")
      out = false;
    else
      throw ConfigError("key '" + key + "': expected a boolean, got '" + *v + "'");
  }
  resolved_[key] = out;
  return out;
}

std::vector<double> ConfigTable::get_doubles(const std::string& key, const std::vector<double>& fallback) const {
  const std::string* v = lookup(key);
  std::vector<double> out = fallback;
  if (v) {
    out.clear();
    std::istringstream is(*v);
    std::string item;
    while (std::getline(is, item, ',')) out.push_back(to_double(key, item));
    if (out.empty()) throw ConfigError("key '" + key + "': empty list");
  }
  resolved_[key] = out;
  return out;
}

void ConfigTable::reject_unused() const {
  std::string unknown;
  for (const auto& [k, v] : values_)
    if (!used_.count(k)) unknown += (unknown.empty() ? "" : ", ") + k;
  if (!unknown.empty()) throw ConfigError("unknown config key(s): " + unknown);
}

}  // namespace fdbo::cli
