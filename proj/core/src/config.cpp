#include "thermoscope/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "thermoscope/error.hpp"

namespace thermoscope {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

KeyValueMap parse_config_text(const std::string& text) {
  KeyValueMap kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(errkind::config,
                  "line " + std::to_string(lineno) + " is not 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw Error(errkind::config, "empty key on line " + std::to_string(lineno));
    kv[key] = value;
  }
  return kv;
}

KeyValueMap parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(errkind::io, "cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

double to_double(const std::string& key, const std::string& value) {
  char* end = nullptr;
  const double v = std::strtod(value.c_str(), &end);
  if (end == value.c_str() || *end != '\0')
    throw Error(errkind::config, "key '" + key + "': '" + value + "' is not a number");
  return v;
}

long to_long(const std::string& key, const std::string& value) {
  char* end = nullptr;
  const long v = std::strtol(value.c_str(), &end, 10);
  if (end == value.c_str() || *end != '\0')
    throw Error(errkind::config,
                "key '" + key + "': '" + value + "' is not an integer");
  return v;
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "on" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "off" || value == "no")
    return false;
  throw Error(errkind::config, "key '" + key + "': '" + value + "' is not a boolean");
}

GasParameters gas_from_config(const KeyValueMap& kv) {
  GasParameters g;
  if (auto it = kv.find("gas.N"); it != kv.end())
    g.N = static_cast<int>(to_long(it->first, it->second));
  if (auto it = kv.find("gas.m"); it != kv.end()) g.m = to_double(it->first, it->second);
  if (auto it = kv.find("gas.C"); it != kv.end()) g.C = to_double(it->first, it->second);
  if (auto it = kv.find("gas.a"); it != kv.end()) g.a = to_double(it->first, it->second);
  if (auto it = kv.find("gas.b"); it != kv.end()) g.b = to_double(it->first, it->second);
  g.validate();
  return g;
}

SolverOptions solver_from_config(const KeyValueMap& kv) {
  SolverOptions opts;
  if (auto it = kv.find("maxent.tol"); it != kv.end())
    opts.tol = to_double(it->first, it->second);
  if (auto it = kv.find("maxent.max_iter"); it != kv.end())
    opts.max_iter = static_cast<int>(to_long(it->first, it->second));
  if (auto it = kv.find("maxent.deterministic"); it != kv.end())
    opts.deterministic = to_bool(it->first, it->second);
  if (!(opts.tol > 0.0) || opts.max_iter < 1)
    throw Error(errkind::config, "maxent options out of range");
  return opts;
}

}  // namespace thermoscope
