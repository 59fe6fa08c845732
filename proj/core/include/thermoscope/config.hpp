#ifndef THERMOSCOPE_CONFIG_HPP
#define THERMOSCOPE_CONFIG_HPP

#include <map>
#include <optional>
#include <string>

#include "thermoscope/gas_models.hpp"
#include "thermoscope/maxent.hpp"

namespace thermoscope {

/// Flat key = value map; insertion into outputs is in key order.
using KeyValueMap = std::map<std::string, std::string>;

/// Parses a flat "key = value" config file: one pair per line, '#' starts a
/// comment, blank lines ignored, UTF-8, no nesting.
KeyValueMap parse_config_file(const std::string& path);

/// Same parser over an in-memory string (used by tests).
KeyValueMap parse_config_text(const std::string& text);

double to_double(const std::string& key, const std::string& value);
long to_long(const std::string& key, const std::string& value);
bool to_bool(const std::string& key, const std::string& value);

/// gas.N, gas.m, gas.C, gas.a, gas.b (defaults where absent).
GasParameters gas_from_config(const KeyValueMap& kv);

/// maxent.tol, maxent.max_iter, maxent.deterministic.
SolverOptions solver_from_config(const KeyValueMap& kv);

}  // namespace thermoscope

#endif
