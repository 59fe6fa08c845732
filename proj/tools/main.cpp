// thermoscope: max-entropy fits, gas-model tables, Maxwell constructions,
// graph selectors and free-transport runs, emitted as plot-ready CSV/JSON.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "thermoscope/config.hpp"
#include "thermoscope/csv_io.hpp"
#include "thermoscope/error.hpp"
#include "thermoscope/gas_models.hpp"
#include "thermoscope/json_io.hpp"
#include "thermoscope/kinetic.hpp"
#include "thermoscope/maxent.hpp"
#include "thermoscope/maxwell.hpp"
#include "thermoscope/measure.hpp"
#include "thermoscope/numerics.hpp"
#include "thermoscope/version.hpp"

namespace ts = thermoscope;

namespace {

// ---------------------------------------------------------------------------
// logging

int log_level() {
  static int level = [] {
    const char* env = std::getenv("THERMOSCOPE_LOG");
    if (!env) return 1;
    const std::string v = env;
    if (v == "error") return 0;
    if (v == "warn") return 1;
    if (v == "info") return 2;
    if (v == "debug") return 3;
    return 1;
  }();
  return level;
}

void log_warn(const std::string& msg) {
  if (log_level() >= 1) std::cerr << "warn: " << msg << "\n";
}
void log_info(const std::string& msg) {
  if (log_level() >= 2) std::cerr << "info: " << msg << "\n";
}

// ---------------------------------------------------------------------------
// usage / flag handling

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const char* kUsage =
    "usage: thermoscope <command> [--flag value]...\n"
    "\n"
    "commands:\n"
    "  maxent        fit Lagrange multipliers to target moments\n"
    "                  --system FILE --target v1,v2,... [--tol X]\n"
    "                  [--max-iter N] [--deterministic BOOL]\n"
    "  ideal         ideal-gas equilibrium point\n"
    "                  --T X --P X [--N n] [--m X] [--C X]\n"
    "  vdw-isotherm  van der Waals isotherm samples (CSV Veff,P)\n"
    "                  --T X | --temps T1,T2,... [--a X] [--b X] [--N n]\n"
    "                  [--v-lo X] [--v-hi X] [--count n] [--adjusted BOOL]\n"
    "  vdw-maxwell   Maxwell equal-area construction (JSON)\n"
    "                  --T X | --temps ... --a X --b X [--N n]\n"
    "  vdw-selector  graph-selector potential f_T(P) (CSV P,fT,dfTdP,branch)\n"
    "                  --T X | --temps ... --a X --b X [--N n] [--P-ref X]\n"
    "                  [--p-min X] [--p-max X] [--count n]\n"
    "  transport     semi-Lagrangian free transport (CSV t,mass,entropy,...)\n"
    "                  [--nq n] [--np n] [--q-min X] [--q-max X] [--p-min X]\n"
    "                  [--p-max X] [--t-final X] [--steps n] [--stride n]\n"
    "                  [--q0 X] [--p0 X] [--sigma-q X] [--sigma-p X]\n"
    "                  [--dump-f FILE]\n"
    "\n"
    "common flags: --out FILE (default stdout), --format csv|json,\n"
    "              --config FILE (flat 'key = value'; flags win)\n"
    "environment:  THERMOSCOPE_LOG=error|warn|info|debug\n";

// Canonical parameter names per command. Flags are spelled --<name> with
// '_' replaced by '-' plus the short gas/maxent aliases.
const std::map<std::string, std::string> kFlagAlias = {
    {"N", "gas.N"},        {"m", "gas.m"},
    {"C", "gas.C"},        {"a", "gas.a"},
    {"b", "gas.b"},        {"tol", "maxent.tol"},
    {"max-iter", "maxent.max_iter"},
    {"deterministic", "maxent.deterministic"},
};

const std::set<std::string> kCommonKeys = {"out", "format", "config"};

const std::map<std::string, std::set<std::string>> kCommandKeys = {
    {"maxent",
     {"system", "target", "maxent.tol", "maxent.max_iter", "maxent.deterministic"}},
    {"ideal", {"T", "P", "gas.N", "gas.m", "gas.C"}},
    {"vdw-isotherm",
     {"T", "temps", "gas.N", "gas.m", "gas.C", "gas.a", "gas.b", "v_lo", "v_hi",
      "count", "adjusted"}},
    {"vdw-maxwell", {"T", "temps", "gas.N", "gas.m", "gas.C", "gas.a", "gas.b"}},
    {"vdw-selector",
     {"T", "temps", "gas.N", "gas.m", "gas.C", "gas.a", "gas.b", "P_ref", "p_min",
      "p_max", "count"}},
    {"transport",
     {"nq", "np", "q_min", "q_max", "p_min", "p_max", "t_final", "steps", "stride",
      "q0", "p0", "sigma_q", "sigma_p", "dump_f"}},
};

bool known_anywhere(const std::string& key) {
  if (kCommonKeys.count(key)) return true;
  for (const auto& [cmd, keys] : kCommandKeys)
    if (keys.count(key)) return true;
  return false;
}

std::string canonical_from_flag(std::string flag) {
  if (auto it = kFlagAlias.find(flag); it != kFlagAlias.end()) return it->second;
  if (flag == "P-ref") return "P_ref";
  for (char& c : flag)
    if (c == '-') c = '_';
  return flag;
}

struct RunConfig {
  std::string command;
  ts::KeyValueMap parameters;  // fully merged, echoed into outputs
  std::string output_path;     // empty = stdout
  std::string format;          // "csv" or "json"
};

RunConfig build_config(const std::string& command,
                       const std::vector<std::string>& args,
                       const std::string& default_format) {
  const auto cmd_it = kCommandKeys.find(command);
  if (cmd_it == kCommandKeys.end())
    throw UsageError("unknown command '" + command + "'");
  const std::set<std::string>& allowed = cmd_it->second;

  // First pass over flags so --config is available before merging.
  ts::KeyValueMap flag_values;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& arg = args[i];
    if (arg.rfind("--", 0) != 0)
      throw UsageError("expected a --flag, got '" + arg + "'");
    if (i + 1 >= args.size())
      throw UsageError("flag '" + arg + "' is missing its value");
    const std::string key = canonical_from_flag(arg.substr(2));
    if (!allowed.count(key) && !kCommonKeys.count(key))
      throw UsageError("unknown flag '" + arg + "' for command '" + command + "'");
    flag_values[key] = args[++i];
  }

  RunConfig rc;
  rc.command = command;

  if (auto it = flag_values.find("config"); it != flag_values.end()) {
    for (const auto& [key, value] : ts::parse_config_file(it->second)) {
      if (!known_anywhere(key))
        throw UsageError("unknown config key '" + key + "'");
      // Keys for other commands are permitted in a shared file; only the
      // relevant ones are merged.
      if (allowed.count(key) || kCommonKeys.count(key))
        rc.parameters[key] = value;
    }
  }
  for (const auto& [key, value] : flag_values) rc.parameters[key] = value;

  rc.parameters["command"] = command;
  rc.format = default_format;
  if (auto it = rc.parameters.find("format"); it != rc.parameters.end()) {
    if (it->second != "csv" && it->second != "json")
      throw UsageError("format must be 'csv' or 'json'");
    rc.format = it->second;
  }
  if (auto it = rc.parameters.find("out"); it != rc.parameters.end())
    rc.output_path = it->second;
  return rc;
}

const std::string& require(const RunConfig& rc, const std::string& key) {
  auto it = rc.parameters.find(key);
  if (it == rc.parameters.end())
    throw UsageError("command '" + rc.command + "' requires --" + key);
  return it->second;
}

double get_double(const RunConfig& rc, const std::string& key, double fallback) {
  auto it = rc.parameters.find(key);
  return it == rc.parameters.end() ? fallback : ts::to_double(key, it->second);
}

long get_long(const RunConfig& rc, const std::string& key, long fallback) {
  auto it = rc.parameters.find(key);
  return it == rc.parameters.end() ? fallback : ts::to_long(key, it->second);
}

bool get_bool(const RunConfig& rc, const std::string& key, bool fallback) {
  auto it = rc.parameters.find(key);
  return it == rc.parameters.end() ? fallback : ts::to_bool(key, it->second);
}

std::vector<double> parse_list(const std::string& key, const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (token.empty()) continue;
    out.push_back(ts::to_double(key, token));
  }
  if (out.empty()) throw UsageError("'" + key + "' needs at least one value");
  return out;
}

std::vector<std::string> split_tokens(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ','))
    if (!token.empty()) out.push_back(token);
  return out;
}

// Emits payload (plus metadata) to rc.output_path or stdout. CSV payloads
// get a sidecar <out>.meta.json; JSON payloads embed the metadata.
void emit(const RunConfig& rc, const std::string& payload) {
  if (rc.format == "json") {
    const std::string full = ts::attach_metadata(payload, rc.parameters);
    if (rc.output_path.empty()) {
      std::cout << full;
    } else {
      ts::write_file_atomic(rc.output_path, full);
      log_info("wrote " + rc.output_path);
    }
    return;
  }
  if (rc.output_path.empty()) {
    std::cout << payload;
    return;
  }
  ts::write_file_atomic(rc.output_path, payload);
  ts::write_file_atomic(rc.output_path + ".meta.json",
                        ts::metadata_json(rc.parameters));
  log_info("wrote " + rc.output_path);
}

std::string with_temp_suffix(const std::string& path, const std::string& token) {
  const auto dot = path.find_last_of('.');
  const auto slash = path.find_last_of('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
    return path + "_T" + token;
  return path.substr(0, dot) + "_T" + token + path.substr(dot);
}

// ---------------------------------------------------------------------------
// commands

int run_maxent(const RunConfig& rc) {
  const std::string& system_path = require(rc, "system");
  std::ifstream in(system_path);
  if (!in) throw ts::Error(ts::errkind::io, "cannot open '" + system_path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  const ts::ObservableSystem sys = ts::system_from_json(buf.str());
  const std::vector<double> target = parse_list("target", require(rc, "target"));
  const ts::SolverOptions opts = ts::solver_from_config(rc.parameters);
  const ts::MaxEntSolution sol = ts::fit_multipliers(target, sys, opts);
  if (rc.format != "json") throw UsageError("maxent emits JSON; use --format json");
  emit(rc, ts::solution_to_json(sol));
  return 0;
}

int run_ideal(const RunConfig& rc) {
  const ts::GasParameters g = ts::gas_from_config(rc.parameters);
  const double t = ts::to_double("T", require(rc, "T"));
  const double p = ts::to_double("P", require(rc, "P"));
  const ts::EquilibriumPoint pt = ts::ideal_state(t, p, g);
  if (rc.format == "json")
    emit(rc, ts::equilibrium_to_json(pt));
  else
    emit(rc, ts::equilibrium_csv({pt}));
  return 0;
}

// Runs fn once per temperature; with --temps each temperature gets its own
// output file.
int sweep_temperatures(const RunConfig& rc,
                       const std::function<void(const RunConfig&, double)>& fn) {
  if (rc.parameters.count("temps")) {
    if (rc.parameters.count("T"))
      throw UsageError("give either --T or --temps, not both");
    if (rc.output_path.empty())
      throw UsageError("--temps requires --out so each temperature gets a file");
    for (const std::string& token : split_tokens(rc.parameters.at("temps"))) {
      RunConfig one = rc;
      one.parameters.erase("temps");
      one.parameters["T"] = token;
      one.output_path = with_temp_suffix(rc.output_path, token);
      one.parameters["out"] = one.output_path;
      fn(one, ts::to_double("T", token));
    }
    return 0;
  }
  fn(rc, ts::to_double("T", require(rc, "T")));
  return 0;
}

int run_vdw_isotherm(const RunConfig& rc) {
  return sweep_temperatures(rc, [&](const RunConfig& one, double t) {
    const ts::GasParameters g = ts::gas_from_config(one.parameters);
    const double bn = g.excluded_volume();
    double v_lo_default = bn > 0.0 ? 1.05 * bn : 0.1;
    double v_hi_default = bn > 0.0 ? 15.0 * bn : 10.0;
    const double v_lo = get_double(one, "v_lo", v_lo_default);
    const double v_hi = get_double(one, "v_hi", v_hi_default);
    const auto count = static_cast<std::size_t>(get_long(one, "count", 512));
    ts::Isotherm iso = ts::sample_isotherm(t, g, v_lo, v_hi, count);
    if (get_bool(one, "adjusted", false))
      iso = ts::maxwell_adjustment(iso, g).first;
    if (one.format != "csv")
      throw UsageError("vdw-isotherm emits CSV; use --format csv");
    emit(one, ts::isotherm_csv(iso));
  });
}

int run_vdw_maxwell(const RunConfig& rc) {
  return sweep_temperatures(rc, [&](const RunConfig& one, double t) {
    const ts::GasParameters g = ts::gas_from_config(one.parameters);
    const ts::MaxwellResult mr = ts::maxwell_pressure(t, g);
    if (mr.near_critical)
      log_warn("T is within 1e-9 of T_c; coexistence values are a best estimate");
    if (one.format != "json")
      throw UsageError("vdw-maxwell emits JSON; use --format json");
    emit(one, ts::maxwell_result_to_json(mr));
  });
}

int run_vdw_selector(const RunConfig& rc) {
  return sweep_temperatures(rc, [&](const RunConfig& one, double t) {
    const ts::GasParameters g = ts::gas_from_config(one.parameters);
    double p_ref_default = 1.0;
    if (g.a > 0.0 && g.b > 0.0)
      p_ref_default = 3.0 * ts::vdw_critical_point(g).P_c;
    const double p_ref = get_double(one, "P_ref", p_ref_default);
    const ts::GraphSelector sel = ts::graph_selector(t, g, p_ref);
    double p_min_default = 0.05 * p_ref;
    double p_max_default = p_ref;
    if (sel.has_coexistence())
      p_min_default = 0.3 * sel.coexistence().P_mx;
    const double p_min = get_double(one, "p_min", p_min_default);
    const double p_max = get_double(one, "p_max", p_max_default);
    const auto count = static_cast<std::size_t>(get_long(one, "count", 257));
    if (one.format != "csv")
      throw UsageError("vdw-selector emits CSV; use --format csv");
    emit(one, ts::selector_csv(sel, p_min, p_max, count));
  });
}

int run_transport(const RunConfig& rc) {
  const auto nq = static_cast<std::size_t>(get_long(rc, "nq", 256));
  const auto np = static_cast<std::size_t>(get_long(rc, "np", 256));
  const double q_min = get_double(rc, "q_min", 0.0);
  const double q_max = get_double(rc, "q_max", 1.0);
  const double p_min = get_double(rc, "p_min", -2.0);
  const double p_max = get_double(rc, "p_max", 2.0);
  const double t_final = get_double(rc, "t_final", 1.0);
  const long steps = get_long(rc, "steps", 100);
  const long stride = get_long(rc, "stride", 1);
  if (steps < 1 || stride < 1) throw UsageError("steps and stride must be >= 1");

  auto grid = std::make_shared<ts::PhaseGrid>(q_min, q_max, nq, p_min, p_max, np);
  const double q0 = get_double(rc, "q0", 0.5 * (q_min + q_max));
  const double p0 = get_double(rc, "p0", 0.5 * (p_min + p_max));
  const double sq = get_double(rc, "sigma_q", 0.08 * (q_max - q_min));
  const double sp = get_double(rc, "sigma_p", 0.12 * (p_max - p_min));

  std::vector<double> f0(grid->size());
  for (std::size_t j = 0; j < np; ++j) {
    for (std::size_t i = 0; i < nq; ++i) {
      const double dq = grid->q(i) - q0;
      const double dp = grid->p(j) - p0;
      f0[j * nq + i] =
          std::exp(-0.5 * dq * dq / (sq * sq) - 0.5 * dp * dp / (sp * sp));
    }
  }
  const double mass = ts::exact_sum(f0) * grid->cell_volume();
  for (double& v : f0) v /= mass;

  const double dt = t_final / static_cast<double>(steps);
  std::vector<ts::KineticState> kept;
  kept.emplace_back(grid, std::move(f0), 0.0);
  ts::KineticState current = kept.back();
  for (long k = 1; k <= steps; ++k) {
    current = ts::free_transport_step(current, dt);
    if (k % stride == 0 || k == steps) kept.push_back(current);
  }

  std::vector<double> p_field(grid->size()), p2_field(grid->size());
  for (std::size_t j = 0; j < np; ++j) {
    const double p = grid->p(j);
    for (std::size_t i = 0; i < nq; ++i) {
      p_field[j * nq + i] = p;
      p2_field[j * nq + i] = p * p;
    }
  }
  std::vector<ts::HamiltonianField> observables;
  observables.emplace_back(grid, std::move(p_field), "P");
  observables.emplace_back(grid, std::move(p2_field), "P2");
  const ts::ConservationReport report = ts::conservation_report(kept, observables);

  if (auto it = rc.parameters.find("dump_f"); it != rc.parameters.end()) {
    ts::write_file_atomic(it->second, ts::state_dump(kept.back()));
    log_info("wrote " + it->second);
  }
  if (rc.format != "csv") throw UsageError("transport emits CSV; use --format csv");
  emit(rc, ts::trajectory_csv(report));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  if (args.empty() || args[0] == "--help" || args[0] == "help") {
    std::cerr << kUsage;
    return args.empty() ? 2 : 0;
  }
  if (args[0] == "--version") {
    std::cout << ts::kToolName << " " << ts::kVersion << "\n";
    return 0;
  }

  const std::string command = args[0];
  args.erase(args.begin());
  try {
    std::string default_format = "csv";
    if (command == "maxent" || command == "ideal" || command == "vdw-maxwell")
      default_format = "json";
    const RunConfig rc = build_config(command, args, default_format);
    if (command == "maxent") return run_maxent(rc);
    if (command == "ideal") return run_ideal(rc);
    if (command == "vdw-isotherm") return run_vdw_isotherm(rc);
    if (command == "vdw-maxwell") return run_vdw_maxwell(rc);
    if (command == "vdw-selector") return run_vdw_selector(rc);
    if (command == "transport") return run_transport(rc);
    std::cerr << kUsage;
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "error: usage: " << e.what() << "\n" << kUsage;
    return 2;
  } catch (const ts::Error& e) {
    std::cerr << "error: " << e.kind() << ": "
              << std::string(e.what()).substr(e.kind().size() + 2) << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return 1;
  }
}
