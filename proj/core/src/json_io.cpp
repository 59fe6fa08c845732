#include "thermoscope/json_io.hpp"

#include <json.hpp>

#include "thermoscope/error.hpp"
#include "thermoscope/version.hpp"

namespace thermoscope {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json parse(const std::string& text) {
  ordered_json j = ordered_json::parse(text, nullptr, false);
  if (j.is_discarded()) throw Error(errkind::input, "malformed JSON document");
  return j;
}

std::shared_ptr<const QuadratureMeasure> measure_from(const ordered_json& j) {
  if (!j.contains("dim") || !j.contains("nodes") || !j.contains("weights"))
    throw Error(errkind::input, "measure JSON needs dim, nodes and weights");
  const int dim = j.at("dim").get<int>();
  const auto& nodes = j.at("nodes");
  const auto weights = j.at("weights").get<std::vector<double>>();
  std::vector<double> coords;
  coords.reserve(weights.size() * dim);
  for (const auto& node : nodes) {
    if (node.size() != static_cast<std::size_t>(dim))
      throw Error(errkind::dimension, "node arity does not match dim");
    for (const auto& c : node) coords.push_back(c.get<double>());
  }
  return std::make_shared<QuadratureMeasure>(std::move(coords), weights, dim);
}

ordered_json measure_to(const QuadratureMeasure& m) {
  ordered_json j;
  j["dim"] = m.dim();
  ordered_json nodes = ordered_json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    ordered_json node = ordered_json::array();
    for (double c : m.node(i)) node.push_back(c);
    nodes.push_back(std::move(node));
  }
  j["nodes"] = std::move(nodes);
  j["weights"] = std::vector<double>(m.weights().begin(), m.weights().end());
  return j;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string density_to_json(const Density& rho) {
  ordered_json j = measure_to(rho.measure());
  j["values"] = std::vector<double>(rho.values().begin(), rho.values().end());
  return dump(j);
}

Density density_from_json(const std::string& text) {
  const ordered_json j = parse(text);
  auto m = measure_from(j);
  if (!j.contains("values"))
    throw Error(errkind::input, "density JSON needs values");
  return Density(j.at("values").get<std::vector<double>>(), std::move(m));
}

std::string solution_to_json(const MaxEntSolution& sol) {
  ordered_json j;
  j["lambda"] = sol.lambda;
  j["w"] = sol.log_partition;
  j["moments"] = sol.moments;
  j["entropy"] = sol.entropy;
  const int n = static_cast<int>(sol.lambda.size());
  ordered_json cov = ordered_json::array();
  for (int r = 0; r < n; ++r) {
    ordered_json row = ordered_json::array();
    for (int c = 0; c < n; ++c) row.push_back(sol.covariance[r * n + c]);
    cov.push_back(std::move(row));
  }
  j["covariance"] = std::move(cov);
  return dump(j);
}

std::string maxwell_result_to_json(const MaxwellResult& mr) {
  ordered_json j;
  j["T"] = mr.T;
  j["P_mx"] = mr.P_mx;
  j["V_liquid"] = mr.V_liquid;
  j["V_vapor"] = mr.V_vapor;
  j["residual"] = mr.equal_area_residual;
  return dump(j);
}

std::string equilibrium_to_json(const EquilibriumPoint& pt) {
  ordered_json j;
  j["U"] = pt.U;
  j["V"] = pt.V;
  j["T"] = pt.T;
  j["P"] = pt.P;
  j["S"] = pt.S;
  j["Upsilon"] = pt.gibbs_free_energy;
  return dump(j);
}

ObservableSystem system_from_json(const std::string& text) {
  const ordered_json j = parse(text);
  auto m = measure_from(j);
  if (!j.contains("observables") || !j.at("observables").is_array() ||
      j.at("observables").empty())
    throw Error(errkind::input, "system JSON needs a non-empty observables array");
  std::vector<Observable> obs;
  for (const auto& o : j.at("observables")) {
    obs.emplace_back(o.value("label", std::string("F")),
                     o.at("values").get<std::vector<double>>());
  }
  return ObservableSystem(std::move(m), std::move(obs));
}

namespace {

ordered_json metadata_object(const KeyValueMap& merged_config) {
  ordered_json cfg = ordered_json::object();
  for (const auto& [key, value] : merged_config) cfg[key] = value;
  ordered_json j;
  j["config"] = std::move(cfg);
  j["version"] = kVersion;
  return j;
}

}  // namespace

std::string attach_metadata(const std::string& json_object,
                            const KeyValueMap& merged_config) {
  ordered_json j = parse(json_object);
  if (!j.is_object())
    throw Error(errkind::input, "metadata can only be attached to an object");
  const ordered_json meta = metadata_object(merged_config);
  j["config"] = meta.at("config");
  j["version"] = meta.at("version");
  return dump(j);
}

std::string metadata_json(const KeyValueMap& merged_config) {
  return dump(metadata_object(merged_config));
}

}  // namespace thermoscope
