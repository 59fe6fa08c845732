#ifndef THERMOSCOPE_JSON_IO_HPP
#define THERMOSCOPE_JSON_IO_HPP

#include <string>

#include "thermoscope/config.hpp"
#include "thermoscope/gas_models.hpp"
#include "thermoscope/maxent.hpp"
#include "thermoscope/maxwell.hpp"
#include "thermoscope/measure.hpp"

namespace thermoscope {

/// {"dim": d, "nodes": [[...]], "weights": [...], "values": [...]} with the
/// field order fixed as listed.
std::string density_to_json(const Density& rho);
Density density_from_json(const std::string& text);

/// {"lambda": [...], "w": r, "moments": [...], "entropy": r,
///  "covariance": [[...]]}.
std::string solution_to_json(const MaxEntSolution& sol);

/// {"T": r, "P_mx": r, "V_liquid": r, "V_vapor": r, "residual": r}.
std::string maxwell_result_to_json(const MaxwellResult& mr);

/// {"U","V","T","P","S","Upsilon"} in CSV-header order.
std::string equilibrium_to_json(const EquilibriumPoint& pt);

/// Observable system from {"dim","nodes","weights","observables":
/// [{"label","values"},...]}.
ObservableSystem system_from_json(const std::string& text);

/// Appends {"config": {...}, "version": "..."} members to a JSON object
/// document and re-serializes it (two-space indent, trailing newline).
std::string attach_metadata(const std::string& json_object,
                            const KeyValueMap& merged_config);

/// Standalone metadata document for CSV sidecars.
std::string metadata_json(const KeyValueMap& merged_config);

}  // namespace thermoscope

#endif
