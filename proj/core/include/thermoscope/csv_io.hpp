#ifndef THERMOSCOPE_CSV_IO_HPP
#define THERMOSCOPE_CSV_IO_HPP

#include <string>
#include <vector>

#include "thermoscope/gas_models.hpp"
#include "thermoscope/kinetic.hpp"
#include "thermoscope/maxwell.hpp"

namespace thermoscope {

/// All CSV emission prints floats with 17 significant digits so reruns are
/// byte-stable and values round-trip.
std::string format_double(double v);

/// Header "Veff,P", one row per sample.
std::string isotherm_csv(const Isotherm& iso);

/// Header "P,fT,dfTdP,branch" with branch in {liquid, vapour, cliff}. The
/// selector is sampled on [p_min, p_max]; at the Maxwell pressure the two
/// cliff rows carry the one-sided derivatives.
std::string selector_csv(const GraphSelector& sel, double p_min, double p_max,
                         std::size_t count);

/// Header "t,mass,entropy,meanP,meanP2"; expects the report's first two
/// observables to be P and P^2.
std::string trajectory_csv(const ConservationReport& report);

/// Header "U,V,T,P,S,Upsilon", one row per point.
std::string equilibrium_csv(const std::vector<EquilibriumPoint>& points);

/// Binary dump of f: 16-byte header (magic "KTPS0001", two little-endian
/// uint32 grid sizes nq, np) followed by row-major 64-bit floats.
std::vector<unsigned char> state_dump(const KineticState& state);

/// Writes content to path atomically (temp file in the same directory, then
/// rename).
void write_file_atomic(const std::string& path, const std::string& content);
void write_file_atomic(const std::string& path,
                       const std::vector<unsigned char>& content);

}  // namespace thermoscope

#endif
