#include "thermoscope/csv_io.hpp"

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "thermoscope/error.hpp"

namespace thermoscope {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string isotherm_csv(const Isotherm& iso) {
  std::string out = "Veff,P\n";
  for (const auto& s : iso.samples) {
    out += format_double(s.veff);
    out += ',';
    out += format_double(s.pressure);
    out += '\n';
  }
  return out;
}

std::string selector_csv(const GraphSelector& sel, double p_min, double p_max,
                         std::size_t count) {
  if (!(p_max > p_min) || count < 2)
    throw Error(errkind::input, "selector CSV needs p_max > p_min and count >= 2");
  std::string out = "P,fT,dfTdP,branch\n";
  const bool coex = sel.has_coexistence();
  const double p_mx = coex ? sel.coexistence().P_mx : 0.0;
  auto emit = [&](double p, const char* branch, double dfdp) {
    out += format_double(p);
    out += ',';
    out += format_double(sel.value(p));
    out += ',';
    out += format_double(dfdp);
    out += ',';
    out += branch;
    out += '\n';
  };
  const double step = (p_max - p_min) / static_cast<double>(count - 1);
  bool cliff_emitted = false;
  for (std::size_t k = 0; k < count; ++k) {
    const double p = (k + 1 == count) ? p_max : p_min + step * static_cast<double>(k);
    if (coex && !cliff_emitted && p >= p_mx && p_mx >= p_min) {
      // Two rows mark the derivative jump across the Maxwell pressure.
      emit(p_mx, "cliff", sel.coexistence().V_vapor);
      emit(p_mx, "cliff", sel.coexistence().V_liquid);
      cliff_emitted = true;
      if (p == p_mx) continue;
    }
    const char* branch = coex ? (p > p_mx ? "liquid" : "vapour") : "vapour";
    emit(p, branch, sel.branch_volume(p));
  }
  return out;
}

std::string trajectory_csv(const ConservationReport& report) {
  std::string out = "t,mass,entropy,meanP,meanP2\n";
  for (const auto& snap : report.snapshots) {
    out += format_double(snap.t);
    out += ',';
    out += format_double(snap.mass);
    out += ',';
    out += format_double(snap.entropy);
    for (std::size_t i = 0; i < 2 && i < snap.moments.size(); ++i) {
      out += ',';
      out += format_double(snap.moments[i]);
    }
    out += '\n';
  }
  return out;
}

std::string equilibrium_csv(const std::vector<EquilibriumPoint>& points) {
  std::string out = "U,V,T,P,S,Upsilon\n";
  for (const auto& pt : points) {
    out += format_double(pt.U);
    out += ',';
    out += format_double(pt.V);
    out += ',';
    out += format_double(pt.T);
    out += ',';
    out += format_double(pt.P);
    out += ',';
    out += format_double(pt.S);
    out += ',';
    out += format_double(pt.gibbs_free_energy);
    out += '\n';
  }
  return out;
}

std::vector<unsigned char> state_dump(const KineticState& state) {
  std::vector<unsigned char> out;
  out.reserve(16 + state.f().size() * sizeof(double));
  for (char c : {'K', 'T', 'P', 'S', '0', '0', '0', '1'})
    out.push_back(static_cast<unsigned char>(c));
  auto push_u32 = [&](std::uint32_t v) {
    for (int k = 0; k < 4; ++k) out.push_back((v >> (8 * k)) & 0xff);
  };
  push_u32(static_cast<std::uint32_t>(state.grid().nq()));
  push_u32(static_cast<std::uint32_t>(state.grid().np()));
  for (double v : state.f()) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof(bits));
    for (int k = 0; k < 8; ++k) out.push_back((bits >> (8 * k)) & 0xff);
  }
  return out;
}

namespace {

void rename_into_place(const std::string& tmp, const std::string& path) {
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw Error(errkind::io, "cannot move output into place at '" + path + "'");
  }
}

}  // namespace

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(errkind::io, "cannot open '" + tmp + "' for writing");
    out << content;
    if (!out.good()) throw Error(errkind::io, "short write to '" + tmp + "'");
  }
  rename_into_place(tmp, path);
}

void write_file_atomic(const std::string& path,
                       const std::vector<unsigned char>& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(errkind::io, "cannot open '" + tmp + "' for writing");
    out.write(reinterpret_cast<const char*>(content.data()),
              static_cast<std::streamsize>(content.size()));
    if (!out.good()) throw Error(errkind::io, "short write to '" + tmp + "'");
  }
  rename_into_place(tmp, path);
}

}  // namespace thermoscope
