#include "thermoscope/maxwell.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "thermoscope/error.hpp"
#include "thermoscope/numerics.hpp"

namespace thermoscope {

namespace {

// dP/dVeff = 0 is equivalent to spinodal_lhs(Veff) = N T with
// spinodal_lhs(Veff) = 2 a N^2 (Veff - bN)^2 / Veff^3, which is unimodal on
// (bN, inf) with its maximum N T_c at Veff = 3 bN.
double spinodal_lhs(double veff, const GasParameters& g) {
  const double n = g.N;
  const double d = veff - g.excluded_volume();
  return 2.0 * g.a * n * n * d * d / (veff * veff * veff);
}

double spinodal_lhs_deriv(double veff, const GasParameters& g) {
  const double n = g.N;
  const double bn = g.excluded_volume();
  const double d = veff - bn;
  return 2.0 * g.a * n * n * d * (3.0 * bn - veff) / std::pow(veff, 4);
}

double invert_branch(double p, double t, const GasParameters& g, double v_lo,
                     double v_hi) {
  auto fn = [&](double v) { return vdw_pressure(v, t, g) - p; };
  auto dfn = [&](double v) { return vdw_pressure_dv(v, t, g); };
  const double xtol = 1e-14 * std::max(1.0, std::abs(v_hi));
  return solve_bracketed(fn, dfn, v_lo, v_hi, xtol);
}

}  // namespace

Isotherm sample_isotherm(double t, const GasParameters& g, double v_lo,
                         double v_hi, std::size_t count) {
  g.validate();
  if (!(t > 0.0)) throw Error(errkind::domain, "isotherm requires T > 0");
  const double bn = g.excluded_volume();
  if (!(v_lo > bn) || !(v_hi > v_lo))
    throw Error(errkind::domain, "isotherm range must satisfy bN < v_lo < v_hi");
  if (count < 2) throw Error(errkind::input, "need at least two samples");
  Isotherm iso;
  iso.T = t;
  iso.params = g;
  iso.samples.resize(count);
  const double step = (v_hi - v_lo) / static_cast<double>(count - 1);
  for (std::size_t k = 0; k < count; ++k) {
    const double v = (k + 1 == count) ? v_hi : v_lo + step * static_cast<double>(k);
    iso.samples[k] = {v, vdw_pressure(v, t, g)};
  }
  return iso;
}

std::optional<std::pair<double, double>> spinodal(double t, const GasParameters& g) {
  g.validate();
  if (!(t > 0.0)) throw Error(errkind::domain, "spinodal requires T > 0");
  if (g.a == 0.0 || g.b == 0.0) return std::nullopt;

  const double bn = g.excluded_volume();
  const double peak = 3.0 * bn;
  const double lhs_max = spinodal_lhs(peak, g);
  const double nt = g.N * t;
  if (nt > lhs_max * (1.0 + 1e-14)) return std::nullopt;
  if (std::abs(nt - lhs_max) <= 1e-12 * lhs_max) return std::make_pair(peak, peak);

  auto fn = [&](double v) { return spinodal_lhs(v, g) - nt; };
  auto dfn = [&](double v) { return spinodal_lhs_deriv(v, g); };

  double left_lo = bn + 1e-13 * (peak - bn);
  while (fn(left_lo) > 0.0) left_lo = bn + 0.5 * (left_lo - bn);
  const double xtol = 1e-13 * peak;
  const double v_lo = solve_bracketed(fn, dfn, left_lo, peak, xtol);

  double right_hi = 2.0 * peak;
  while (fn(right_hi) > 0.0) right_hi *= 2.0;
  const double v_hi = solve_bracketed(fn, dfn, peak, right_hi, xtol);
  return std::make_pair(v_lo, v_hi);
}

BranchDecomposition decompose_branches(const Isotherm& iso) {
  const auto sp = spinodal(iso.T, iso.params);
  if (!sp)
    throw Error(errkind::domain,
                "no spinodal at or above the critical temperature");
  BranchDecomposition bd;
  bd.v_spinodal_lo = sp->first;
  bd.v_spinodal_hi = sp->second;
  for (const auto& s : iso.samples) {
    if (s.veff < bd.v_spinodal_lo)
      bd.branch_min.push_back(s);
    else if (s.veff > bd.v_spinodal_hi)
      bd.branch_max.push_back(s);
    else
      bd.branch_mid.push_back(s);
  }
  return bd;
}

namespace {

// Signed area between the isotherm and the horizontal line P = p_star,
// between the outer volume roots.
std::optional<double> equal_area(double p_star, double t, const GasParameters& g) {
  const auto roots = vdw_volume_roots(t, p_star, g);
  if (roots.size() < 2) return std::nullopt;
  const double v1 = roots.front();
  const double v3 = roots.back();
  const double integral = adaptive_gauss(
      [&](double v) { return vdw_pressure(v, t, g) - p_star; }, v1, v3, 1e-13);
  return integral;
}

}  // namespace

MaxwellResult maxwell_pressure(double t, const GasParameters& g) {
  g.validate();
  if (g.a == 0.0 || g.b == 0.0)
    throw Error(errkind::no_coexistence,
                "no coexistence without both a > 0 and b > 0");
  const CriticalPoint cp = vdw_critical_point(g);
  if (!(t < cp.T_c))
    throw Error(errkind::no_coexistence,
                "T = " + std::to_string(t) + " is not below T_c = " +
                    std::to_string(cp.T_c));

  MaxwellResult mr;
  mr.T = t;
  mr.near_critical = (cp.T_c - t) <= 1e-9 * cp.T_c;

  const auto sp = spinodal(t, g);
  if (!sp || sp->first == sp->second) {
    // Degenerate coexistence window; report the critical values as the
    // best estimate.
    mr.P_mx = vdw_pressure(cp.Veff_c, t, g);
    mr.V_liquid = mr.V_vapor = cp.Veff_c;
    mr.equal_area_residual = 0.0;
    mr.near_critical = true;
    return mr;
  }
  const double p_floor = vdw_pressure(sp->first, t, g);   // local minimum
  const double p_ceil = vdw_pressure(sp->second, t, g);   // local maximum
  double lo = std::max(0.0, p_floor);
  double hi = p_ceil;
  const double width = hi - lo;
  lo += 1e-12 * width;
  hi -= 1e-12 * width;

  auto signed_area = [&](double p_star) -> std::optional<double> {
    return equal_area(p_star, t, g);
  };

  // A is strictly decreasing on the bracket: positive near the floor,
  // negative near the ceiling.
  for (int iter = 0; iter < 200 && (hi - lo) > 1e-12 * width; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const auto a_mid = signed_area(mid);
    if (!a_mid) {
      // Root finding lost the outer pair; tighten away from the ceiling.
      hi = mid;
      continue;
    }
    if (*a_mid > 0.0)
      lo = mid;
    else
      hi = mid;
  }

  mr.P_mx = 0.5 * (lo + hi);
  const auto roots = vdw_volume_roots(t, mr.P_mx, g);
  if (roots.size() < 2)
    throw Error(errkind::no_coexistence, "coexistence roots collapsed");
  mr.V_liquid = roots.front();
  mr.V_vapor = roots.back();
  mr.equal_area_residual = signed_area(mr.P_mx).value_or(0.0);
  return mr;
}

GraphSelector::GraphSelector(double t, const GasParameters& g, double p_ref)
    : T_(t), params_(g), p_ref_(p_ref) {
  g.validate();
  if (!(t > 0.0)) throw Error(errkind::domain, "selector requires T > 0");
  if (!(p_ref > 0.0)) throw Error(errkind::anchor, "P_ref must be positive");

  bool subcritical = false;
  if (g.a > 0.0 && g.b > 0.0) {
    const CriticalPoint cp = vdw_critical_point(g);
    subcritical = t < cp.T_c;
  }
  if (subcritical) {
    MaxwellResult mr = maxwell_pressure(t, g);
    if (!(p_ref > mr.P_mx))
      throw Error(errkind::anchor,
                  "P_ref must exceed the Maxwell pressure " +
                      std::to_string(mr.P_mx));
    jump_ = mr.V_vapor - mr.V_liquid;
    coexistence_ = mr;
    value_at_pmx_ = liquid_piece(mr.P_mx);
    // Transport the anchor along the equilibrium curve through the unstable
    // branch: the increment equals minus the equal-area integral, so it
    // vanishes exactly when the equal-area law holds.
    const double curve_increment =
        mr.P_mx * (mr.V_vapor - mr.V_liquid) -
        adaptive_gauss([&](double v) { return vdw_pressure(v, T_, params_); },
                       mr.V_liquid, mr.V_vapor, 1e-13);
    glue_offset_ = curve_increment;
  }
}

GraphSelector graph_selector(double t, const GasParameters& g, double p_ref) {
  return GraphSelector(t, g, p_ref);
}

const MaxwellResult& GraphSelector::coexistence() const {
  if (!coexistence_)
    throw Error(errkind::no_coexistence, "selector has a single branch");
  return *coexistence_;
}

double GraphSelector::branch_volume(double p) const {
  if (!(p > 0.0)) throw Error(errkind::domain, "branch volume requires P > 0");
  const double bn = params_.excluded_volume();
  if (coexistence_ && p >= coexistence_->P_mx) {
    const auto sp = spinodal(T_, params_);
    double lo = bn + 1e-13 * (sp->first - bn);
    while (vdw_pressure(lo, T_, params_) < p) lo = bn + 0.5 * (lo - bn);
    return invert_branch(p, T_, params_, lo, sp->first);
  }
  double v_start = bn;
  if (coexistence_) {
    const auto sp = spinodal(T_, params_);
    v_start = sp->second;
  } else {
    v_start = bn + 1e-13 * std::max(1.0, bn);
    while (vdw_pressure(v_start, T_, params_) < p)
      v_start = bn + 0.5 * (v_start - bn);
  }
  double hi = std::max(2.0 * v_start, 2.0 * (bn + 1.0));
  while (vdw_pressure(hi, T_, params_) > p) hi *= 2.0;
  return invert_branch(p, T_, params_, v_start, hi);
}

double GraphSelector::liquid_piece(double p) const {
  return -adaptive_gauss([&](double q) { return branch_volume(q); }, p, p_ref_,
                         1e-13);
}

double GraphSelector::vapour_piece(double p) const {
  const double p_mx = coexistence_->P_mx;
  const double tail =
      adaptive_gauss([&](double q) { return branch_volume(q); }, p, p_mx, 1e-13);
  return value_at_pmx_ + glue_offset_ - tail;
}

double GraphSelector::value(double p) const {
  if (!(p > 0.0)) throw Error(errkind::domain, "selector value requires P > 0");
  if (!coexistence_ || p >= coexistence_->P_mx) return liquid_piece(p);
  return vapour_piece(p);
}

std::pair<Isotherm, CoexistenceSegment> maxwell_adjustment(const Isotherm& iso,
                                                           const MaxwellResult& mr) {
  if (std::abs(iso.T - mr.T) > 1e-12 * std::max(1.0, std::abs(iso.T)))
    throw Error(errkind::consistency,
                "isotherm and Maxwell result are at different temperatures");
  Isotherm adjusted = iso;
  for (auto& s : adjusted.samples) {
    if (s.veff > mr.V_liquid && s.veff < mr.V_vapor) s.pressure = mr.P_mx;
  }
  return {std::move(adjusted), {mr.P_mx, mr.V_liquid, mr.V_vapor}};
}

std::pair<Isotherm, CoexistenceSegment> maxwell_adjustment(const Isotherm& iso,
                                                           const GasParameters& g) {
  if (g.a > 0.0 && g.b > 0.0) {
    const CriticalPoint cp = vdw_critical_point(g);
    if (iso.T < cp.T_c) return maxwell_adjustment(iso, maxwell_pressure(iso.T, g));
  }
  return {iso, {0.0, 0.0, 0.0}};
}

std::vector<double> integrate_v_dp(const std::vector<IsothermSample>& samples) {
  std::vector<double> out(samples.size(), 0.0);
  for (std::size_t k = 1; k < samples.size(); ++k) {
    const double mean_v = 0.5 * (samples[k - 1].veff + samples[k].veff);
    out[k] = out[k - 1] + mean_v * (samples[k].pressure - samples[k - 1].pressure);
  }
  return out;
}

namespace {

// Linear interpolation through (x ascending, y) pairs.
double interp(const std::vector<std::pair<double, double>>& pts, double x) {
  auto it = std::lower_bound(
      pts.begin(), pts.end(), x,
      [](const std::pair<double, double>& a, double v) { return a.first < v; });
  if (it == pts.begin()) return it->second;
  if (it == pts.end()) return (it - 1)->second;
  const auto& [x1, y1] = *(it - 1);
  const auto& [x2, y2] = *it;
  if (x2 == x1) return y1;
  const double s = (x - x1) / (x2 - x1);
  return y1 + s * (y2 - y1);
}

}  // namespace

GibbsCurve gibbs_on_isotherm(const Isotherm& iso, const GasParameters& g) {
  if (iso.samples.size() < 64)
    throw Error(errkind::grid, "Gibbs integration needs >= 64 samples");
  GibbsCurve curve;
  const auto upsilon = integrate_v_dp(iso.samples);
  curve.points.resize(iso.samples.size());
  for (std::size_t k = 0; k < iso.samples.size(); ++k)
    curve.points[k] = {iso.samples[k].pressure, upsilon[k]};

  const auto sp = spinodal(iso.T, g);
  if (!sp || sp->first == sp->second) return curve;

  // Swallow-tail crossing of the two stable branches.
  std::vector<std::pair<double, double>> liquid, vapour;
  for (std::size_t k = 0; k < iso.samples.size(); ++k) {
    const auto& s = iso.samples[k];
    if (s.veff < sp->first) liquid.push_back({s.pressure, upsilon[k]});
    if (s.veff > sp->second) vapour.push_back({s.pressure, upsilon[k]});
  }
  if (liquid.size() < 2 || vapour.size() < 2) return curve;
  std::sort(liquid.begin(), liquid.end());
  std::sort(vapour.begin(), vapour.end());

  const double lo = std::max(liquid.front().first, vapour.front().first);
  const double hi = std::min(liquid.back().first, vapour.back().first);
  if (!(hi > lo)) return curve;

  auto gap = [&](double p) { return interp(liquid, p) - interp(vapour, p); };
  double glo = gap(lo), ghi = gap(hi);
  if ((glo > 0.0) == (ghi > 0.0)) return curve;
  double a = lo, b = hi;
  for (int iter = 0; iter < 200 && (b - a) > 1e-15 * std::max(1.0, b); ++iter) {
    const double mid = 0.5 * (a + b);
    const double gm = gap(mid);
    if ((gm > 0.0) == (glo > 0.0)) {
      a = mid;
      glo = gm;
    } else {
      b = mid;
    }
  }
  curve.crossing_pressure = 0.5 * (a + b);
  return curve;
}

}  // namespace thermoscope
