#ifndef THERMOSCOPE_MAXWELL_HPP
#define THERMOSCOPE_MAXWELL_HPP

#include <optional>
#include <utility>
#include <vector>

#include "thermoscope/gas_models.hpp"

namespace thermoscope {

struct IsothermSample {
  double veff = 0.0;
  double pressure = 0.0;
};

/// A sampled van der Waals isotherm: (Veff, P) pairs with Veff strictly
/// increasing, all Veff > b N.
struct Isotherm {
  double T = 0.0;
  std::vector<IsothermSample> samples;
  GasParameters params;
};

/// Split of a subcritical isotherm at the spinodal volumes: the stable
/// liquid branch (V < v_spinodal_lo), the unstable middle branch, and the
/// stable vapour branch (V > v_spinodal_hi).
struct BranchDecomposition {
  double v_spinodal_lo = 0.0;
  double v_spinodal_hi = 0.0;
  std::vector<IsothermSample> branch_min;
  std::vector<IsothermSample> branch_mid;
  std::vector<IsothermSample> branch_max;
};

/// Coexistence data at one temperature: the Maxwell pressure, the outer
/// volumes it connects and the re-integrated equal-area residual.
struct MaxwellResult {
  double T = 0.0;
  double P_mx = 0.0;
  double V_liquid = 0.0;
  double V_vapor = 0.0;
  double equal_area_residual = 0.0;
  bool near_critical = false;
};

struct CoexistenceSegment {
  double P_mx = 0.0;
  double V_liquid = 0.0;
  double V_vapor = 0.0;
};

/// Gibbs free energy along an isotherm, anchored to 0 at the first sample.
/// For a subcritical isotherm whose samples straddle both spinodals, the
/// swallow-tail crossing of the two stable branches is reported as an
/// independent estimate of the Maxwell pressure.
struct GibbsCurve {
  std::vector<std::pair<double, double>> points;  // (P, Upsilon) per sample
  std::optional<double> crossing_pressure;
};

/// Single-valued thermodynamic potential f_T(P) across the phase transition:
/// the liquid-branch piece on P >= P_mx and the vapour-branch piece on
/// P < P_mx, glued by integrating along the equilibrium curve. Continuity at
/// P_mx is a consequence of the equal-area law and is measured, not assumed.
class GraphSelector {
public:
  GraphSelector(double t, const GasParameters& g, double p_ref);

  double temperature() const { return T_; }
  double anchor_pressure() const { return p_ref_; }
  bool has_coexistence() const { return coexistence_.has_value(); }
  const MaxwellResult& coexistence() const;

  /// Jump of df_T/dP across P_mx: V_vapor - V_liquid (0 when supercritical).
  double jump() const { return jump_; }

  /// Two-sided gap |f_T(P_mx+) - f_T(P_mx-)|; ~0 by the equal-area law.
  double continuity_gap() const { return std::abs(glue_offset_); }

  /// Potential value by cumulative integration from the anchor.
  double value(double p) const;

  /// Branch volume at pressure p, i.e. the derivative of the potential away
  /// from P_mx (the liquid branch for p >= P_mx, vapour below).
  double branch_volume(double p) const;

private:
  double liquid_piece(double p) const;
  double vapour_piece(double p) const;

  double T_ = 0.0;
  GasParameters params_;
  double p_ref_ = 0.0;
  std::optional<MaxwellResult> coexistence_;
  double jump_ = 0.0;
  double value_at_pmx_ = 0.0;  // liquid-side value at P_mx
  double glue_offset_ = 0.0;   // along-the-curve increment; 0 iff equal area
};

/// Uniformly spaced (Veff, P) samples of the isotherm at temperature T.
Isotherm sample_isotherm(double t, const GasParameters& g, double v_lo,
                         double v_hi, std::size_t count);

/// The two roots of dP/dVeff = 0 for T < T_c (none at or above T_c except
/// for the coalesced pair returned exactly at T_c).
std::optional<std::pair<double, double>> spinodal(double t, const GasParameters& g);

/// Splits an isotherm at the spinodal volumes; requires T < T_c.
BranchDecomposition decompose_branches(const Isotherm& iso);

/// Maxwell pressure by bisection on the equal-area function
/// A(P*) = integral_{V1}^{V3} (P(Veff) - P*) dVeff between the spinodal
/// pressures; the inner integral uses an adaptive Gauss rule.
MaxwellResult maxwell_pressure(double t, const GasParameters& g);

/// Continuous selector potential; requires P_ref above the Maxwell pressure.
GraphSelector graph_selector(double t, const GasParameters& g, double p_ref);

/// Replaces samples inside (V_liquid, V_vapor) by the horizontal coexistence
/// segment P = P_mx. Idempotent.
std::pair<Isotherm, CoexistenceSegment> maxwell_adjustment(const Isotherm& iso,
                                                           const MaxwellResult& mr);

/// Convenience overload: identity on the isotherm when T >= T_c.
std::pair<Isotherm, CoexistenceSegment> maxwell_adjustment(const Isotherm& iso,
                                                           const GasParameters& g);

/// Upsilon(P) along the isotherm by trapezoid integration of dUpsilon = V dP
/// at fixed T, anchored to 0 at the first sample; needs >= 64 samples.
GibbsCurve gibbs_on_isotherm(const Isotherm& iso, const GasParameters& g);

/// Cumulative trapezoid of V dP over arbitrary (V, P) samples.
std::vector<double> integrate_v_dp(const std::vector<IsothermSample>& samples);

}  // namespace thermoscope

#endif
