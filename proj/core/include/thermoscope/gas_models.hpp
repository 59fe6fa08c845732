#ifndef THERMOSCOPE_GAS_MODELS_HPP
#define THERMOSCOPE_GAS_MODELS_HPP

#include <memory>
#include <vector>

#include "thermoscope/maxent.hpp"
#include "thermoscope/measure.hpp"

namespace thermoscope {

/// Gas model parameters. Units are dimensionless with k_B = 1; C converts
/// the piston height h to the container volume Veff = C h, a and b are the
/// van der Waals attraction and per-particle excluded volume.
struct GasParameters {
  int N = 1;
  double m = 1.0;
  double C = 1.0;
  double a = 0.0;
  double b = 0.0;

  void validate() const;
  double excluded_volume() const { return b * static_cast<double>(N); }
};

/// One point (U, V, T, P, S) of the thermodynamic equilibrium manifold plus
/// the Gibbs free energy Upsilon = U + P V - T S.
struct EquilibriumPoint {
  double U = 0.0;
  double V = 0.0;
  double T = 0.0;
  double P = 0.0;
  double S = 0.0;
  double gibbs_free_energy = 0.0;
};

/// Monic cubic Veff^3 + alpha Veff^2 + beta Veff + gamma = 0 together with
/// its discriminant.
struct CubicCoefficients {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double discriminant = 0.0;
};

struct CriticalPoint {
  double T_c = 0.0;
  double P_c = 0.0;
  double Veff_c = 0.0;
};

/// Rectangular 2-parameter patch of equilibrium points, row-major.
struct EquilibriumPatch {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<EquilibriumPoint> points;

  const EquilibriumPoint& at(std::size_t r, std::size_t c) const {
    return points[r * cols + c];
  }
};

// Ideal gas closed forms.

/// U = -3N / (2 lambda1), the energy realized by the multiplier lambda1 < 0.
double ideal_energy_from_lambda(double lambda1, const GasParameters& g);

/// V = -(N+1) / lambda2 for lambda2 < 0.
double ideal_volume_from_lambda(double lambda2, const GasParameters& g);

/// Log-partition w(lambda1, lambda2) of the ideal gas,
/// (3N/2) log(-2 pi m / lambda1) + (N+1) log(-1/(lambda2 C)) + log N! + N log 2 pi.
double ideal_log_partition(double lambda1, double lambda2, const GasParameters& g);

/// Entropy potential S(U, V) = w(lambda1, lambda2) - lambda1 U - lambda2 V
/// under lambda1 = -3N/(2U), lambda2 = -(N+1)/V.
double ideal_entropy(double u, double v, const GasParameters& g);

/// Full equilibrium point from (T, P): U = (3/2) N T, V = (N+1) T / P.
EquilibriumPoint ideal_state(double t, double p, const GasParameters& g);

// Van der Waals closed forms. Veff is the container volume V + N b.

/// P = -a N^2 / Veff^2 + N T / (Veff - b N); requires Veff > b N.
double vdw_pressure(double veff, double t, const GasParameters& g);

/// dP/dVeff at fixed T.
double vdw_pressure_dv(double veff, double t, const GasParameters& g);

/// U = (3/2) N T - a N^2 / Veff^2; requires Veff > 0.
double vdw_energy(double veff, double t, const GasParameters& g);

/// Discriminant 18 a b g - 4 a^3 g + a^2 b^2 - 4 b^3 - 27 g^2 of the monic
/// cubic x^3 + a x^2 + b x + g.
double cubic_discriminant(double alpha, double beta, double gamma);

/// Coefficients of the cubic in Veff equivalent to P = vdw_pressure(Veff, T).
CubicCoefficients vdw_cubic(double t, double p, const GasParameters& g);

/// Real roots Veff > b N of the cubic, ascending. 1 or 3 roots; 2 only at a
/// tangency (two roots agreeing within 1e-7 relative are merged).
std::vector<double> vdw_volume_roots(double t, double p, const GasParameters& g);

/// Critical point Veff_c = 3 b N, T_c = 8a/(27 b), P_c = a/(27 b^2), verified
/// internally against dP/dV = d2P/dV2 = 0. Requires a > 0 and b > 0.
CriticalPoint vdw_critical_point(const GasParameters& g);

/// Conjugate-variable change (lambda_U, lambda_V) -> (lambda_X, lambda_Y) for
/// the container-volume/kinetic-energy observables:
/// lambda_X = lambda_V + a N^2 lambda_U / (V + N b)^2, lambda_Y = lambda_U.
std::pair<double, double> vdw_multiplier_transform(double lambda_u, double lambda_v,
                                                   double v, const GasParameters& g);

/// Max over interior grid points and both parameter directions of the
/// first-law residual |dS - (1/T) dU - (P/T) dV| under central differences.
double contact_residual(const EquilibriumPatch& patch);

// Analytically reduced reference measures for cross-checking the closed
// forms against the generic maxent solver. The high-dimensional momentum and
// height integrals collapse to 1-D quadratures in the kinetic energy E
// (density (2 pi m)^{3N/2} / Gamma(3N/2) E^{3N/2 - 1}, integrated with the
// substitution E = t^2) and in h (density (2 pi h)^N).

/// 1-D quadrature in E on (0, e_max] carrying the reduced momentum measure.
QuadratureMeasure reduced_energy_measure(const GasParameters& g, double e_max,
                                         int points);

/// 1-D quadrature in h on (0, h_max] carrying the reduced height measure.
QuadratureMeasure reduced_height_measure(const GasParameters& g, double h_max,
                                         int points);

/// Tensor-product system {kinetic energy, Lambda-volume} on the reduced
/// 2-D quadrature; observable values are E and C h.
ObservableSystem reduced_ideal_system(const GasParameters& g, double e_max,
                                      double h_max, int e_points, int h_points);

}  // namespace thermoscope

#endif
