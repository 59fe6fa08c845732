#include "thermoscope/gas_models.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "thermoscope/error.hpp"
#include "thermoscope/numerics.hpp"

namespace thermoscope {

void GasParameters::validate() const {
  if (N < 1) throw Error(errkind::input, "gas.N must be >= 1");
  if (!(m > 0.0)) throw Error(errkind::input, "gas.m must be positive");
  if (!(C > 0.0)) throw Error(errkind::input, "gas.C must be positive");
  if (a < 0.0 || b < 0.0) throw Error(errkind::input, "gas.a and gas.b must be >= 0");
}

double ideal_energy_from_lambda(double lambda1, const GasParameters& g) {
  g.validate();
  if (!(lambda1 < 0.0))
    throw Error(errkind::domain, "lambda1 must be negative (divergent integral)");
  return -1.5 * g.N / lambda1;
}

double ideal_volume_from_lambda(double lambda2, const GasParameters& g) {
  g.validate();
  if (!(lambda2 < 0.0))
    throw Error(errkind::domain, "lambda2 must be negative (divergent integral)");
  return -(g.N + 1.0) / lambda2;
}

double ideal_log_partition(double lambda1, double lambda2, const GasParameters& g) {
  g.validate();
  if (!(lambda1 < 0.0) || !(lambda2 < 0.0))
    throw Error(errkind::domain, "multipliers must be negative (divergent integral)");
  const double n = g.N;
  return 1.5 * n * std::log(-2.0 * M_PI * g.m / lambda1) +
         (n + 1.0) * std::log(-1.0 / (lambda2 * g.C)) + std::lgamma(n + 1.0) +
         n * std::log(2.0 * M_PI);
}

double ideal_entropy(double u, double v, const GasParameters& g) {
  g.validate();
  if (!(u > 0.0) || !(v > 0.0))
    throw Error(errkind::domain, "entropy potential requires U > 0 and V > 0");
  const double n = g.N;
  // Legendre dual of the log-partition: w(lambda) - lambda1 U - lambda2 V at
  // lambda1 = -3N/(2U), lambda2 = -(N+1)/V; the dual terms contribute the
  // constants 3N/2 and N+1.
  return 1.5 * n * std::log(4.0 * M_PI * g.m * u / (3.0 * n)) +
         (n + 1.0) * std::log(v / (g.C * (n + 1.0))) + std::lgamma(n + 1.0) +
         n * std::log(2.0 * M_PI) + 1.5 * n + (n + 1.0);
}

EquilibriumPoint ideal_state(double t, double p, const GasParameters& g) {
  g.validate();
  if (!(t > 0.0) || !(p > 0.0))
    throw Error(errkind::domain, "ideal_state requires T > 0 and P > 0");
  EquilibriumPoint pt;
  pt.T = t;
  pt.P = p;
  pt.U = 1.5 * g.N * t;
  pt.V = (g.N + 1.0) * t / p;
  pt.S = ideal_entropy(pt.U, pt.V, g);
  pt.gibbs_free_energy = pt.U + pt.P * pt.V - pt.T * pt.S;
  return pt;
}

double vdw_pressure(double veff, double t, const GasParameters& g) {
  g.validate();
  if (!(t > 0.0)) throw Error(errkind::domain, "vdw_pressure requires T > 0");
  const double bn = g.excluded_volume();
  if (!(veff > bn))
    throw Error(errkind::excluded_volume,
                "Veff = " + std::to_string(veff) + " must exceed bN = " +
                    std::to_string(bn));
  const double n = g.N;
  return -g.a * n * n / (veff * veff) + n * t / (veff - bn);
}

double vdw_pressure_dv(double veff, double t, const GasParameters& g) {
  g.validate();
  const double bn = g.excluded_volume();
  if (!(veff > bn))
    throw Error(errkind::excluded_volume, "Veff must exceed bN");
  const double n = g.N;
  const double d = veff - bn;
  return 2.0 * g.a * n * n / (veff * veff * veff) - n * t / (d * d);
}

double vdw_energy(double veff, double t, const GasParameters& g) {
  g.validate();
  if (!(veff > 0.0)) throw Error(errkind::domain, "vdw_energy requires Veff > 0");
  const double n = g.N;
  return 1.5 * n * t - g.a * n * n / (veff * veff);
}

double cubic_discriminant(double alpha, double beta, double gamma) {
  return 18.0 * alpha * beta * gamma - 4.0 * alpha * alpha * alpha * gamma +
         alpha * alpha * beta * beta - 4.0 * beta * beta * beta -
         27.0 * gamma * gamma;
}

CubicCoefficients vdw_cubic(double t, double p, const GasParameters& g) {
  g.validate();
  if (!(t > 0.0) || !(p > 0.0))
    throw Error(errkind::domain, "vdw_cubic requires T > 0 and P > 0");
  const double n = g.N;
  CubicCoefficients c;
  c.alpha = -(g.b * n + n * t / p);
  c.beta = g.a * n * n / p;
  c.gamma = -g.a * g.b * n * n * n / p;
  c.discriminant = cubic_discriminant(c.alpha, c.beta, c.gamma);
  return c;
}

namespace {

double eval_cubic(const CubicCoefficients& c, double x) {
  return ((x + c.alpha) * x + c.beta) * x + c.gamma;
}

double eval_cubic_deriv(const CubicCoefficients& c, double x) {
  return (3.0 * x + 2.0 * c.alpha) * x + c.beta;
}

}  // namespace

std::vector<double> vdw_volume_roots(double t, double p, const GasParameters& g) {
  const CubicCoefficients c = vdw_cubic(t, p, g);
  const double bn = g.excluded_volume();

  // Root bound: all real roots lie within the Cauchy bound.
  const double bound =
      1.0 + std::max({std::abs(c.alpha), std::abs(c.beta), std::abs(c.gamma)});

  // Stationary points of the cubic split (bn, bound] into monotone pieces.
  std::vector<double> cuts;
  cuts.push_back(bn);
  const double qa = 3.0, qb = 2.0 * c.alpha, qc = c.beta;
  const double disc = qb * qb - 4.0 * qa * qc;
  if (disc > 0.0) {
    const double s = std::sqrt(disc);
    const double r1 = (-qb - s) / (2.0 * qa);
    const double r2 = (-qb + s) / (2.0 * qa);
    for (double r : {std::min(r1, r2), std::max(r1, r2)})
      if (r > bn && r < bound) cuts.push_back(r);
  }
  cuts.push_back(std::max(bound, bn + 1.0));

  std::vector<double> roots;
  auto fn = [&](double x) { return eval_cubic(c, x); };
  auto dfn = [&](double x) { return eval_cubic_deriv(c, x); };
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double lo = cuts[k];
    const double hi = cuts[k + 1];
    const double flo = fn(lo);
    const double fhi = fn(hi);
    if (flo == 0.0 && lo > bn) {
      roots.push_back(lo);
      continue;
    }
    if ((flo > 0.0) != (fhi > 0.0)) {
      const double xtol = 1e-15 * std::max(1.0, std::abs(hi));
      roots.push_back(solve_bracketed(fn, dfn, lo, hi, xtol));
    }
  }
  if (fn(cuts.back()) == 0.0) roots.push_back(cuts.back());

  std::sort(roots.begin(), roots.end());
  // Merge tangency pairs: two roots agreeing within 1e-7 relative count once.
  std::vector<double> merged;
  for (double r : roots) {
    if (!merged.empty() && std::abs(r - merged.back()) <= 1e-7 * std::abs(r))
      continue;
    merged.push_back(r);
  }
  return merged;
}

CriticalPoint vdw_critical_point(const GasParameters& g) {
  g.validate();
  if (!(g.a > 0.0) || !(g.b > 0.0))
    throw Error(errkind::no_critical_point,
                "critical point requires a > 0 and b > 0");
  CriticalPoint cp;
  cp.Veff_c = 3.0 * g.b * g.N;
  cp.T_c = 8.0 * g.a / (27.0 * g.b);
  cp.P_c = g.a / (27.0 * g.b * g.b);

  // Both stationarity conditions must hold at the closed forms.
  const double n = g.N;
  const double d = cp.Veff_c - g.excluded_volume();
  const double dp = 2.0 * g.a * n * n / std::pow(cp.Veff_c, 3) - n * cp.T_c / (d * d);
  const double d2p =
      -6.0 * g.a * n * n / std::pow(cp.Veff_c, 4) + 2.0 * n * cp.T_c / (d * d * d);
  const double dp_scale = 2.0 * g.a * n * n / std::pow(cp.Veff_c, 3);
  const double d2p_scale = 6.0 * g.a * n * n / std::pow(cp.Veff_c, 4);
  if (std::abs(dp) > 1e-10 * dp_scale || std::abs(d2p) > 1e-10 * d2p_scale)
    throw Error(errkind::domain, "critical point failed the stationarity check");
  return cp;
}

std::pair<double, double> vdw_multiplier_transform(double lambda_u, double lambda_v,
                                                   double v, const GasParameters& g) {
  g.validate();
  const double x = v + g.excluded_volume();
  if (!(x > 0.0))
    throw Error(errkind::domain, "multiplier transform requires V + N b > 0");
  const double n = g.N;
  return {lambda_v + g.a * n * n * lambda_u / (x * x), lambda_u};
}

double contact_residual(const EquilibriumPatch& patch) {
  if (patch.rows < 3 || patch.cols < 3)
    throw Error(errkind::grid, "contact residual needs at least a 3x3 patch");
  if (patch.points.size() != patch.rows * patch.cols)
    throw Error(errkind::dimension, "patch size mismatch");
  double worst = 0.0;
  for (std::size_t r = 1; r + 1 < patch.rows; ++r) {
    for (std::size_t c = 1; c + 1 < patch.cols; ++c) {
      const EquilibriumPoint& center = patch.at(r, c);
      const EquilibriumPoint pairs[2][2] = {
          {patch.at(r + 1, c), patch.at(r - 1, c)},
          {patch.at(r, c + 1), patch.at(r, c - 1)},
      };
      for (const auto& pr : pairs) {
        const double ds = pr[0].S - pr[1].S;
        const double du = pr[0].U - pr[1].U;
        const double dv = pr[0].V - pr[1].V;
        const double res =
            std::abs(ds - du / center.T - center.P / center.T * dv);
        worst = std::max(worst, res);
      }
    }
  }
  return worst;
}

QuadratureMeasure reduced_energy_measure(const GasParameters& g, double e_max,
                                         int points) {
  g.validate();
  if (!(e_max > 0.0) || points < 2)
    throw Error(errkind::input, "reduced_energy_measure: bad domain");
  // Substitution E = s^2 removes the half-integer power at the origin:
  // A E^{3N/2-1} dE = 2 A s^{3N-1} ds with A = (2 pi m)^{3N/2} / Gamma(3N/2).
  const double n = g.N;
  const double log_a = 1.5 * n * std::log(2.0 * M_PI * g.m) - std::lgamma(1.5 * n);
  std::vector<double> s_nodes, s_weights;
  gauss_legendre(points, 0.0, std::sqrt(e_max), s_nodes, s_weights);
  std::vector<double> coords(points), weights(points);
  for (int k = 0; k < points; ++k) {
    const double s = s_nodes[k];
    coords[k] = s * s;
    weights[k] =
        std::exp(log_a + (3.0 * n - 1.0) * std::log(s) + std::log(2.0 * s_weights[k]));
  }
  return QuadratureMeasure(std::move(coords), std::move(weights), 1);
}

QuadratureMeasure reduced_height_measure(const GasParameters& g, double h_max,
                                         int points) {
  g.validate();
  if (!(h_max > 0.0) || points < 2)
    throw Error(errkind::input, "reduced_height_measure: bad domain");
  const double n = g.N;
  std::vector<double> nodes, gl_weights;
  gauss_legendre(points, 0.0, h_max, nodes, gl_weights);
  std::vector<double> weights(points);
  for (int k = 0; k < points; ++k)
    weights[k] =
        std::exp(n * std::log(2.0 * M_PI * nodes[k]) + std::log(gl_weights[k]));
  return QuadratureMeasure(nodes, std::move(weights), 1);
}

ObservableSystem reduced_ideal_system(const GasParameters& g, double e_max,
                                      double h_max, int e_points, int h_points) {
  const auto energy = reduced_energy_measure(g, e_max, e_points);
  const auto height = reduced_height_measure(g, h_max, h_points);
  auto joint = std::make_shared<QuadratureMeasure>(
      QuadratureMeasure::product(energy, height));
  std::vector<double> kinetic(joint->size()), volume(joint->size());
  for (std::size_t i = 0; i < joint->size(); ++i) {
    kinetic[i] = joint->node(i)[0];
    volume[i] = g.C * joint->node(i)[1];
  }
  std::vector<Observable> obs;
  obs.emplace_back("kinetic_energy", std::move(kinetic));
  obs.emplace_back("lambda_volume", std::move(volume));
  return ObservableSystem(std::move(joint), std::move(obs));
}

}  // namespace thermoscope
