#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "thermoscope/error.hpp"
#include "thermoscope/gas_models.hpp"
#include "thermoscope/maxent.hpp"
#include "test_support.hpp"

using namespace thermoscope;

namespace {

GasParameters ideal_params(int n) {
  GasParameters g;
  g.N = n;
  return g;
}

GasParameters vdw_unit() {
  GasParameters g;
  g.N = 1;
  g.a = 1.0;
  g.b = 1.0;
  return g;
}

// Patch of the ideal equilibrium manifold parameterized by (T, P).
EquilibriumPatch ideal_patch(const GasParameters& g, double t_lo, double t_hi,
                             double p_lo, double p_hi, std::size_t n) {
  EquilibriumPatch patch;
  patch.rows = patch.cols = n;
  for (std::size_t r = 0; r < n; ++r) {
    const double t = t_lo + (t_hi - t_lo) * static_cast<double>(r) / (n - 1);
    for (std::size_t c = 0; c < n; ++c) {
      const double p = p_lo + (p_hi - p_lo) * static_cast<double>(c) / (n - 1);
      patch.points.push_back(ideal_state(t, p, g));
    }
  }
  return patch;
}

// Supercritical van der Waals patch parameterized by (T, Veff). The entropy
// potential integrating dS = dU/T + (P/T)dV together with the interaction
// energy -aN^2/Veff is S = (3N/2) log T + N log(Veff - bN); these closed
// forms serve as the test oracle for the first-law residual.
EquilibriumPatch vdw_patch(const GasParameters& g, double t_lo, double t_hi,
                           double v_lo, double v_hi, std::size_t n) {
  EquilibriumPatch patch;
  patch.rows = patch.cols = n;
  const double bn = g.excluded_volume();
  for (std::size_t r = 0; r < n; ++r) {
    const double t = t_lo + (t_hi - t_lo) * static_cast<double>(r) / (n - 1);
    for (std::size_t c = 0; c < n; ++c) {
      const double veff = v_lo + (v_hi - v_lo) * static_cast<double>(c) / (n - 1);
      EquilibriumPoint pt;
      pt.T = t;
      pt.P = vdw_pressure(veff, t, g);
      pt.V = veff - bn;
      pt.U = 1.5 * g.N * t - g.a * g.N * g.N / veff;
      pt.S = 1.5 * g.N * std::log(t) + g.N * std::log(veff - bn);
      pt.gibbs_free_energy = pt.U + pt.P * pt.V - pt.T * pt.S;
      patch.points.push_back(pt);
    }
  }
  return patch;
}

}  // namespace

TEST_CASE("ideal energy and volume from multipliers") {
  CHECK(ideal_energy_from_lambda(-1.0, ideal_params(1)) == doctest::Approx(1.5));
  CHECK(ideal_energy_from_lambda(-3.0, ideal_params(2)) == doctest::Approx(1.0));
  CHECK(ideal_volume_from_lambda(-1.0, ideal_params(1)) == doctest::Approx(2.0));
  CHECK(ideal_volume_from_lambda(-2.0, ideal_params(3)) == doctest::Approx(2.0));
  CHECK_THROWS_AS(ideal_energy_from_lambda(0.5, ideal_params(1)), Error);
  CHECK_THROWS_AS(ideal_volume_from_lambda(0.0, ideal_params(1)), Error);
}

TEST_CASE("reduced 1-D quadratures reproduce the closed-form moments") {
  for (int n : {1, 2, 3}) {
    const GasParameters g = ideal_params(n);
    const double lambda1 = -1.3;
    const double e_max = (1.5 * n + 46.0) / std::abs(lambda1);
    auto em = std::make_shared<QuadratureMeasure>(
        reduced_energy_measure(g, e_max, 160));
    std::vector<double> evals(em->size());
    for (std::size_t i = 0; i < em->size(); ++i) evals[i] = em->node(i)[0];
    const ObservableSystem esys(em, {Observable("E", evals)});
    const double u = moments(std::vector<double>{lambda1}, esys)[0];
    CHECK(u == doctest::Approx(ideal_energy_from_lambda(lambda1, g)).epsilon(1e-6));

    const double lambda2 = -0.6;
    const double h_max = (n + 46.0) / (g.C * std::abs(lambda2));
    auto hm = std::make_shared<QuadratureMeasure>(
        reduced_height_measure(g, h_max, 160));
    std::vector<double> hvals(hm->size());
    for (std::size_t i = 0; i < hm->size(); ++i) hvals[i] = g.C * hm->node(i)[0];
    const ObservableSystem hsys(hm, {Observable("Ch", hvals)});
    const double v = moments(std::vector<double>{lambda2}, hsys)[0];
    CHECK(v == doctest::Approx(ideal_volume_from_lambda(lambda2, g)).epsilon(1e-6));
  }
}

TEST_CASE("ideal log partition: closed value and multiplier derivatives") {
  GasParameters g = ideal_params(1);
  g.m = 1.0 / (2.0 * M_PI);
  CHECK(ideal_log_partition(-1.0, -1.0, g) ==
        doctest::Approx(std::log(2.0 * M_PI)).epsilon(1e-13));

  const GasParameters g2 = ideal_params(3);
  const double l1 = -0.8, l2 = -1.7;
  const double u = test_support::central_diff(
      [&](double x) { return ideal_log_partition(x, l2, g2); }, l1, 1e-6);
  CHECK(u == doctest::Approx(ideal_energy_from_lambda(l1, g2)).epsilon(1e-6));
  CHECK(u > 0.0);
  const double v = test_support::central_diff(
      [&](double x) { return ideal_log_partition(l1, x, g2); }, l2, 1e-6);
  CHECK(v == doctest::Approx(ideal_volume_from_lambda(l2, g2)).epsilon(1e-6));
}

TEST_CASE("ideal entropy: Legendre duality and first-law gradients") {
  auto gen = test_support::rng(19);
  for (int trial = 0; trial < 50; ++trial) {
    GasParameters g = ideal_params(1 + static_cast<int>(trial % 4));
    g.m = test_support::uniform(gen, 0.5, 2.0);
    g.C = test_support::uniform(gen, 0.5, 2.0);
    const double u = test_support::uniform(gen, 0.2, 8.0);
    const double v = test_support::uniform(gen, 0.2, 8.0);
    const double l1 = -1.5 * g.N / u;
    const double l2 = -(g.N + 1.0) / v;
    const double dual = ideal_log_partition(l1, l2, g) - l1 * u - l2 * v;
    CHECK(std::abs(ideal_entropy(u, v, g) - dual) <= 1e-10);

    const double h_u = 1e-6 * u;
    const double ds_du = test_support::central_diff(
        [&](double x) { return ideal_entropy(x, v, g); }, u, h_u);
    CHECK(ds_du == doctest::Approx(1.5 * g.N / u).epsilon(1e-6));
    const double h_v = 1e-6 * v;
    const double ds_dv = test_support::central_diff(
        [&](double x) { return ideal_entropy(u, x, g); }, v, h_v);
    CHECK(ds_dv == doctest::Approx((g.N + 1.0) / v).epsilon(1e-6));
  }
  CHECK_THROWS_AS(ideal_entropy(-1.0, 2.0, ideal_params(1)), Error);
}

TEST_CASE("ideal state: gas law values and Gibbs free energy consistency") {
  const EquilibriumPoint p1 = ideal_state(3.0, 1.0, ideal_params(2));
  CHECK(p1.U == doctest::Approx(9.0).epsilon(1e-15));
  const EquilibriumPoint p2 = ideal_state(1.0, 2.0, ideal_params(1));
  CHECK(p2.V == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(p2.gibbs_free_energy - (p2.U + p2.P * p2.V - p2.T * p2.S)) <=
        1e-12);

  auto gen = test_support::rng(29);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(trial % 5);
    const double t = test_support::uniform(gen, 0.1, 10.0);
    const double p = test_support::uniform(gen, 0.1, 10.0);
    const EquilibriumPoint pt = ideal_state(t, p, ideal_params(n));
    CHECK(std::abs(pt.U / (n * t) - 1.5) <= 4.0 * 2.220446049250313e-16);
    CHECK(std::abs(pt.P * pt.V / t - (n + 1.0)) <=
          4.0 * 2.220446049250313e-16 * (n + 1.0));
  }
}

TEST_CASE("contact residual: ideal patches at two resolutions, constant patch") {
  const GasParameters g = ideal_params(1);
  const double coarse = contact_residual(ideal_patch(g, 1.0, 2.0, 1.0, 2.0, 41));
  CHECK(coarse <= 1e-4);
  const double fine = contact_residual(ideal_patch(g, 1.0, 2.0, 1.0, 2.0, 161));
  CHECK(fine <= 1e-6);
  // third-order differences: halving the step cuts the residual by >= 4x
  const double half = contact_residual(ideal_patch(g, 1.0, 2.0, 1.0, 2.0, 81));
  CHECK(half <= coarse / 4.0);

  EquilibriumPatch flat;
  flat.rows = flat.cols = 3;
  EquilibriumPoint pt = ideal_state(1.0, 1.0, g);
  flat.points.assign(9, pt);
  CHECK(contact_residual(flat) == 0.0);

  EquilibriumPatch tiny;
  tiny.rows = tiny.cols = 2;
  tiny.points.assign(4, pt);
  CHECK_THROWS_AS(contact_residual(tiny), Error);
}

TEST_CASE("van der Waals single-branch patch satisfies the first law") {
  const GasParameters g = vdw_unit();
  const CriticalPoint cp = vdw_critical_point(g);
  const double residual = contact_residual(
      vdw_patch(g, 1.2 * cp.T_c, 1.6 * cp.T_c, 2.0, 6.0, 121));
  CHECK(residual <= 1e-5);
  const double finer = contact_residual(
      vdw_patch(g, 1.2 * cp.T_c, 1.6 * cp.T_c, 2.0, 6.0, 241));
  CHECK(finer < residual / 4.0);
}

TEST_CASE("vdw pressure: limits, critical value, far-field asymptote") {
  GasParameters free_gas = ideal_params(2);
  CHECK(vdw_pressure(4.0, 3.0, free_gas) ==
        doctest::Approx(2.0 * 3.0 / 4.0).epsilon(1e-14));

  const GasParameters g = vdw_unit();
  CHECK(vdw_pressure(3.0, 8.0 / 27.0, g) ==
        doctest::Approx(1.0 / 27.0).epsilon(1e-13));

  const double far = vdw_pressure(1e6, 1.0, g);
  CHECK(std::abs(far - 1.0 / 1e6) <= 1e-11);
  CHECK(far > 0.0);

  CHECK_THROWS_AS(vdw_pressure(0.9, 1.0, g), Error);
}

TEST_CASE("vdw energy: attraction off, direct value, volume derivative") {
  GasParameters free_gas = ideal_params(2);
  CHECK(vdw_energy(5.0, 1.2, free_gas) ==
        doctest::Approx(1.5 * 2 * 1.2).epsilon(1e-14));

  const GasParameters g = vdw_unit();
  CHECK(vdw_energy(1.0, 1.0, g) == doctest::Approx(0.5).epsilon(1e-14));

  const double dudv = test_support::central_diff(
      [&](double v) { return vdw_energy(v, 1.0, g); }, 2.0, 1e-6);
  CHECK(dudv == doctest::Approx(2.0 / 8.0).epsilon(1e-6));
  CHECK(dudv > 0.0);
}

TEST_CASE("cubic coefficients, discriminant formula, root back-substitution") {
  // synthetic cubic (x-1)(x-2)(x-3): expanded coefficients give D = 4
  CHECK(cubic_discriminant(-6.0, 11.0, -6.0) == doctest::Approx(4.0).epsilon(1e-14));

  const GasParameters g = vdw_unit();
  const double t = 0.24, p = 0.015;
  const CubicCoefficients c = vdw_cubic(t, p, g);
  CHECK(c.discriminant ==
        doctest::Approx(cubic_discriminant(c.alpha, c.beta, c.gamma)).epsilon(1e-14));
  for (double root : vdw_volume_roots(t, p, g)) {
    CHECK(vdw_pressure(root, t, g) == doctest::Approx(p).epsilon(1e-9));
  }

  GasParameters free_gas = ideal_params(1);
  const auto roots = vdw_volume_roots(2.0, 0.5, free_gas);
  REQUIRE(roots.size() == 1);
  CHECK(roots[0] == doctest::Approx(2.0 / 0.5).epsilon(1e-12));
}

TEST_CASE("root count follows the discriminant sign; Vieta relations hold") {
  const GasParameters g = vdw_unit();
  const CriticalPoint cp = vdw_critical_point(g);
  auto gen = test_support::rng(53);
  int three_root_draws = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const double t = cp.T_c * test_support::uniform(gen, 0.5, 1.5);
    const double p = cp.P_c * test_support::uniform(gen, 0.05, 3.0);
    const CubicCoefficients c = vdw_cubic(t, p, g);
    const auto roots = vdw_volume_roots(t, p, g);
    if (c.discriminant > 0.0) {
      REQUIRE(roots.size() == 3);
      ++three_root_draws;
      const double sum = roots[0] + roots[1] + roots[2];
      const double prod = roots[0] * roots[1] * roots[2];
      CHECK(sum == doctest::Approx(-c.alpha).epsilon(1e-8));
      CHECK(prod == doctest::Approx(-c.gamma).epsilon(1e-8));
    } else {
      REQUIRE(roots.size() == 1);
    }
  }
  CHECK(three_root_draws > 50);  // the sweep must actually cross both regimes
  CHECK(three_root_draws < 950);
}

TEST_CASE("critical point: closed forms, N-scaling, vanishing discriminant") {
  const GasParameters g = vdw_unit();
  const CriticalPoint cp = vdw_critical_point(g);
  CHECK(cp.T_c == doctest::Approx(8.0 / 27.0).epsilon(1e-14));
  CHECK(cp.P_c == doctest::Approx(1.0 / 27.0).epsilon(1e-14));
  CHECK(cp.Veff_c == doctest::Approx(3.0).epsilon(1e-14));

  for (int n : {1, 2, 4}) {
    GasParameters gn = vdw_unit();
    gn.N = n;
    const CriticalPoint cpn = vdw_critical_point(gn);
    CHECK(cpn.Veff_c == doctest::Approx(3.0 * n).epsilon(1e-14));
    CHECK(cpn.T_c == doctest::Approx(cp.T_c).epsilon(1e-14));
    CHECK(cpn.P_c == doctest::Approx(cp.P_c).epsilon(1e-14));
  }

  const CubicCoefficients c = vdw_cubic(cp.T_c, cp.P_c, g);
  const double scale =
      std::max({std::abs(18.0 * c.alpha * c.beta * c.gamma),
                std::abs(4.0 * c.alpha * c.alpha * c.alpha * c.gamma),
                std::abs(c.alpha * c.alpha * c.beta * c.beta),
                std::abs(4.0 * c.beta * c.beta * c.beta),
                std::abs(27.0 * c.gamma * c.gamma)});
  CHECK(std::abs(c.discriminant) <= 1e-8 * scale);

  CHECK_THROWS_AS(vdw_critical_point(ideal_params(1)), Error);
}

TEST_CASE("multiplier transform: degenerate limits and pairing identity") {
  GasParameters free_gas = ideal_params(1);
  const auto [lx0, ly0] = vdw_multiplier_transform(-2.0, -0.5, 1.0, free_gas);
  CHECK(lx0 == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(ly0 == doctest::Approx(-2.0).epsilon(1e-14));

  const GasParameters g = vdw_unit();
  const auto [lx1, ly1] = vdw_multiplier_transform(0.0, -0.7, 2.0, g);
  CHECK(lx1 == doctest::Approx(-0.7).epsilon(1e-14));
  CHECK(ly1 == 0.0);

  // Along a sampled path, lambda_X dX + lambda_Y dY = lambda_U dU + lambda_V dV.
  const CriticalPoint cp = vdw_critical_point(g);
  const int count = 1001;
  std::vector<double> lhs(count), rhs(count);
  std::vector<double> us(count), vs(count), xs(count), ys(count), lus(count),
      lvs(count), lxs(count), lys(count);
  for (int k = 0; k < count; ++k) {
    const double s = static_cast<double>(k) / (count - 1);
    const double t = cp.T_c * (1.2 + 0.4 * s);
    const double veff = 2.0 + 3.0 * s;
    const double p = vdw_pressure(veff, t, g);
    us[k] = vdw_energy(veff, t, g);
    vs[k] = veff - g.excluded_volume();
    xs[k] = vs[k] + g.excluded_volume();
    ys[k] = us[k] + g.a * g.N * g.N / xs[k];
    lus[k] = -1.0 / t;
    lvs[k] = -p / t;
    std::tie(lxs[k], lys[k]) = vdw_multiplier_transform(lus[k], lvs[k], vs[k], g);
  }
  for (int k = 1; k + 1 < count; ++k) {
    const double du = us[k + 1] - us[k - 1];
    const double dv = vs[k + 1] - vs[k - 1];
    const double dx = xs[k + 1] - xs[k - 1];
    const double dy = ys[k + 1] - ys[k - 1];
    const double left = lxs[k] * dx + lys[k] * dy;
    const double right = lus[k] * du + lvs[k] * dv;
    CHECK(std::abs(left - right) <= 1e-6 * std::max(1.0, std::abs(right)));
  }

  CHECK_THROWS_AS(vdw_multiplier_transform(-1.0, -1.0, -5.0, g), Error);
}
