#include "thermoscope/kinetic.hpp"

#include <algorithm>
#include <cmath>

#include "thermoscope/error.hpp"
#include "thermoscope/numerics.hpp"

namespace thermoscope {

namespace {
constexpr double kEntropyFloor = 1e-300;
}

PhaseGrid::PhaseGrid(double q_min, double q_max, std::size_t nq, double p_min,
                     double p_max, std::size_t np)
    : q_min_(q_min), q_max_(q_max), p_min_(p_min), p_max_(p_max), nq_(nq), np_(np) {
  if (nq < 8 || np < 8) throw Error(errkind::grid, "grid sizes must be >= 8");
  if (!(q_max > q_min) || !(p_max > p_min))
    throw Error(errkind::grid, "grid extents must be increasing");
  dq_ = (q_max_ - q_min_) / static_cast<double>(nq_);
  dp_ = (p_max_ - p_min_) / static_cast<double>(np_);
}

KineticState::KineticState(std::shared_ptr<const PhaseGrid> grid,
                           std::vector<double> f, double t)
    : grid_(std::move(grid)), f_(std::move(f)), t_(t) {
  if (!grid_) throw Error(errkind::input, "kinetic state requires a grid");
  if (f_.size() != grid_->size())
    throw Error(errkind::dimension, "state values do not match the grid");
  for (double v : f_) {
    if (!(v >= 0.0)) throw Error(errkind::input, "density must be nonnegative");
  }
  const double raw_mass = exact_sum(f_) * grid_->cell_volume();
  if (!(raw_mass > 0.0)) throw Error(errkind::empty_density, "state has zero mass");
  if (std::abs(raw_mass - 1.0) > 1e-12) {
    renorm_ = 1.0 / raw_mass;
    for (double& v : f_) v *= renorm_;
  }
}

double KineticState::mass() const {
  return exact_sum(f_) * grid_->cell_volume();
}

double KineticState::entropy() const {
  std::vector<double> terms(f_.size());
  for (std::size_t k = 0; k < f_.size(); ++k) {
    const double v = f_[k];
    terms[k] = (v > kEntropyFloor) ? -v * std::log(v) : 0.0;
  }
  return exact_sum(terms) * grid_->cell_volume();
}

HamiltonianField::HamiltonianField(std::shared_ptr<const PhaseGrid> grid_in,
                                   std::vector<double> values_in,
                                   std::string label_in)
    : grid(std::move(grid_in)), values(std::move(values_in)),
      label(std::move(label_in)) {
  if (!grid) throw Error(errkind::input, "field requires a grid");
  if (values.size() != grid->size())
    throw Error(errkind::dimension, "field values do not match the grid");
  for (double v : values) {
    if (!std::isfinite(v))
      throw Error(errkind::input, "field '" + label + "' has non-finite values");
  }
}

namespace {

// Advect one periodic row by sigma cells: out[i] = row(i - sigma), cubic
// Lagrange on the 4-point stencil. Integer sigma is a pure index rotation.
void advect_row(std::span<const double> row, double sigma, std::span<double> out) {
  const std::size_t n = row.size();
  const double nn = static_cast<double>(n);
  double shift = std::fmod(sigma, nn);
  if (shift < 0.0) shift += nn;
  if (shift == std::floor(shift)) {
    const std::size_t k = static_cast<std::size_t>(shift) % n;
    for (std::size_t i = 0; i < n; ++i) out[i] = row[(i + n - k) % n];
    return;
  }
  const double fl = std::floor(shift);
  const std::size_t k = static_cast<std::size_t>(fl);
  // Source position i - shift = (i - k - 1) + u with u = 1 - frac(shift) in
  // (0, 1); cubic Lagrange weights at offset u for the stencil {-1, 0, 1, 2}.
  const double u = 1.0 - (shift - fl);
  const double wm1 = -u * (u - 1.0) * (u - 2.0) / 6.0;
  const double w0 = (u + 1.0) * (u - 1.0) * (u - 2.0) / 2.0;
  const double w1 = -(u + 1.0) * u * (u - 2.0) / 2.0;
  const double w2 = (u + 1.0) * u * (u - 1.0) / 6.0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t b = (i + 2 * n - k - 1) % n;
    out[i] = wm1 * row[(b + n - 1) % n] + w0 * row[b] + w1 * row[(b + 1) % n] +
             w2 * row[(b + 2) % n];
  }
}

std::vector<double> advect_all(const KineticState& state, double t) {
  const PhaseGrid& grid = state.grid();
  std::vector<double> out(grid.size());
  for (std::size_t j = 0; j < grid.np(); ++j) {
    const double sigma = t * grid.p(j) / grid.dq();
    advect_row(state.f().subspan(j * grid.nq(), grid.nq()), sigma,
               std::span<double>(out).subspan(j * grid.nq(), grid.nq()));
  }
  return out;
}

}  // namespace

KineticState free_transport_exact(const KineticState& f0, double t) {
  if (t == 0.0) return f0;
  auto values = advect_all(f0, t);
  for (double& v : values) v = std::max(v, 0.0);
  return KineticState(f0.grid_ptr(), std::move(values), f0.t() + t);
}

KineticState free_transport_step(const KineticState& state, double dt) {
  if (!std::isfinite(dt)) throw Error(errkind::input, "dt must be finite");
  auto values = advect_all(state, dt);
  for (double& v : values) v = std::max(v, 0.0);
  const double mass = exact_sum(values) * state.grid().cell_volume();
  if (!(mass > 0.0)) throw Error(errkind::empty_density, "advection emptied the state");
  for (double& v : values) v /= mass;
  return KineticState(state.grid_ptr(), std::move(values), state.t() + dt);
}

std::vector<double> poisson_bracket(std::span<const double> f,
                                    const HamiltonianField& h) {
  const PhaseGrid& grid = *h.grid;
  if (f.size() != grid.size())
    throw Error(errkind::dimension, "bracket operands live on different grids");
  const std::size_t nq = grid.nq();
  const std::size_t np = grid.np();

  auto dq_central = [&](std::span<const double> v, std::size_t i, std::size_t j) {
    const std::size_t b = j * nq;
    const double vm2 = v[b + (i + nq - 2) % nq];
    const double vm1 = v[b + (i + nq - 1) % nq];
    const double vp1 = v[b + (i + 1) % nq];
    const double vp2 = v[b + (i + 2) % nq];
    return (vm2 - 8.0 * vm1 + 8.0 * vp1 - vp2) / (12.0 * grid.dq());
  };
  // 4th-order d/dp: central in the interior, one-sided at the boundary.
  auto dp_deriv = [&](std::span<const double> v, std::size_t i, std::size_t j) {
    auto at = [&](std::size_t jj) { return v[jj * nq + i]; };
    const double h5 = 12.0 * grid.dp();
    if (j >= 2 && j + 2 < np)
      return (at(j - 2) - 8.0 * at(j - 1) + 8.0 * at(j + 1) - at(j + 2)) / h5;
    if (j < 2) {
      const std::size_t o = j;
      return (-25.0 * at(o) + 48.0 * at(o + 1) - 36.0 * at(o + 2) +
              16.0 * at(o + 3) - 3.0 * at(o + 4)) /
             (12.0 * grid.dp());
    }
    const std::size_t o = j;
    return (25.0 * at(o) - 48.0 * at(o - 1) + 36.0 * at(o - 2) -
            16.0 * at(o - 3) + 3.0 * at(o - 4)) /
           (12.0 * grid.dp());
  };

  std::vector<double> out(grid.size());
  for (std::size_t j = 0; j < np; ++j) {
    for (std::size_t i = 0; i < nq; ++i) {
      const double fq = dq_central(f, i, j);
      const double fp = dp_deriv(f, i, j);
      const double hq = dq_central(h.values, i, j);
      const double hp = dp_deriv(h.values, i, j);
      out[j * nq + i] = fq * hp - fp * hq;
    }
  }
  return out;
}

double entropy_production(const KineticState& state, const HamiltonianField& h) {
  if (!state.grid().same_shape(*h.grid))
    throw Error(errkind::dimension, "state and Hamiltonian grids differ");
  const auto bracket = poisson_bracket(state.f(), h);
  std::vector<double> terms(bracket.size());
  for (std::size_t k = 0; k < bracket.size(); ++k) {
    const double f = state.f()[k];
    terms[k] = (f > kEntropyFloor) ? (std::log(f) + 1.0) * bracket[k] : 0.0;
  }
  return compensated_sum(terms) * state.grid().cell_volume();
}

ConservationReport conservation_report(const std::vector<KineticState>& trajectory,
                                       const std::vector<HamiltonianField>& observables) {
  if (trajectory.empty())
    throw Error(errkind::input, "conservation report needs at least one snapshot");
  ConservationReport report;
  for (const auto& obs : observables) report.labels.push_back(obs.label);
  report.moment_drifts.assign(observables.size(), 0.0);

  std::vector<double> terms;
  for (const auto& state : trajectory) {
    ConservationSnapshot snap;
    snap.t = state.t();
    snap.mass = state.mass();
    snap.entropy = state.entropy();
    terms.resize(state.f().size());
    for (const auto& obs : observables) {
      if (obs.values.size() != state.f().size())
        throw Error(errkind::dimension, "observable does not match trajectory grid");
      for (std::size_t k = 0; k < terms.size(); ++k)
        terms[k] = obs.values[k] * state.f()[k];
      snap.moments.push_back(exact_sum(terms) * state.grid().cell_volume());
    }
    report.snapshots.push_back(std::move(snap));
  }

  const auto& first = report.snapshots.front();
  for (const auto& snap : report.snapshots) {
    report.mass_drift = std::max(report.mass_drift, std::abs(snap.mass - first.mass));
    report.entropy_drift =
        std::max(report.entropy_drift, std::abs(snap.entropy - first.entropy));
    for (std::size_t i = 0; i < observables.size(); ++i)
      report.moment_drifts[i] = std::max(
          report.moment_drifts[i], std::abs(snap.moments[i] - first.moments[i]));
  }
  return report;
}

}  // namespace thermoscope
