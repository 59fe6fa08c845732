#ifndef THERMOSCOPE_KINETIC_HPP
#define THERMOSCOPE_KINETIC_HPP

#include <memory>
#include <span>
#include <string>
#include <vector>

namespace thermoscope {

/// Uniform phase-space grid: Q periodic on [q_min, q_max), P on
/// [p_min, p_max]. Nodes are cell-centered; cell_volume = dq * dp is the
/// discrete Liouville measure.
class PhaseGrid {
public:
  PhaseGrid(double q_min, double q_max, std::size_t nq, double p_min,
            double p_max, std::size_t np);

  std::size_t nq() const noexcept { return nq_; }
  std::size_t np() const noexcept { return np_; }
  std::size_t size() const noexcept { return nq_ * np_; }
  double dq() const noexcept { return dq_; }
  double dp() const noexcept { return dp_; }
  double q(std::size_t i) const { return q_min_ + (i + 0.5) * dq_; }
  double p(std::size_t j) const { return p_min_ + (j + 0.5) * dp_; }
  double q_period() const noexcept { return q_max_ - q_min_; }
  double cell_volume() const noexcept { return dq_ * dp_; }

  bool same_shape(const PhaseGrid& other) const {
    return nq_ == other.nq_ && np_ == other.np_;
  }

private:
  double q_min_, q_max_, p_min_, p_max_;
  std::size_t nq_, np_;
  double dq_, dp_;
};

/// Nonnegative density values w.r.t. the discrete Liouville measure, unit
/// mass, plus the elapsed time. Layout: f[j * nq + i] (P-rows contiguous).
class KineticState {
public:
  KineticState(std::shared_ptr<const PhaseGrid> grid, std::vector<double> f,
               double t);

  const PhaseGrid& grid() const noexcept { return *grid_; }
  std::shared_ptr<const PhaseGrid> grid_ptr() const { return grid_; }
  std::span<const double> f() const noexcept { return f_; }
  double t() const noexcept { return t_; }

  /// Rescaling applied at construction to restore unit mass (1 when the
  /// raw values were already exactly normalized).
  double renormalization() const noexcept { return renorm_; }

  double mass() const;
  double entropy() const;

private:
  std::shared_ptr<const PhaseGrid> grid_;
  std::vector<double> f_;
  double t_ = 0.0;
  double renorm_ = 1.0;
};

/// Grid-sampled scalar field (a Hamiltonian or an observable).
struct HamiltonianField {
  HamiltonianField(std::shared_ptr<const PhaseGrid> grid,
                   std::vector<double> values, std::string label);

  std::shared_ptr<const PhaseGrid> grid;
  std::vector<double> values;
  std::string label;
};

/// Exact free-transport solution f(t, Q, P) = f0(Q - t P, P), realized by
/// periodic cubic interpolation per P-row; a pure circular shift (no
/// arithmetic on the values) whenever t P is an integer number of cells.
KineticState free_transport_exact(const KineticState& f0, double t);

/// One semi-Lagrangian step: rows advected by -P dt with cubic
/// interpolation, clipped at zero and renormalized to unit mass.
KineticState free_transport_step(const KineticState& state, double dt);

/// Poisson bracket {f, H} = df/dQ dH/dP - df/dP dH/dQ with 4th-order central
/// differences (periodic in Q, one-sided at the P boundary).
std::vector<double> poisson_bracket(std::span<const double> f,
                                    const HamiltonianField& h);

/// dS/dt candidate: quadrature of (log f + 1) {f, H} over the grid; cells
/// with f <= 1e-300 are skipped.
double entropy_production(const KineticState& state, const HamiltonianField& h);

struct ConservationSnapshot {
  double t = 0.0;
  double mass = 0.0;
  double entropy = 0.0;
  std::vector<double> moments;
};

struct ConservationReport {
  std::vector<std::string> labels;
  std::vector<ConservationSnapshot> snapshots;
  double mass_drift = 0.0;
  double entropy_drift = 0.0;
  std::vector<double> moment_drifts;
};

/// Per-snapshot mass, entropy and observable averages with max drifts over
/// the trajectory. All sums are order-independent (exact summation), so a
/// trajectory whose states are value permutations reports exactly zero
/// drift.
ConservationReport conservation_report(const std::vector<KineticState>& trajectory,
                                       const std::vector<HamiltonianField>& observables);

}  // namespace thermoscope

#endif
