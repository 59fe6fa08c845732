#ifndef THERMOSCOPE_MAXENT_HPP
#define THERMOSCOPE_MAXENT_HPP

#include <memory>
#include <span>
#include <vector>

#include "thermoscope/measure.hpp"

namespace thermoscope {

/// An ordered system of observables F_1..F_n sharing one reference measure.
class ObservableSystem {
public:
  ObservableSystem(std::shared_ptr<const QuadratureMeasure> measure,
                   std::vector<Observable> observables);

  const QuadratureMeasure& measure() const noexcept { return *measure_; }
  std::shared_ptr<const QuadratureMeasure> measure_ptr() const { return measure_; }
  const std::vector<Observable>& observables() const noexcept { return observables_; }
  int count() const noexcept { return static_cast<int>(observables_.size()); }

private:
  std::shared_ptr<const QuadratureMeasure> measure_;
  std::vector<Observable> observables_;
};

struct SolverOptions {
  double tol = 1e-10;
  int max_iter = 200;
  bool deterministic = true;
};

/// Solution of the constrained entropy maximization: multipliers, the
/// log-partition value, realized moments, entropy and moment covariance.
struct MaxEntSolution {
  std::vector<double> lambda;
  double log_partition = 0.0;
  std::vector<double> moments;
  double entropy = 0.0;
  std::vector<double> covariance;  // n x n row-major, symmetric PSD
  int iterations = 0;
};

/// w(lambda) = log sum_j exp(sum_i lambda_i F_i(x_j)) w_j, evaluated in
/// log space with a max shift.
double log_partition(std::span<const double> lambda, const ObservableSystem& sys);

/// Gibbs density f = exp(sum_i lambda_i F_i - w); normalized by construction.
Density gibbs_density(std::span<const double> lambda, const ObservableSystem& sys);

/// Moments q_i = <F_i> under the Gibbs density = gradient of w.
std::vector<double> moments(std::span<const double> lambda,
                            const ObservableSystem& sys);

/// Moment covariance Cov(F_i, F_j) under the Gibbs density = Hessian of w.
std::vector<double> covariance(std::span<const double> lambda,
                               const ObservableSystem& sys);

/// Entropy of the Gibbs density via the dual formula S = w - lambda . q.
double entropy_at(std::span<const double> lambda, const ObservableSystem& sys);

/// Inverts the moment map mu -> lambda by damped Newton on the convex dual
/// w(lambda) - lambda . mu with Armijo backtracking, starting from lambda = 0.
/// The target must lie strictly inside the moment hull of the node set.
MaxEntSolution fit_multipliers(std::span<const double> target_mu,
                               const ObservableSystem& sys,
                               const SolverOptions& opts = {});

}  // namespace thermoscope

#endif
