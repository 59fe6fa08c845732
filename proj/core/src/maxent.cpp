#include "thermoscope/maxent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "thermoscope/error.hpp"
#include "thermoscope/numerics.hpp"

namespace thermoscope {

ObservableSystem::ObservableSystem(std::shared_ptr<const QuadratureMeasure> measure,
                                   std::vector<Observable> observables)
    : measure_(std::move(measure)), observables_(std::move(observables)) {
  if (!measure_) throw Error(errkind::input, "observable system requires a measure");
  if (observables_.empty())
    throw Error(errkind::input, "observable system needs at least one observable");
  for (const auto& f : observables_) {
    if (f.values.size() != measure_->size())
      throw Error(errkind::dimension,
                  "observable '" + f.label + "' not defined on the shared measure");
  }
}

namespace {

void check_lambda(std::span<const double> lambda, const ObservableSystem& sys) {
  if (lambda.size() != static_cast<std::size_t>(sys.count()))
    throw Error(errkind::dimension, "multiplier count does not match system");
  for (double l : lambda) {
    if (!std::isfinite(l)) throw Error(errkind::input, "non-finite multiplier");
  }
}

// Exponents t_j = sum_i lambda_i F_i(x_j).
std::vector<double> exponents(std::span<const double> lambda,
                              const ObservableSystem& sys) {
  const std::size_t nodes = sys.measure().size();
  std::vector<double> t(nodes, 0.0);
  for (int i = 0; i < sys.count(); ++i) {
    const double li = lambda[i];
    if (li == 0.0) continue;
    const auto& fv = sys.observables()[i].values;
    for (std::size_t j = 0; j < nodes; ++j) t[j] += li * fv[j];
  }
  return t;
}

std::vector<double> gibbs_values(std::span<const double> lambda,
                                 const ObservableSystem& sys, double& w_out) {
  const auto t = exponents(lambda, sys);
  w_out = log_sum_exp_weighted(t, sys.measure().weights());
  std::vector<double> f(t.size());
  for (std::size_t j = 0; j < t.size(); ++j) f[j] = std::exp(t[j] - w_out);
  return f;
}

std::vector<double> moments_of(const std::vector<double>& f,
                               const ObservableSystem& sys) {
  const auto w = sys.measure().weights();
  std::vector<double> q(sys.count(), 0.0);
  std::vector<double> terms(f.size());
  for (int i = 0; i < sys.count(); ++i) {
    const auto& fv = sys.observables()[i].values;
    for (std::size_t j = 0; j < f.size(); ++j) terms[j] = fv[j] * f[j] * w[j];
    q[i] = compensated_sum(terms);
  }
  return q;
}

std::vector<double> covariance_of(const std::vector<double>& f,
                                  const std::vector<double>& q,
                                  const ObservableSystem& sys) {
  const int n = sys.count();
  const auto w = sys.measure().weights();
  std::vector<double> cov(static_cast<std::size_t>(n) * n, 0.0);
  std::vector<double> terms(f.size());
  for (int i = 0; i < n; ++i) {
    const auto& fi = sys.observables()[i].values;
    for (int k = i; k < n; ++k) {
      const auto& fk = sys.observables()[k].values;
      for (std::size_t j = 0; j < f.size(); ++j)
        terms[j] = (fi[j] - q[i]) * (fk[j] - q[k]) * f[j] * w[j];
      const double c = compensated_sum(terms);
      cov[i * n + k] = c;
      cov[k * n + i] = c;
    }
  }
  return cov;
}

}  // namespace

double log_partition(std::span<const double> lambda, const ObservableSystem& sys) {
  check_lambda(lambda, sys);
  const auto t = exponents(lambda, sys);
  return log_sum_exp_weighted(t, sys.measure().weights());
}

Density gibbs_density(std::span<const double> lambda, const ObservableSystem& sys) {
  check_lambda(lambda, sys);
  double w = 0.0;
  auto f = gibbs_values(lambda, sys, w);
  return normalize(std::move(f), sys.measure_ptr());
}

std::vector<double> moments(std::span<const double> lambda,
                            const ObservableSystem& sys) {
  check_lambda(lambda, sys);
  double w = 0.0;
  const auto f = gibbs_values(lambda, sys, w);
  return moments_of(f, sys);
}

std::vector<double> covariance(std::span<const double> lambda,
                               const ObservableSystem& sys) {
  check_lambda(lambda, sys);
  double w = 0.0;
  const auto f = gibbs_values(lambda, sys, w);
  return covariance_of(f, moments_of(f, sys), sys);
}

double entropy_at(std::span<const double> lambda, const ObservableSystem& sys) {
  check_lambda(lambda, sys);
  double w = 0.0;
  const auto f = gibbs_values(lambda, sys, w);
  const auto q = moments_of(f, sys);
  double s = w;
  for (int i = 0; i < sys.count(); ++i) s -= lambda[i] * q[i];
  return s;
}

MaxEntSolution fit_multipliers(std::span<const double> target_mu,
                               const ObservableSystem& sys,
                               const SolverOptions& opts) {
  const int n = sys.count();
  if (target_mu.size() != static_cast<std::size_t>(n))
    throw Error(errkind::dimension, "target moment count does not match system");

  // Necessary feasibility: each target inside the componentwise value range.
  for (int i = 0; i < n; ++i) {
    const auto& fv = sys.observables()[i].values;
    const auto [lo, hi] = std::minmax_element(fv.begin(), fv.end());
    if (!(target_mu[i] > *lo && target_mu[i] < *hi)) {
      if (*lo == *hi && target_mu[i] == *lo) continue;  // constant observable
      throw Error(errkind::infeasible_target,
                  "target moment " + std::to_string(target_mu[i]) +
                      " for observable '" + sys.observables()[i].label +
                      "' lies outside the node value range [" +
                      std::to_string(*lo) + ", " + std::to_string(*hi) + "]");
    }
  }

  constexpr double kArmijo = 1e-4;
  constexpr int kMaxHalvings = 50;
  constexpr double kDegenerateCondition = 1e12;

  std::vector<double> lambda(n, 0.0);
  double w = 0.0;
  std::vector<double> f = gibbs_values(lambda, sys, w);
  std::vector<double> q = moments_of(f, sys);
  std::vector<double> cov = covariance_of(f, q, sys);

  {
    const auto eig = symmetric_eigenvalues(cov, n);
    if (!(eig.front() > 0.0) || eig.back() / eig.front() > kDegenerateCondition)
      throw Error(errkind::degenerate_system,
                  "observables are affinely dependent on the node set");
  }

  auto dual = [&](double w_val, std::span<const double> l) {
    double phi = w_val;
    for (int i = 0; i < n; ++i) phi -= l[i] * target_mu[i];
    return phi;
  };

  double phi = dual(w, lambda);
  double step_norm_prev = std::numeric_limits<double>::infinity();
  int grew = 0;

  for (int iter = 1; iter <= opts.max_iter; ++iter) {
    std::vector<double> grad(n);
    double err = 0.0;
    for (int i = 0; i < n; ++i) {
      grad[i] = q[i] - target_mu[i];
      err = std::max(err, std::abs(grad[i]));
    }
    if (err <= opts.tol) {
      MaxEntSolution sol;
      sol.lambda = lambda;
      sol.log_partition = w;
      sol.moments = q;
      sol.covariance = cov;
      sol.entropy = w;
      for (int i = 0; i < n; ++i) sol.entropy -= lambda[i] * q[i];
      sol.iterations = iter - 1;
      return sol;
    }

    std::vector<double> rhs(n);
    for (int i = 0; i < n; ++i) rhs[i] = -grad[i];
    std::vector<double> step;
    if (!cholesky_solve(cov, n, rhs, step))
      throw Error(errkind::degenerate_system,
                  "singular moment covariance in Newton step");

    double step_norm = 0.0;
    double slope = 0.0;
    for (int i = 0; i < n; ++i) {
      step_norm = std::max(step_norm, std::abs(step[i]));
      slope += grad[i] * step[i];
    }
    grew = (step_norm > 2.0 * step_norm_prev) ? grew + 1 : 0;
    step_norm_prev = step_norm;

    double alpha = 1.0;
    std::vector<double> trial(n);
    double w_trial = 0.0, phi_trial = 0.0;
    std::vector<double> f_trial;
    bool accepted = false;
    for (int halving = 0; halving <= kMaxHalvings; ++halving) {
      for (int i = 0; i < n; ++i) trial[i] = lambda[i] + alpha * step[i];
      f_trial = gibbs_values(trial, sys, w_trial);
      phi_trial = dual(w_trial, trial);
      if (std::isfinite(phi_trial) && phi_trial <= phi + kArmijo * alpha * slope) {
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted)
      throw Error(errkind::infeasible_target,
                  "line search stalled; target is outside the moment hull");

    lambda = trial;
    w = w_trial;
    f = std::move(f_trial);
    phi = phi_trial;
    q = moments_of(f, sys);
    cov = covariance_of(f, q, sys);
  }

  const char* reason = (grew >= 3)
                           ? "Newton step norms grew; target is outside the moment hull"
                           : "no convergence within max_iter";
  throw Error(errkind::infeasible_target, reason);
}

}  // namespace thermoscope
