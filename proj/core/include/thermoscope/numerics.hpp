#ifndef THERMOSCOPE_NUMERICS_HPP
#define THERMOSCOPE_NUMERICS_HPP

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace thermoscope {

/// log(sum_i w_i * exp(x_i)) with a max shift; never forms raw exponentials
/// of large arguments. Weights must be positive.
double log_sum_exp_weighted(std::span<const double> x, std::span<const double> w);

/// log(exp(a) + exp(b)) without overflow.
double log_add_exp(double a, double b);

/// Order-independent, correctly rounded sum (Shewchuk expansion arithmetic).
/// Summing any permutation of the same values yields the identical double.
double exact_sum(std::span<const double> values);

/// Fast compensated (Neumaier) sum; deterministic for a fixed order.
double compensated_sum(std::span<const double> values);

/// Nodes and weights of the n-point Gauss-Legendre rule on [a, b].
void gauss_legendre(int n, double a, double b,
                    std::vector<double>& nodes, std::vector<double>& weights);

/// Adaptive Gauss-Legendre quadrature of f on [a, b] to absolute tolerance
/// tol (falls back to relative for large integrals).
double adaptive_gauss(const std::function<double(double)>& f, double a, double b,
                      double tol);

/// Root of f in the bracket [lo, hi] (f(lo), f(hi) of opposite sign) by
/// Newton steps safeguarded with bisection. df may be empty, in which case
/// plain bisection is used. Converges to |hi-lo| <= xtol.
double solve_bracketed(const std::function<double(double)>& f,
                       const std::function<double(double)>& df,
                       double lo, double hi, double xtol);

/// In-place Cholesky solve of the symmetric positive definite system
/// A x = b for small dense n x n matrices (row-major). Returns false if the
/// factorization breaks down (matrix not positive definite).
bool cholesky_solve(std::vector<double> a, int n, std::vector<double> b,
                    std::vector<double>& x);

/// Eigenvalues of a small symmetric matrix (row-major) by cyclic Jacobi,
/// ascending.
std::vector<double> symmetric_eigenvalues(std::vector<double> a, int n);

/// Cumulative trapezoid integral of y dx: out[0] = 0,
/// out[k] = out[k-1] + (y[k-1]+y[k])/2 * (x[k]-x[k-1]).
std::vector<double> cumulative_trapezoid(std::span<const double> x,
                                         std::span<const double> y);

}  // namespace thermoscope

#endif
