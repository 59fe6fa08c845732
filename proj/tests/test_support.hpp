#ifndef THERMOSCOPE_TEST_SUPPORT_HPP
#define THERMOSCOPE_TEST_SUPPORT_HPP

#include <cmath>
#include <functional>
#include <random>
#include <vector>

namespace test_support {

inline std::mt19937_64 rng(unsigned seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& gen, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(gen);
}

inline double central_diff(const std::function<double(double)>& f, double x,
                           double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

/// One-sided derivative at x0 (side = +1 uses x0 + k h, side = -1 uses
/// x0 - k h) via Richardson extrapolation of the first-order difference;
/// handles steeply curved branches where a plain one-sided stencil is too
/// inaccurate.
inline double onesided_derivative(const std::function<double(double)>& f,
                                  double x0, double h0, int side,
                                  int levels = 5) {
  const double f0 = f(x0);
  std::vector<double> d(levels);
  double h = h0;
  for (int k = 0; k < levels; ++k) {
    d[k] = side * (f(x0 + side * h) - f0) / h;
    h *= 0.5;
  }
  // Neville tableau: difference error is c1 h + c2 h^2 + ...
  for (int m = 1; m < levels; ++m) {
    const double factor = std::pow(2.0, m);
    for (int k = levels - 1; k >= m; --k)
      d[k] = (factor * d[k] - d[k - 1]) / (factor - 1.0);
  }
  return d[levels - 1];
}

}  // namespace test_support

#endif
