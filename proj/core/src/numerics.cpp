#include "thermoscope/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "thermoscope/error.hpp"

namespace thermoscope {

double log_add_exp(double a, double b) {
  if (std::isinf(a) && a < 0) return b;
  if (std::isinf(b) && b < 0) return a;
  const double hi = std::max(a, b);
  const double lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

double log_sum_exp_weighted(std::span<const double> x, std::span<const double> w) {
  if (x.size() != w.size())
    throw Error(errkind::dimension, "log_sum_exp_weighted: size mismatch");
  double shift = -std::numeric_limits<double>::infinity();
  for (double v : x) shift = std::max(shift, v);
  if (std::isinf(shift)) return shift;
  double acc = 0.0, comp = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double term = w[i] * std::exp(x[i] - shift);
    const double t = acc + term;
    comp += (std::abs(acc) >= std::abs(term)) ? (acc - t) + term : (term - t) + acc;
    acc = t;
  }
  return shift + std::log(acc + comp);
}

// Shewchuk's grow-expansion: the partials hold an exact representation of the
// running sum, so the final result does not depend on summation order.
double exact_sum(std::span<const double> values) {
  std::vector<double> partials;
  for (double x : values) {
    std::size_t used = 0;
    for (double y : partials) {
      if (std::abs(x) < std::abs(y)) std::swap(x, y);
      const double hi = x + y;
      const double lo = y - (hi - x);
      if (lo != 0.0) partials[used++] = lo;
      x = hi;
    }
    partials.resize(used);
    partials.push_back(x);
  }
  double total = 0.0;
  for (double p : partials) total += p;
  return total;
}

double compensated_sum(std::span<const double> values) {
  double acc = 0.0, comp = 0.0;
  for (double v : values) {
    const double t = acc + v;
    comp += (std::abs(acc) >= std::abs(v)) ? (acc - t) + v : (v - t) + acc;
    acc = t;
  }
  return acc + comp;
}

void gauss_legendre(int n, double a, double b,
                    std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Newton on P_n with the Chebyshev-based initial guess.
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = mid - half * x;
    nodes[n - 1 - i] = mid + half * x;
    const double wgt = 2.0 * half / ((1.0 - x * x) * pp * pp);
    weights[i] = wgt;
    weights[n - 1 - i] = wgt;
  }
}

namespace {

double gauss15(const std::function<double(double)>& f, double a, double b) {
  static std::vector<double> ref_nodes, ref_weights;
  if (ref_nodes.empty()) gauss_legendre(15, -1.0, 1.0, ref_nodes, ref_weights);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double acc = 0.0;
  for (int i = 0; i < 15; ++i)
    acc += ref_weights[i] * f(mid + half * ref_nodes[i]);
  return acc * half;
}

double adaptive_gauss_rec(const std::function<double(double)>& f, double a,
                          double b, double whole, double tol, int depth) {
  const double mid = 0.5 * (a + b);
  const double left = gauss15(f, a, mid);
  const double right = gauss15(f, mid, b);
  const double delta = left + right - whole;
  if (depth > 48 || std::abs(delta) <= tol) return left + right;
  return adaptive_gauss_rec(f, a, mid, left, 0.5 * tol, depth + 1) +
         adaptive_gauss_rec(f, mid, b, right, 0.5 * tol, depth + 1);
}

}  // namespace

double adaptive_gauss(const std::function<double(double)>& f, double a, double b,
                      double tol) {
  if (a == b) return 0.0;
  const double whole = gauss15(f, a, b);
  const double scale = std::max(1.0, std::abs(whole));
  return adaptive_gauss_rec(f, a, b, whole, tol * scale, 0);
}

double solve_bracketed(const std::function<double(double)>& f,
                       const std::function<double(double)>& df,
                       double lo, double hi, double xtol) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0))
    throw Error(errkind::domain, "solve_bracketed: endpoints do not bracket a root");
  double x = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    double fx = f(x);
    if (fx == 0.0) return x;
    if ((fx > 0.0) == (fhi > 0.0)) {
      hi = x;
      fhi = fx;
    } else {
      lo = x;
      flo = fx;
    }
    if (std::abs(hi - lo) <= xtol) return 0.5 * (lo + hi);
    double next = 0.5 * (lo + hi);
    if (df) {
      const double d = df(x);
      if (d != 0.0) {
        const double newton = x - fx / d;
        if (newton > lo && newton < hi) next = newton;
      }
    }
    x = next;
  }
  return x;
}

bool cholesky_solve(std::vector<double> a, int n, std::vector<double> b,
                    std::vector<double>& x) {
  for (int j = 0; j < n; ++j) {
    double d = a[j * n + j];
    for (int k = 0; k < j; ++k) d -= a[j * n + k] * a[j * n + k];
    if (!(d > 0.0)) return false;
    d = std::sqrt(d);
    a[j * n + j] = d;
    for (int i = j + 1; i < n; ++i) {
      double s = a[i * n + j];
      for (int k = 0; k < j; ++k) s -= a[i * n + k] * a[j * n + k];
      a[i * n + j] = s / d;
    }
  }
  // forward then backward substitution
  for (int i = 0; i < n; ++i) {
    double s = b[i];
    for (int k = 0; k < i; ++k) s -= a[i * n + k] * b[k];
    b[i] = s / a[i * n + i];
  }
  x.assign(n, 0.0);
  for (int i = n - 1; i >= 0; --i) {
    double s = b[i];
    for (int k = i + 1; k < n; ++k) s -= a[k * n + i] * x[k];
    x[i] = s / a[i * n + i];
  }
  return true;
}

std::vector<double> symmetric_eigenvalues(std::vector<double> a, int n) {
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += a[i * n + j] * a[i * n + j];
    if (off < 1e-300) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (apq == 0.0) continue;
        const double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a[k * n + p];
          const double akq = a[k * n + q];
          a[k * n + p] = c * akp - s * akq;
          a[k * n + q] = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a[p * n + k];
          const double aqk = a[q * n + k];
          a[p * n + k] = c * apk - s * aqk;
          a[q * n + k] = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> eig(n);
  for (int i = 0; i < n; ++i) eig[i] = a[i * n + i];
  std::sort(eig.begin(), eig.end());
  return eig;
}

std::vector<double> cumulative_trapezoid(std::span<const double> x,
                                         std::span<const double> y) {
  if (x.size() != y.size())
    throw Error(errkind::dimension, "cumulative_trapezoid: size mismatch");
  std::vector<double> out(x.size(), 0.0);
  for (std::size_t k = 1; k < x.size(); ++k)
    out[k] = out[k - 1] + 0.5 * (y[k - 1] + y[k]) * (x[k] - x[k - 1]);
  return out;
}

}  // namespace thermoscope
