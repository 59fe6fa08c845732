#include "thermoscope/measure.hpp"

#include <cmath>
#include <string>

#include "thermoscope/error.hpp"
#include "thermoscope/numerics.hpp"

namespace thermoscope {

QuadratureMeasure::QuadratureMeasure(std::vector<double> coords,
                                     std::vector<double> weights, int dim)
    : coords_(std::move(coords)), weights_(std::move(weights)), dim_(dim) {
  if (dim_ < 1) throw Error(errkind::dimension, "measure dimension must be >= 1");
  if (coords_.size() != weights_.size() * static_cast<std::size_t>(dim_))
    throw Error(errkind::dimension, "node/weight count mismatch");
  if (weights_.empty()) throw Error(errkind::dimension, "measure has no nodes");
  for (double w : weights_) {
    if (!(w > 0.0)) throw Error(errkind::input, "weights must be positive");
  }
  for (double c : coords_) {
    if (!std::isfinite(c)) throw Error(errkind::input, "node coordinates must be finite");
  }
  total_mass_ = compensated_sum(weights_);
}

QuadratureMeasure QuadratureMeasure::midpoint_1d(double a, double b, std::size_t n) {
  if (!(b > a) || n == 0)
    throw Error(errkind::input, "midpoint_1d: need b > a and n >= 1");
  const double h = (b - a) / static_cast<double>(n);
  std::vector<double> coords(n), weights(n, h);
  for (std::size_t i = 0; i < n; ++i)
    coords[i] = a + (static_cast<double>(i) + 0.5) * h;
  return QuadratureMeasure(std::move(coords), std::move(weights), 1);
}

QuadratureMeasure QuadratureMeasure::product(const QuadratureMeasure& first,
                                             const QuadratureMeasure& second) {
  const int dim = first.dim() + second.dim();
  std::vector<double> coords, weights;
  coords.reserve(first.size() * second.size() * dim);
  weights.reserve(first.size() * second.size());
  for (std::size_t i = 0; i < first.size(); ++i) {
    for (std::size_t j = 0; j < second.size(); ++j) {
      for (double c : first.node(i)) coords.push_back(c);
      for (double c : second.node(j)) coords.push_back(c);
      weights.push_back(first.weights()[i] * second.weights()[j]);
    }
  }
  return QuadratureMeasure(std::move(coords), std::move(weights), dim);
}

Observable::Observable(std::string label_in, std::vector<double> values_in)
    : label(std::move(label_in)), values(std::move(values_in)) {
  for (double v : values) {
    if (!std::isfinite(v))
      throw Error(errkind::input, "observable '" + label + "' has non-finite values");
  }
}

Density::Density(std::vector<double> values,
                 std::shared_ptr<const QuadratureMeasure> measure)
    : values_(std::move(values)), measure_(std::move(measure)) {
  if (!measure_) throw Error(errkind::input, "density requires a measure");
  if (values_.size() != measure_->size())
    throw Error(errkind::dimension, "density values do not match measure nodes");
  std::vector<double> terms(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!(values_[i] >= 0.0))
      throw Error(errkind::input, "density values must be nonnegative");
    terms[i] = values_[i] * measure_->weights()[i];
  }
  const double mass = compensated_sum(terms);
  if (std::abs(mass - 1.0) > kNormalizationTol)
    throw Error(errkind::normalization,
                "density mass " + std::to_string(mass) + " is not 1");
}

double integrate(const QuadratureMeasure& m, const Observable& g) {
  if (g.values.size() != m.size())
    throw Error(errkind::dimension,
                "observable '" + g.label + "' not defined on this measure");
  std::vector<double> terms(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) terms[i] = g.values[i] * m.weights()[i];
  return compensated_sum(terms);
}

double expectation(const Density& rho, const Observable& f) {
  const QuadratureMeasure& m = rho.measure();
  if (f.values.size() != m.size())
    throw Error(errkind::dimension,
                "observable '" + f.label + "' not defined on this measure");
  std::vector<double> terms(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    terms[i] = f.values[i] * rho.values()[i] * m.weights()[i];
  return compensated_sum(terms);
}

double relative_entropy(const Density& rho) {
  const QuadratureMeasure& m = rho.measure();
  std::vector<double> terms(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    const double f = rho.values()[i];
    terms[i] = (f > 0.0) ? -f * std::log(f) * m.weights()[i] : 0.0;
  }
  return compensated_sum(terms);
}

Density normalize(std::vector<double> values,
                  std::shared_ptr<const QuadratureMeasure> m) {
  if (!m) throw Error(errkind::input, "normalize requires a measure");
  if (values.size() != m->size())
    throw Error(errkind::dimension, "values do not match measure nodes");
  std::vector<double> terms(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] >= 0.0))
      throw Error(errkind::input, "normalize requires nonnegative values");
    terms[i] = values[i] * m->weights()[i];
  }
  const double mass = compensated_sum(terms);
  if (!(mass > 0.0))
    throw Error(errkind::empty_density, "cannot normalize an all-zero density");
  for (double& v : values) v /= mass;
  return Density(std::move(values), std::move(m));
}

std::size_t UniformGrid::size() const {
  std::size_t n = 1;
  for (std::size_t s : shape) n *= s;
  return n;
}

std::shared_ptr<const QuadratureMeasure> UniformGrid::measure() const {
  const int d = dim();
  if (d < 1 || lo.size() != shape.size() || hi.size() != shape.size())
    throw Error(errkind::input, "inconsistent grid specification");
  double cell = 1.0;
  for (int k = 0; k < d; ++k) cell *= spacing(k);
  const std::size_t n = size();
  std::vector<double> coords(n * d);
  std::vector<double> weights(n, cell);
  std::vector<std::size_t> idx(d, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (int k = 0; k < d; ++k)
      coords[i * d + k] = lo[k] + (static_cast<double>(idx[k]) + 0.5) * spacing(k);
    for (int k = d - 1; k >= 0; --k) {
      if (++idx[k] < shape[k]) break;
      idx[k] = 0;
    }
  }
  return std::make_shared<QuadratureMeasure>(std::move(coords), std::move(weights), d);
}

double AffineMap::determinant(int dim) const {
  std::vector<double> a = matrix;
  if (a.size() != static_cast<std::size_t>(dim) * dim)
    throw Error(errkind::dimension, "affine matrix size mismatch");
  double det = 1.0;
  for (int c = 0; c < dim; ++c) {
    int pivot = c;
    for (int r = c + 1; r < dim; ++r)
      if (std::abs(a[r * dim + c]) > std::abs(a[pivot * dim + c])) pivot = r;
    if (pivot != c) {
      for (int k = 0; k < dim; ++k) std::swap(a[c * dim + k], a[pivot * dim + k]);
      det = -det;
    }
    const double p = a[c * dim + c];
    if (p == 0.0) return 0.0;
    det *= p;
    for (int r = c + 1; r < dim; ++r) {
      const double factor = a[r * dim + c] / p;
      for (int k = c; k < dim; ++k) a[r * dim + k] -= factor * a[c * dim + k];
    }
  }
  return det;
}

std::pair<double, double> shear_invariance_check(const Density& rho,
                                                 const UniformGrid& grid,
                                                 const AffineMap& map) {
  const int d = grid.dim();
  if (rho.measure().size() != grid.size() || rho.measure().dim() != d)
    throw Error(errkind::dimension, "density does not live on the given grid");
  const double det = map.determinant(d);
  if (std::abs(std::abs(det) - 1.0) > 1e-12)
    throw Error(errkind::domain, "map Jacobian determinant is not 1");
  if (map.shift.size() != static_cast<std::size_t>(d))
    throw Error(errkind::dimension, "affine shift size mismatch");

  const double before = relative_entropy(rho);

  // Deposit each node's mass at its image point with multilinear weights,
  // wrapping periodically.
  std::vector<double> mass(grid.size(), 0.0);
  std::vector<double> frac(d);
  std::vector<std::size_t> base(d);
  const auto& m = rho.measure();
  for (std::size_t i = 0; i < m.size(); ++i) {
    const auto x = m.node(i);
    for (int r = 0; r < d; ++r) {
      double y = map.shift[r];
      for (int c = 0; c < d; ++c) y += map.matrix[r * d + c] * x[c];
      double u = (y - grid.lo[r]) / grid.spacing(r) - 0.5;  // node-centered index
      u = std::fmod(u, static_cast<double>(grid.shape[r]));
      if (u < 0.0) u += static_cast<double>(grid.shape[r]);
      const double fl = std::floor(u);
      base[r] = static_cast<std::size_t>(fl) % grid.shape[r];
      frac[r] = u - fl;
    }
    const double node_mass = rho.values()[i] * m.weights()[i];
    const int corners = 1 << d;
    for (int corner = 0; corner < corners; ++corner) {
      double w = 1.0;
      std::size_t flat = 0;
      for (int r = 0; r < d; ++r) {
        const bool upper = (corner >> r) & 1;
        w *= upper ? frac[r] : 1.0 - frac[r];
        const std::size_t ir = (base[r] + (upper ? 1 : 0)) % grid.shape[r];
        flat = flat * grid.shape[r] + ir;
      }
      mass[flat] += node_mass * w;
    }
  }

  std::vector<double> values(mass.size());
  for (std::size_t i = 0; i < mass.size(); ++i)
    values[i] = mass[i] / m.weights()[i];
  const Density pushed = normalize(std::move(values), rho.measure_ptr());
  return {before, relative_entropy(pushed)};
}

}  // namespace thermoscope
