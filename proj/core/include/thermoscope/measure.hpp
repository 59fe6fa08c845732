#ifndef THERMOSCOPE_MEASURE_HPP
#define THERMOSCOPE_MEASURE_HPP

#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace thermoscope {

/// Discrete representation of a reference measure on a phase-space domain:
/// quadrature nodes in R^d with positive weights (the measure of the cell
/// each node stands for). Immutable after construction.
class QuadratureMeasure {
public:
  QuadratureMeasure(std::vector<double> coords, std::vector<double> weights,
                    int dim);

  int dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return weights_.size(); }
  double total_mass() const noexcept { return total_mass_; }
  std::span<const double> weights() const noexcept { return weights_; }
  std::span<const double> node(std::size_t i) const {
    return std::span<const double>(coords_).subspan(i * dim_, dim_);
  }
  std::span<const double> coords() const noexcept { return coords_; }

  /// Uniform midpoint rule on [a, b] with n cells of weight (b-a)/n.
  static QuadratureMeasure midpoint_1d(double a, double b, std::size_t n);

  /// Tensor product of two measures; node coordinates are concatenated.
  static QuadratureMeasure product(const QuadratureMeasure& first,
                                   const QuadratureMeasure& second);

private:
  std::vector<double> coords_;   // flat, size() * dim
  std::vector<double> weights_;  // all positive
  int dim_;
  double total_mass_;
};

/// Pointwise evaluation of an observable F on the nodes of a measure.
struct Observable {
  Observable(std::string label, std::vector<double> values);

  std::string label;
  std::vector<double> values;
};

/// Radon-Nikodym values f of a probability density rho = f nu0 at the nodes
/// of a reference measure; integrates to 1 within 1e-12.
class Density {
public:
  Density(std::vector<double> values,
          std::shared_ptr<const QuadratureMeasure> measure);

  const QuadratureMeasure& measure() const noexcept { return *measure_; }
  std::shared_ptr<const QuadratureMeasure> measure_ptr() const { return measure_; }
  std::span<const double> values() const noexcept { return values_; }

  static constexpr double kNormalizationTol = 1e-12;

private:
  std::vector<double> values_;
  std::shared_ptr<const QuadratureMeasure> measure_;
};

/// Quadrature integral of g against the reference measure: sum g_i w_i.
double integrate(const QuadratureMeasure& m, const Observable& g);

/// Macroscopic average <F>_rho = sum F_i f_i w_i.
double expectation(const Density& rho, const Observable& f);

/// Relative information entropy S(rho) = -sum f log f w, with 0 log 0 = 0.
double relative_entropy(const Density& rho);

/// Scales nonnegative values to unit mass against m. All-zero input is an
/// empty-density error.
Density normalize(std::vector<double> values,
                  std::shared_ptr<const QuadratureMeasure> m);

/// Uniform node-centered grid over a periodic box, the discrete stand-in
/// for a Lebesgue reference measure on [lo, hi)^d.
struct UniformGrid {
  std::vector<double> lo;
  std::vector<double> hi;
  std::vector<std::size_t> shape;

  int dim() const { return static_cast<int>(shape.size()); }
  double spacing(int k) const {
    return (hi[k] - lo[k]) / static_cast<double>(shape[k]);
  }
  std::size_t size() const;
  std::shared_ptr<const QuadratureMeasure> measure() const;
};

/// Volume-preserving affine map x -> A x + b (row-major A, |det A| = 1).
struct AffineMap {
  std::vector<double> matrix;
  std::vector<double> shift;

  double determinant(int dim) const;
};

/// Pushes rho forward through a unit-Jacobian affine map, re-bins the node
/// masses onto the same periodic grid, and returns the entropy before and
/// after. The drift is pure re-binning error and shrinks under refinement.
std::pair<double, double> shear_invariance_check(const Density& rho,
                                                 const UniformGrid& grid,
                                                 const AffineMap& map);

}  // namespace thermoscope

#endif
