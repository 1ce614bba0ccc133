#pragma once

#include <cstddef>
#include <functional>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

namespace slzeros {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Default number of samples of [0, 2pi] shared by quadrature and eigenfunction tables.
inline constexpr std::size_t kDefaultGridCount = 8192;

/// Uniform sampling of [0, 2pi]; first point 0, last point exactly 2pi.
class Grid {
 public:
  explicit Grid(std::size_t count = kDefaultGridCount);

  std::size_t count() const { return points_.size(); }
  std::size_t intervals() const { return points_.size() - 1; }
  double spacing() const { return spacing_; }
  double operator[](std::size_t i) const { return points_[i]; }
  const std::vector<double>& points() const { return points_; }

  /// Index of the cell [x_i, x_{i+1}] containing x (clamped to the last cell).
  std::size_t cell(double x) const;

 private:
  std::vector<double> points_;
  double spacing_;
};

/// A strictly positive C^2 weight on [0, 2pi] with analytic first and second
/// derivatives.
class WeightFunction {
 public:
  using Fn = std::function<double(double)>;

  WeightFunction(std::string name, Fn value, Fn deriv1, Fn deriv2);

  double operator()(double x) const { return value_(x); }
  double value(double x) const { return value_(x); }
  double deriv1(double x) const { return deriv1_(x); }
  double deriv2(double x) const { return deriv2_(x); }
  const std::string& name() const { return name_; }

  /// Same shape multiplied by `factor` (derivatives rescaled accordingly).
  WeightFunction scaled(double factor) const;

  /// Integral over [0, 2pi] by 5-point Gauss-Legendre on every grid cell.
  double mass(std::size_t grid_count = kDefaultGridCount) const;

 private:
  std::string name_;
  Fn value_;
  Fn deriv1_;
  Fn deriv2_;
};

/// Rescales `raw` to total mass 2pi. Throws DomainError naming the first grid
/// point where the weight is not strictly positive (or not finite).
WeightFunction normalize_weight(const WeightFunction& raw,
                                std::size_t grid_count = kDefaultGridCount);

/// Potential of the normal-form operator q - d^2/dy^2 expressed in the original
/// variable: q = w''/(2 w^3) - (3/4) (w')^2 / w^4.
class Potential {
 public:
  explicit Potential(WeightFunction w) : weight_(std::move(w)) {}

  double operator()(double x) const;
  const WeightFunction& weight() const { return weight_; }

  /// Smallest value over the grid samples.
  double lower_bound(const Grid& grid) const;

 private:
  WeightFunction weight_;
};

/// Builds the potential and checks it is finite on `grid`; a NaN/Inf sample is
/// reported as a DomainError.
Potential weight_to_potential(const WeightFunction& w, const Grid& grid = Grid{});

/// The Liouville variable Omega(x) = int_0^x w(u) du and its inverse.
///
/// Omega is tabulated at the grid nodes with 5-point Gauss-Legendre per cell;
/// off-node values add a Gauss-Legendre integral over the partial cell, so the
/// quadrature error is at round-off level for the smooth preset weights.
class CumulativeWeight {
 public:
  explicit CumulativeWeight(WeightFunction w, std::size_t grid_count = kDefaultGridCount);

  const WeightFunction& weight() const { return weight_; }
  const Grid& grid() const { return grid_; }

  /// Omega(x) for x in [0, 2pi]; DomainError otherwise.
  double operator()(double x) const;

  /// The x in [0, 2pi] with Omega(x) = y, by bracketing + safeguarded Newton.
  double inverse(double y) const;

  /// Omega(2pi), the total mass.
  double total() const { return table_.back(); }

 private:
  WeightFunction weight_;
  Grid grid_;
  std::vector<double> table_;
};

inline double omega_cumulative(const CumulativeWeight& omega, double x) { return omega(x); }
inline double omega_inverse(const CumulativeWeight& omega, double y) { return omega.inverse(y); }

/// Names accepted by builtin_weight, in display order.
const std::vector<std::string>& builtin_weight_names();

/// Preset weights, already normalized to mass 2pi:
///   unit    w = 1
///   sine2   w = (2 + sin x) / 2
///   expcos  w proportional to exp(a cos x)
/// Unknown names raise ConfigError listing the presets.
WeightFunction builtin_weight(std::string_view name, double expcos_a = 0.5);

}  // namespace slzeros
