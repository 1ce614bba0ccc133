#include "slzeros/sl_core.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "slzeros/errors.hpp"

namespace slzeros {

namespace {

// 5-point Gauss-Legendre on [-1, 1].
constexpr std::array<double, 5> kGlNodes{-0.9061798459386640, -0.5384693101056831, 0.0,
                                         0.5384693101056831, 0.9061798459386640};
constexpr std::array<double, 5> kGlWeights{0.2369268850561891, 0.4786286704993665,
                                           0.5688888888888889, 0.4786286704993665,
                                           0.2369268850561891};

template <typename F>
double gauss_legendre(const F& f, double a, double b) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double sum = 0.0;
  for (std::size_t i = 0; i < kGlNodes.size(); ++i) {
    sum += kGlWeights[i] * f(mid + half * kGlNodes[i]);
  }
  return half * sum;
}

constexpr double kDomainSlack = 1e-12;

double clamp_to_domain(double x, const char* what) {
  if (!(x >= -kDomainSlack && x <= kTwoPi + kDomainSlack)) {
    std::ostringstream msg;
    msg << what << ": argument " << x << " outside [0, 2pi]";
    throw DomainError(msg.str());
  }
  return std::clamp(x, 0.0, kTwoPi);
}

}  // namespace

Grid::Grid(std::size_t count) {
  if (count < 2) throw PreconditionError("Grid: need at least two points");
  points_.resize(count);
  spacing_ = kTwoPi / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) points_[i] = static_cast<double>(i) * spacing_;
  points_.back() = kTwoPi;
}

std::size_t Grid::cell(double x) const {
  if (x <= 0.0) return 0;
  const auto i = static_cast<std::size_t>(x / spacing_);
  return std::min(i, intervals() - 1);
}

WeightFunction::WeightFunction(std::string name, Fn value, Fn deriv1, Fn deriv2)
    : name_(std::move(name)),
      value_(std::move(value)),
      deriv1_(std::move(deriv1)),
      deriv2_(std::move(deriv2)) {}

WeightFunction WeightFunction::scaled(double factor) const {
  return WeightFunction(
      name_, [f = value_, factor](double x) { return factor * f(x); },
      [f = deriv1_, factor](double x) { return factor * f(x); },
      [f = deriv2_, factor](double x) { return factor * f(x); });
}

double WeightFunction::mass(std::size_t grid_count) const {
  const Grid grid(grid_count);
  double total = 0.0;
  for (std::size_t i = 0; i < grid.intervals(); ++i) {
    total += gauss_legendre(value_, grid[i], grid[i + 1]);
  }
  return total;
}

WeightFunction normalize_weight(const WeightFunction& raw, std::size_t grid_count) {
  const Grid grid(grid_count);
  for (double x : grid.points()) {
    const double w = raw(x);
    if (!(w > 0.0) || !std::isfinite(w)) {
      std::ostringstream msg;
      msg << "weight '" << raw.name() << "' is not strictly positive at x = " << x
          << " (value " << w << ")";
      throw DomainError(msg.str());
    }
  }
  return raw.scaled(kTwoPi / raw.mass(grid_count));
}

double Potential::operator()(double x) const {
  const double w = weight_.value(x);
  const double w1 = weight_.deriv1(x);
  const double w2 = weight_.deriv2(x);
  const double w2inv = 1.0 / (w * w);
  return 0.5 * w2 * w2inv / w - 0.75 * w1 * w1 * w2inv * w2inv;
}

double Potential::lower_bound(const Grid& grid) const {
  double lo = std::numeric_limits<double>::infinity();
  for (double x : grid.points()) lo = std::min(lo, (*this)(x));
  return lo;
}

Potential weight_to_potential(const WeightFunction& w, const Grid& grid) {
  Potential q(w);
  for (double x : grid.points()) {
    const double v = q(x);
    if (!std::isfinite(v)) {
      std::ostringstream msg;
      msg << "potential of weight '" << w.name() << "' is not finite at x = " << x;
      throw DomainError(msg.str());
    }
  }
  return q;
}

CumulativeWeight::CumulativeWeight(WeightFunction w, std::size_t grid_count)
    : weight_(std::move(w)), grid_(grid_count), table_(grid_count, 0.0) {
  const auto& f = weight_;
  for (std::size_t i = 0; i + 1 < grid_.count(); ++i) {
    table_[i + 1] = table_[i] + gauss_legendre(f, grid_[i], grid_[i + 1]);
  }
}

double CumulativeWeight::operator()(double x) const {
  x = clamp_to_domain(x, "omega_cumulative");
  const std::size_t i = grid_.cell(x);
  return table_[i] + gauss_legendre(weight_, grid_[i], x);
}

double CumulativeWeight::inverse(double y) const {
  if (!(y >= -kDomainSlack && y <= total() + kDomainSlack)) {
    std::ostringstream msg;
    msg << "omega_inverse: argument " << y << " outside [0, " << total() << "]";
    throw DomainError(msg.str());
  }
  if (y <= 0.0) return 0.0;
  if (y >= total()) return kTwoPi;

  // Cell with table_[i] <= y < table_[i+1].
  const auto it = std::upper_bound(table_.begin(), table_.end(), y);
  std::size_t i = static_cast<std::size_t>(it - table_.begin());
  i = std::clamp<std::size_t>(i, 1, grid_.intervals()) - 1;

  double lo = grid_[i];
  double hi = grid_[i + 1];
  double x = lo + (hi - lo) * (y - table_[i]) / (table_[i + 1] - table_[i]);
  for (int iter = 0; iter < 60; ++iter) {
    const double r = table_[i] + gauss_legendre(weight_, grid_[i], x) - y;
    if (r > 0.0) {
      hi = x;
    } else {
      lo = x;
    }
    double next = x - r / weight_(x);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 1e-15 || hi - lo <= 1e-15) {
      x = next;
      break;
    }
    x = next;
  }
  return x;
}

const std::vector<std::string>& builtin_weight_names() {
  static const std::vector<std::string> names{"unit", "sine2", "expcos"};
  return names;
}

WeightFunction builtin_weight(std::string_view name, double expcos_a) {
  if (name == "unit") {
    return WeightFunction(
        "unit", [](double) { return 1.0; }, [](double) { return 0.0; },
        [](double) { return 0.0; });
  }
  if (name == "sine2") {
    WeightFunction raw(
        "sine2", [](double x) { return 2.0 + std::sin(x); }, [](double x) { return std::cos(x); },
        [](double x) { return -std::sin(x); });
    return normalize_weight(raw);
  }
  if (name == "expcos") {
    const double a = expcos_a;
    WeightFunction raw(
        "expcos", [a](double x) { return std::exp(a * std::cos(x)); },
        [a](double x) { return -a * std::sin(x) * std::exp(a * std::cos(x)); },
        [a](double x) {
          const double s = std::sin(x);
          return (a * a * s * s - a * std::cos(x)) * std::exp(a * std::cos(x));
        });
    return normalize_weight(raw);
  }
  std::ostringstream msg;
  msg << "unknown weight '" << name << "'; available presets:";
  for (const auto& n : builtin_weight_names()) msg << ' ' << n;
  throw ConfigError(msg.str());
}

}  // namespace slzeros
