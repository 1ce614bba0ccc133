#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "slzeros/ensembles.hpp"
#include "slzeros/sl_core.hpp"

namespace slzeros {

struct Interval {
  double lo = 0.0;
  double hi = kTwoPi;
};

struct ZeroCountOptions {
  /// Base grid has grid_factor * n_hint cells.
  int grid_factor = 16;
  int max_doublings = 3;
  /// Refine each sign change by bisection and report locations.
  bool locate = true;
  double locate_tol = 1e-12;
  /// |P| at or below this at a node counts as an exact zero there.
  double exact_zero_tol = 1e-13;
  /// Local |P| minima below this without a sign change are logged, not counted.
  double tangency_tol = 1e-9;
};

struct ZeroCountResult {
  int count = 0;
  std::vector<double> locations;
  /// Cells per n_hint on the finest grid that was scanned.
  int grid_factor = 0;
  /// The last grid doubling did not change the count.
  bool stable = false;
  /// Near-tangencies seen on the finest grid (not counted).
  int near_tangencies = 0;
};

using Evaluator = std::function<double(double)>;

/// Cells of the base (undoubled) grid: grid_factor * n_hint scaled by the
/// interval length relative to 2pi, at least 8.
int base_cells(Interval interval, int n_hint, const ZeroCountOptions& options);

/// Nodes lo + i (hi - lo) / cells, i = 0..cells, with the last node exactly hi.
std::vector<double> count_grid(Interval interval, int cells);

/// Counts zeros of a continuous function on a closed interval by sign changes
/// on a uniform grid, doubling the grid until two consecutive counts agree.
/// At each same-sign local minimum of |P| on the grid, sign(P) P is minimized
/// over the two adjacent cells (Brent); a negative minimum adds the pair of
/// zeros the grid stepped over, a minimum below tangency_tol is a logged
/// near-tangency.
/// An exact zero at an interior node triggers a recount on the grid shifted by
/// half a cell; exact zeros at the endpoints are counted as zeros.
ZeroCountResult count_zeros(const Evaluator& p, Interval interval, int n_hint,
                            const ZeroCountOptions& options = {});

/// Same algorithm, with the first two levels supplied as samples on the
/// doubled grid (2 * grid_factor * n_hint cells, endpoints included). `p` is
/// called for dip minimization, bisection, refinement and shifted recounts.
ZeroCountResult count_zeros_presampled(std::span<const double> fine_values, const Evaluator& p,
                                       Interval interval, int n_hint,
                                       const ZeroCountOptions& options = {});

/// (N - expected) / sqrt(n).
double standardize_count(double count, double expected_mean, int n);

/// Counts N(X_n^o, [0, T]) on the x axis and N(Y_n^o, [0, Omega(T)]) on the
/// Liouville axis, where Y_n^o(y) = X_n^o(Omega^{-1}(y)) is evaluated through
/// its trigonometric form. Throws InvariantError if the counts differ.
std::pair<int, int> count_zeros_changed_variable(const RandomProcess& x_raw, double t_end,
                                                 const ZeroCountOptions& options = {});

}  // namespace slzeros
