#include "slzeros/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <sstream>

#include <boost/math/tools/minima.hpp>

#include "slzeros/errors.hpp"

namespace slzeros {

namespace {

// A sign change between two same-sign nodes: P(lo), P(hi) share a sign that
// P(mid) does not.
struct HiddenPair {
  double lo = 0.0, mid = 0.0, hi = 0.0;
  bool neg_lo = false;
};

struct LevelScan {
  int count = 0;
  bool interior_exact_zero = false;
  int tangencies = 0;
  std::vector<std::pair<std::size_t, std::size_t>> change_cells;
  std::vector<std::size_t> zero_nodes;
  std::vector<HiddenPair> hidden;
};

LevelScan scan(std::span<const double> v, const ZeroCountOptions& opt) {
  LevelScan out;
  const std::size_t m = v.size();
  constexpr std::size_t none = static_cast<std::size_t>(-1);
  std::size_t prev = none;
  for (std::size_t i = 0; i < m; ++i) {
    if (std::abs(v[i]) <= opt.exact_zero_tol) {
      if (i != 0 && i + 1 != m) out.interior_exact_zero = true;
      out.zero_nodes.push_back(i);
      ++out.count;
      prev = none;
      continue;
    }
    if (prev != none && (v[prev] < 0.0) != (v[i] < 0.0)) {
      out.change_cells.emplace_back(prev, i);
      ++out.count;
    }
    prev = i;
  }
  return out;
}

// Same-sign local minima of |P| at the nodes: sign * P is minimized over the
// adjacent cells. A negative minimum is a pair of zeros inside one grid step;
// a minimum below tangency_tol is a near-tangency.
void resolve_dips(const Evaluator& p, std::span<const double> x, std::span<const double> v,
                  const ZeroCountOptions& opt, LevelScan& out) {
  const std::size_t m = v.size();
  auto live = [&](std::size_t i) { return std::abs(v[i]) > opt.exact_zero_tol; };
  auto same = [&](std::size_t i, std::size_t j) { return (v[i] < 0.0) == (v[j] < 0.0); };
  constexpr int bits = std::numeric_limits<double>::digits / 2;
  for (std::size_t i = 0; i < m; ++i) {
    if (!live(i)) continue;
    const std::size_t lo = i == 0 ? 0 : i - 1;
    const std::size_t hi = i + 1 == m ? i : i + 1;
    if (lo == hi) continue;
    if (lo != i && !(live(lo) && same(lo, i) && std::abs(v[i]) < std::abs(v[lo]))) continue;
    if (hi != i && !(live(hi) && same(hi, i) && std::abs(v[i]) <= std::abs(v[hi]))) continue;
    const double s = v[i] < 0.0 ? -1.0 : 1.0;
    std::uintmax_t iters = 100;
    const auto [xm, fm] = boost::math::tools::brent_find_minima(
        [&](double t) { return s * p(t); }, x[lo], x[hi], bits, iters);
    if (fm < 0.0) {
      out.hidden.push_back({x[lo], xm, x[hi], v[i] < 0.0});
      out.count += 2;
    } else if (fm < opt.tangency_tol) {
      ++out.tangencies;
    }
  }
}

double bisect(const Evaluator& p, double a, double b, bool neg_a, double tol) {
  while (b - a > tol) {
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) break;
    const double fm = p(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == neg_a) {
      a = mid;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

std::vector<double> shifted_grid(Interval iv, int cells) {
  const double h = (iv.hi - iv.lo) / cells;
  std::vector<double> pts;
  pts.reserve(static_cast<std::size_t>(cells) + 2);
  pts.push_back(iv.lo);
  for (int i = 0; i < cells; ++i) pts.push_back(iv.lo + (i + 0.5) * h);
  pts.push_back(iv.hi);
  return pts;
}

struct Level {
  std::vector<double> points;
  std::vector<double> values;
  LevelScan scan;
};

Level sample_level(const Evaluator& p, Interval iv, int cells, const ZeroCountOptions& opt) {
  Level lvl;
  lvl.points = count_grid(iv, cells);
  lvl.values.resize(lvl.points.size());
  for (std::size_t i = 0; i < lvl.points.size(); ++i) lvl.values[i] = p(lvl.points[i]);
  lvl.scan = scan(lvl.values, opt);
  if (lvl.scan.interior_exact_zero) {
    lvl.points = shifted_grid(iv, cells);
    lvl.values.resize(lvl.points.size());
    for (std::size_t i = 0; i < lvl.points.size(); ++i) lvl.values[i] = p(lvl.points[i]);
    lvl.scan = scan(lvl.values, opt);
  }
  resolve_dips(p, lvl.points, lvl.values, opt, lvl.scan);
  return lvl;
}

ZeroCountResult finish(const Evaluator& p, Level& lvl, int grid_factor, bool stable,
                       const ZeroCountOptions& opt) {
  ZeroCountResult res;
  res.count = lvl.scan.count;
  res.grid_factor = grid_factor;
  res.stable = stable;
  res.near_tangencies = lvl.scan.tangencies;
  if (opt.locate) {
    for (std::size_t i : lvl.scan.zero_nodes) res.locations.push_back(lvl.points[i]);
    for (auto [i, j] : lvl.scan.change_cells) {
      res.locations.push_back(
          bisect(p, lvl.points[i], lvl.points[j], lvl.values[i] < 0.0, opt.locate_tol));
    }
    for (const auto& h : lvl.scan.hidden) {
      res.locations.push_back(bisect(p, h.lo, h.mid, h.neg_lo, opt.locate_tol));
      res.locations.push_back(bisect(p, h.mid, h.hi, !h.neg_lo, opt.locate_tol));
    }
    std::sort(res.locations.begin(), res.locations.end());
  }
  return res;
}

ZeroCountResult refine_levels(const Evaluator& p, Interval iv, int base,
                              std::optional<Level> level0, std::optional<Level> level1,
                              const ZeroCountOptions& opt) {
  std::optional<Level> prev;
  for (int j = 0; j <= opt.max_doublings; ++j) {
    const int cells = base << j;
    Level cur;
    if (j == 0 && level0) {
      cur = std::move(*level0);
    } else if (j == 1 && level1) {
      cur = std::move(*level1);
    } else {
      cur = sample_level(p, iv, cells, opt);
    }
    const int factor = opt.grid_factor << j;
    if (prev && prev->scan.count == cur.scan.count) return finish(p, cur, factor, true, opt);
    if (j == opt.max_doublings) return finish(p, cur, factor, false, opt);
    prev = std::move(cur);
  }
  // max_doublings < 0 is rejected before reaching here.
  throw PreconditionError("count_zeros: invalid max_doublings");
}

void check_args(Interval iv, int n_hint, const ZeroCountOptions& opt) {
  if (n_hint < 1) throw PreconditionError("count_zeros: n_hint must be >= 1");
  if (!(iv.hi > iv.lo)) throw PreconditionError("count_zeros: empty interval");
  if (opt.grid_factor < 1 || opt.max_doublings < 0) {
    throw PreconditionError("count_zeros: invalid grid options");
  }
}

}  // namespace

int base_cells(Interval iv, int n_hint, const ZeroCountOptions& opt) {
  const double frac = (iv.hi - iv.lo) / kTwoPi;
  const double cells = std::ceil(static_cast<double>(opt.grid_factor) * n_hint * frac - 1e-9);
  return std::max(8, static_cast<int>(cells));
}

std::vector<double> count_grid(Interval iv, int cells) {
  std::vector<double> pts(static_cast<std::size_t>(cells) + 1);
  const double h = (iv.hi - iv.lo) / cells;
  for (int i = 0; i <= cells; ++i) pts[static_cast<std::size_t>(i)] = iv.lo + i * h;
  pts.back() = iv.hi;
  return pts;
}

ZeroCountResult count_zeros(const Evaluator& p, Interval iv, int n_hint,
                            const ZeroCountOptions& opt) {
  check_args(iv, n_hint, opt);
  const int base = base_cells(iv, n_hint, opt);
  return refine_levels(p, iv, base, std::nullopt, std::nullopt, opt);
}

ZeroCountResult count_zeros_presampled(std::span<const double> fine, const Evaluator& p,
                                       Interval iv, int n_hint, const ZeroCountOptions& opt) {
  check_args(iv, n_hint, opt);
  const int base = base_cells(iv, n_hint, opt);
  if (fine.size() != static_cast<std::size_t>(2 * base) + 1) {
    std::ostringstream msg;
    msg << "count_zeros_presampled: expected " << 2 * base + 1 << " samples, got "
        << fine.size();
    throw PreconditionError(msg.str());
  }
  Level l0, l1;
  l0.points = count_grid(iv, base);
  l1.points = count_grid(iv, 2 * base);
  l1.values.assign(fine.begin(), fine.end());
  l0.values.resize(static_cast<std::size_t>(base) + 1);
  for (std::size_t i = 0; i < l0.values.size(); ++i) l0.values[i] = fine[2 * i];
  l0.scan = scan(l0.values, opt);
  l1.scan = scan(l1.values, opt);
  if (l0.scan.interior_exact_zero || l1.scan.interior_exact_zero) {
    // Rare: the evaluator path recounts on the shifted grid.
    return count_zeros(p, iv, n_hint, opt);
  }
  resolve_dips(p, l0.points, l0.values, opt, l0.scan);
  if (opt.max_doublings == 0) return finish(p, l0, opt.grid_factor, false, opt);
  resolve_dips(p, l1.points, l1.values, opt, l1.scan);
  return refine_levels(p, iv, base, std::move(l0), std::move(l1), opt);
}

double standardize_count(double count, double expected_mean, int n) {
  if (n < 1) throw PreconditionError("standardize_count: n must be >= 1");
  return (count - expected_mean) / std::sqrt(static_cast<double>(n));
}

std::pair<int, int> count_zeros_changed_variable(const RandomProcess& x_raw, double t_end,
                                                 const ZeroCountOptions& options) {
  if (x_raw.kind() != ProcessKind::XRaw) {
    throw PreconditionError("count_zeros_changed_variable: expected an X_n_raw process");
  }
  if (!(t_end > 0.0 && t_end <= kTwoPi)) {
    throw PreconditionError("count_zeros_changed_variable: T must lie in (0, 2pi]");
  }
  const auto& omega = *x_raw.model().omega();
  const auto& draw = x_raw.draw();
  const int n = x_raw.n();
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));

  auto y_proc = [&](double y) {
    const double x = omega.inverse(y);
    double acc = 0.0;
    for (int k = 1; k <= n; ++k) {
      const double phase = 0.5 * k * y;
      acc += draw.a[static_cast<std::size_t>(k - 1)] * std::cos(phase) +
             draw.b[static_cast<std::size_t>(k - 1)] * std::sin(phase);
    }
    return norm * acc / std::sqrt(omega.weight()(x));
  };
  auto x_proc = [&](double x) { return x_raw.value(x); };

  const auto in_x = count_zeros(x_proc, {0.0, t_end}, n, options);
  const auto in_y = count_zeros(y_proc, {0.0, omega(t_end)}, n, options);
  if (in_x.count != in_y.count) {
    std::ostringstream msg;
    msg << "change of variables: N(X_n^o, [0, " << t_end << "]) = " << in_x.count
        << " but N(Y_n^o, [0, " << omega(t_end) << "]) = " << in_y.count;
    throw InvariantError(msg.str());
  }
  return {in_x.count, in_y.count};
}

}  // namespace slzeros
