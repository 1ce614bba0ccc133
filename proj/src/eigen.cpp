#include "slzeros/eigen.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <numbers>
#include <sstream>
#include <thread>

#include <boost/numeric/odeint.hpp>

#include "slzeros/errors.hpp"

namespace slzeros {

namespace odeint = boost::numeric::odeint;

namespace {

using PhaseState = std::array<double, 1>;
using FullState = std::array<double, 2>;  // (theta, log rho)

struct PruferSystem {
  const CumulativeWeight* omega;
  Potential q;
  double lambda;
  double scale;

  // d/dx = w(x) d/dy.
  void phase(double theta, double x, double& dtheta, double& dlog) const {
    const double w = omega->weight()(x);
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const double rate = (lambda - q(x)) / scale;
    dtheta = w * (scale * c * c + rate * s * s);
    dlog = w * (scale - rate) * s * c;
  }
};

double initial_phase(BoundaryCondition bc) {
  return bc == BoundaryCondition::D ? 0.0 : 0.5 * std::numbers::pi;
}

double target_phase(BoundaryCondition bc, int k) {
  // D: k-th eigenfunction has k-1 interior zeros. C: indexing from k = 0, the
  // k-th has k interior zeros; the constant-like k = 0 member is not used.
  return bc == BoundaryCondition::D ? k * std::numbers::pi
                                    : (k + 0.5) * std::numbers::pi;
}

template <typename Fn>
auto guarded(Fn&& fn, const char* what, double lambda) {
  try {
    return fn();
  } catch (const NumericError&) {
    throw;
  } catch (const std::exception& e) {
    std::ostringstream msg;
    msg << what << " failed at lambda = " << lambda << ": " << e.what();
    throw NumericError(msg.str());
  }
}

double terminal_phase(const PruferSystem& sys, BoundaryCondition bc, const PruferOptions& opt) {
  PhaseState state{initial_phase(bc)};
  auto rhs = [&sys](const PhaseState& st, PhaseState& d, double x) {
    double dlog = 0.0;
    sys.phase(st[0], x, d[0], dlog);
  };
  auto stepper = odeint::make_controlled(opt.abs_tol, opt.rel_tol,
                                         odeint::runge_kutta_dopri5<PhaseState>());
  guarded(
      [&] {
        return odeint::integrate_adaptive(stepper, rhs, state, 0.0, kTwoPi, 0.05);
      },
      "prufer_phase", sys.lambda);
  if (!std::isfinite(state[0])) {
    std::ostringstream msg;
    msg << "prufer_phase: non-finite phase at lambda = " << sys.lambda;
    throw NumericError(msg.str());
  }
  return state[0];
}

double hermite_norm(const std::vector<double>& g, const std::vector<double>& dg,
                    const std::vector<double>& g2, const std::vector<double>& dg2,
                    const CumulativeWeight& omega) {
  // Trapezoid with the first Euler-Maclaurin endpoint correction; the
  // integrand f = G1 G2 w has f' = (G1' G2 + G1 G2') w + G1 G2 w' with G' = w g'.
  const Grid& grid = omega.grid();
  const auto& wf = omega.weight();
  const std::size_t n = grid.count();
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double f = g[i] * g2[i] * wf(grid[i]);
    sum += (i == 0 || i + 1 == n) ? 0.5 * f : f;
  }
  auto fprime = [&](std::size_t i) {
    const double x = grid[i];
    const double w = wf(x);
    return (w * dg[i] * g2[i] + g[i] * w * dg2[i]) * w + g[i] * g2[i] * wf.deriv1(x);
  };
  const double h = grid.spacing();
  return h * sum - h * h / 12.0 * (fprime(n - 1) - fprime(0));
}

Eigenpair solve_one(const CumulativeWeight& omega, const Potential& q, BoundaryCondition bc,
                    int k, double qsup, const EigenSolveOptions& opt) {
  const double half_k = 0.5 * k;
  const double scale = std::max(half_k, 0.5);
  PruferSystem sys{&omega, q, 0.0, scale};
  const double target = target_phase(bc, k);
  auto residual = [&](double lambda) {
    sys.lambda = lambda;
    return terminal_phase(sys, bc, opt.ode) - target;
  };

  double lo = std::pow(std::max(half_k - 0.25, 0.0), 2) - qsup;
  double hi = std::pow(half_k + 0.75, 2) + qsup;
  double flo = residual(lo);
  double fhi = residual(hi);
  for (int widen = 0; flo > 0.0; ++widen) {
    if (widen > 60) throw NumericError("eigen_solve: cannot bracket eigenvalue from below");
    const double width = hi - lo;
    hi = lo;
    fhi = flo;
    lo -= 2.0 * width;
    flo = residual(lo);
  }
  for (int widen = 0; fhi < 0.0; ++widen) {
    if (widen > 60) throw NumericError("eigen_solve: cannot bracket eigenvalue from above");
    const double width = hi - lo;
    lo = hi;
    flo = fhi;
    hi += 2.0 * width;
    fhi = residual(hi);
  }

  // Illinois-modified regula falsi; falls back to bisection when the secant
  // point leaves the bracket.
  auto refine = [](auto&& fn, double lo, double hi, double flo, double fhi, double tol) {
    int side = 0;
    double lambda = 0.5 * (lo + hi);
    for (int iter = 0; iter < 200; ++iter) {
      if (hi - lo <= tol * std::max(1.0, std::abs(lambda))) break;
      double next = (lo * fhi - hi * flo) / (fhi - flo);
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      const double f = fn(next);
      lambda = next;
      if (f == 0.0) return next;
      if (f < 0.0) {
        lo = next;
        flo = f;
        if (side == -1) fhi *= 0.5;
        side = -1;
      } else {
        hi = next;
        fhi = f;
        if (side == 1) flo *= 0.5;
        side = 1;
      }
    }
    return 0.5 * (lo + hi);
  };
  const double coarse = refine(residual, lo, hi, flo, fhi, std::max(opt.lambda_tol, 1e-9));

  // Polish with the sampling tolerances so the sampled trajectory ends on the
  // target phase; the coarse phase error would otherwise show up as a
  // boundary-condition residual.
  auto fine = [&](double lambda) {
    sys.lambda = lambda;
    return terminal_phase(sys, bc, opt.sample_ode) - target;
  };
  double delta = 1e-8 * std::max(1.0, std::abs(coarse));
  double lo2 = coarse - delta, hi2 = coarse + delta;
  double flo2 = fine(lo2), fhi2 = fine(hi2);
  for (int widen = 0; flo2 > 0.0 || fhi2 < 0.0; ++widen) {
    if (widen > 30) throw NumericError("eigen_solve: polishing bracket lost the eigenvalue");
    delta *= 4.0;
    if (flo2 > 0.0) flo2 = fine(lo2 = coarse - delta);
    if (fhi2 < 0.0) fhi2 = fine(hi2 = coarse + delta);
  }
  const double lambda = refine(fine, lo2, hi2, flo2, fhi2, opt.lambda_tol);
  sys.lambda = lambda;

  // Sample phase and log-amplitude at the grid nodes.
  const Grid& grid = omega.grid();
  Eigenpair pair;
  pair.index = k;
  pair.eigenvalue = lambda;
  pair.value.resize(grid.count());
  pair.deriv.resize(grid.count());
  FullState state{initial_phase(bc), 0.0};
  auto rhs = [&sys](const FullState& st, FullState& d, double x) {
    sys.phase(st[0], x, d[0], d[1]);
  };
  std::size_t idx = 0;
  auto observer = [&](const FullState& st, double) {
    const double rho = std::exp(st[1]);
    pair.value[idx] = rho * std::sin(st[0]);
    pair.deriv[idx] = scale * rho * std::cos(st[0]);
    ++idx;
  };
  auto dense = odeint::make_dense_output(opt.sample_ode.abs_tol, opt.sample_ode.rel_tol,
                                         odeint::runge_kutta_dopri5<FullState>());
  guarded(
      [&] {
        return odeint::integrate_times(dense, rhs, state, grid.points().begin(),
                                       grid.points().end(), 0.05, observer);
      },
      "eigenfunction sampling", lambda);
  if (idx != grid.count()) throw NumericError("eigenfunction sampling: missing grid samples");
  return normalize_eigenfunction(std::move(pair), bc, omega);
}

}  // namespace

char bc_tag(BoundaryCondition bc) { return bc == BoundaryCondition::C ? 'C' : 'D'; }

double prufer_phase(const CumulativeWeight& omega, double lambda, BoundaryCondition bc,
                    double scale, const PruferOptions& options) {
  if (!(scale > 0.0)) throw PreconditionError("prufer_phase: scale must be positive");
  PruferSystem sys{&omega, Potential(omega.weight()), lambda, scale};
  return terminal_phase(sys, bc, options);
}

EigenBasis::EigenBasis(BoundaryCondition bc, std::shared_ptr<const CumulativeWeight> omega,
                       std::vector<Eigenpair> pairs)
    : bc_(bc), omega_(std::move(omega)), pairs_(std::move(pairs)) {
  const Grid& grid = omega_->grid();
  node_weight_.resize(grid.count());
  for (std::size_t i = 0; i < grid.count(); ++i) node_weight_[i] = omega_->weight()(grid[i]);
}

void EigenBasis::interpolate(double x, std::span<double> value, std::span<double> slope) const {
  if (value.size() > pairs_.size()) {
    throw PreconditionError("EigenBasis::interpolate: basis shorter than requested");
  }
  const Grid& grid = omega_->grid();
  const std::size_t i = grid.cell(x);
  const double h = grid.spacing();
  const double t = (x - grid[i]) / h;
  const double t2 = t * t;
  const double t3 = t2 * t;
  const double h00 = 2 * t3 - 3 * t2 + 1;
  const double h10 = (t3 - 2 * t2 + t) * h;
  const double h01 = -2 * t3 + 3 * t2;
  const double h11 = (t3 - t2) * h;
  const double d00 = (6 * t2 - 6 * t) / h;
  const double d10 = 3 * t2 - 4 * t + 1;
  const double d01 = (-6 * t2 + 6 * t) / h;
  const double d11 = 3 * t2 - 2 * t;
  const double w0 = node_weight_[i];
  const double w1 = node_weight_[i + 1];
  const bool want_slope = !slope.empty();
  for (std::size_t k = 0; k < value.size(); ++k) {
    const auto& p = pairs_[k];
    const double y0 = p.value[i];
    const double y1 = p.value[i + 1];
    const double m0 = w0 * p.deriv[i];
    const double m1 = w1 * p.deriv[i + 1];
    value[k] = h00 * y0 + h10 * m0 + h01 * y1 + h11 * m1;
    if (want_slope) slope[k] = d00 * y0 + d10 * m0 + d01 * y1 + d11 * m1;
  }
}

EigenBasis eigen_solve(std::shared_ptr<const CumulativeWeight> omega, BoundaryCondition bc,
                       int k_max, const EigenSolveOptions& options) {
  if (k_max < 1) throw PreconditionError("eigen_solve: k_max must be >= 1");
  if (std::abs(omega->total() - kTwoPi) > 1e-9) {
    throw PreconditionError("eigen_solve: weight must be normalized to mass 2pi");
  }
  const Potential q = weight_to_potential(omega->weight(), omega->grid());
  double qsup = 0.0;
  for (double x : omega->grid().points()) qsup = std::max(qsup, std::abs(q(x)));

  std::vector<Eigenpair> pairs(static_cast<std::size_t>(k_max));
  std::atomic<int> next{1};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (int k = next++; k <= k_max && !failed; k = next++) {
      try {
        pairs[static_cast<std::size_t>(k - 1)] = solve_one(*omega, q, bc, k, qsup, options);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  };
  const unsigned threads = std::max(1u, options.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  for (std::size_t i = 1; i < pairs.size(); ++i) {
    if (!(pairs[i].eigenvalue > pairs[i - 1].eigenvalue)) {
      throw NumericError("eigen_solve: eigenvalues not strictly increasing; tighten ODE tolerance");
    }
  }
  return EigenBasis(bc, std::move(omega), std::move(pairs));
}

Eigenpair normalize_eigenfunction(Eigenpair pair, BoundaryCondition bc,
                                  const CumulativeWeight& omega) {
  const double norm2 = hermite_norm(pair.value, pair.deriv, pair.value, pair.deriv, omega);
  if (!(norm2 > 0.0) || !std::isfinite(norm2)) {
    throw InvariantError("normalize_eigenfunction: zero or non-finite norm");
  }
  double factor = std::sqrt(std::numbers::pi / norm2);
  const double lead = bc == BoundaryCondition::C ? pair.value.front() : pair.deriv.front();
  if (lead < 0.0) factor = -factor;
  for (auto& v : pair.value) v *= factor;
  for (auto& v : pair.deriv) v *= factor;
  return pair;
}

double eigen_inner_product(const Eigenpair& a, const Eigenpair& b, const CumulativeWeight& omega) {
  return hermite_norm(a.value, a.deriv, b.value, b.deriv, omega);
}

double asymptotic_eigenfunction(const CumulativeWeight& omega, int k, BoundaryCondition bc,
                                double x) {
  const double phase = 0.5 * k * omega(x);
  const double amp = 1.0 / std::sqrt(omega.weight()(x));
  return amp * (bc == BoundaryCondition::C ? std::cos(phase) : std::sin(phase));
}

double asymptotic_eigenfunction_derivative(const CumulativeWeight& omega, int k,
                                           BoundaryCondition bc, double x) {
  const double phase = 0.5 * k * omega(x);
  const double amp = 0.5 * k * std::sqrt(omega.weight()(x));
  return bc == BoundaryCondition::C ? -amp * std::sin(phase) : amp * std::cos(phase);
}

std::vector<AsymptoticDeviation> asymptotic_deviation(const EigenBasis& basis) {
  const CumulativeWeight& omega = basis.omega();
  const Grid& grid = basis.grid();
  const auto& wf = omega.weight();
  std::vector<AsymptoticDeviation> out;
  out.reserve(basis.size());
  for (const auto& pair : basis.pairs()) {
    AsymptoticDeviation dev{pair.index, pair.eigenvalue, 0.0, 0.0};
    for (std::size_t i = 0; i < grid.count(); ++i) {
      const double x = grid[i];
      const double w = wf(x);
      const double u = pair.value[i] / std::sqrt(w);
      const double du = std::sqrt(w) * pair.deriv[i] - 0.5 * wf.deriv1(x) * pair.value[i] / (w * std::sqrt(w));
      dev.sup_value =
          std::max(dev.sup_value, std::abs(u - asymptotic_eigenfunction(omega, pair.index, basis.bc(), x)));
      dev.sup_deriv = std::max(
          dev.sup_deriv,
          std::abs(du - asymptotic_eigenfunction_derivative(omega, pair.index, basis.bc(), x)));
    }
    out.push_back(dev);
  }
  return out;
}

int interior_sign_changes(const Eigenpair& pair) {
  const auto& v = pair.value;
  int changes = 0;
  double prev = 0.0;
  // Skip the endpoint samples, which vanish for the Dirichlet family.
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    if (v[i] == 0.0) continue;
    if (prev != 0.0 && (prev < 0.0) != (v[i] < 0.0)) ++changes;
    prev = v[i];
  }
  return changes;
}

}  // namespace slzeros
