#pragma once

#include <cstdint>
#include <functional>
#include <memory>

#include "slzeros/ensembles.hpp"
#include "slzeros/sl_core.hpp"

namespace slzeros {

/// r_n(t) = (1/n) sum_{k=1}^n cos(k t) and its first two derivatives.
struct KernelValue {
  double r = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

/// Dirichlet-kernel closed form. Arguments are reduced to (-pi, pi]; close to
/// the origin (|t| < max(1e-6, 1e-2/n)) a Taylor expansion in the power sums
/// replaces the quotient, which cancels catastrophically there.
KernelValue r_n_closed(int n, double t);

/// Stationary kernel r_n with r_n(0) = 1 and r_n''(0) = -(n+1)(2n+1)/6.
class StationaryKernel {
 public:
  explicit StationaryKernel(int n);
  int n() const { return n_; }
  double operator()(double t) const { return r_n_closed(n_, t).r; }
  double d1(double t) const { return r_n_closed(n_, t).d1; }
  double d2(double t) const { return r_n_closed(n_, t).d2; }

 private:
  int n_;
};

/// R_n(x, y) = E X_n(x) X_n(y) = r_n((Omega(x) - Omega(y)) / 2).
double covariance_X(int n, const CumulativeWeight& omega, double x, double y);

/// Pointwise second-order structure of a centered process Z:
/// var Z(x), var Z'(x) and cov(Z(x), Z'(x)).
struct ProcessSecondOrder {
  std::function<double(double)> var0;
  std::function<double(double)> var1;
  std::function<double(double)> cov01;
};

/// Closed-form structure of X_n: var0 = 1, cov01 = 0,
/// var1 = w(x)^2 (n+1)(2n+1)/24.
ProcessSecondOrder second_order_exact(int n, std::shared_ptr<const CumulativeWeight> omega);

/// Exact structure of any modelled process from its basis sums:
/// var0 = (1/n) sum phi^2 + chi^2, etc.
ProcessSecondOrder second_order_from_basis(ProcessModel model);

/// Monte Carlo estimate at one point, with standard errors.
struct SecondOrderEstimate {
  double x = 0.0;
  int draws = 0;
  double var0 = 0.0, var1 = 0.0, cov01 = 0.0;
  double se_var0 = 0.0, se_var1 = 0.0, se_cov01 = 0.0;
};

/// Estimates the structure of `model` at x from `draws` coefficient draws of
/// (seed, n, replicate 0..draws-1). Requires draws >= 1000.
SecondOrderEstimate second_order_empirical(const ProcessModel& model, int draws, double x,
                                           std::uint64_t seed);

/// First-moment Kac-Rice count over [a, b]:
///   (1/pi) int sqrt(var0 var1 - cov01^2) / var0 dx
/// by adaptive Gauss-Kronrod. DomainError if var0 <= 0 at an evaluated point.
double kac_rice_expected(const ProcessSecondOrder& so, double a, double b,
                         double rel_tol = 1e-10);

/// 2 sqrt((n+1)(2n+1)/24): expected zeros of X_n on [0, 2pi].
double expected_zeros_X(int n);
/// 2 sqrt((n+1)(2n+1)/6): expected zeros of T_n on [0, 2pi].
double expected_zeros_T(int n);

}  // namespace slzeros
