#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "slzeros/sl_core.hpp"

namespace slzeros {

/// Two-point boundary conditions imposed on the normal-form eigenfunction g(y):
///   C  Neumann-Neumann   g'(0) = g'(2pi) = 0   (cosine-like family)
///   D  Dirichlet-Dirichlet g(0) = g(2pi) = 0   (sine-like family)
enum class BoundaryCondition { C, D };

char bc_tag(BoundaryCondition bc);

struct PruferOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-10;
};

/// Terminal phase theta(2pi; lambda) of the scaled Prufer system
///   theta' = s cos^2(theta) + ((lambda - q) / s) sin^2(theta)
/// in the Liouville variable y = Omega(x); s = 1 gives the classical phase
/// equation. The initial phase is 0 for D and pi/2 for C. The integration
/// runs in x with the Jacobian w(x), so `omega` must be normalized.
double prufer_phase(const CumulativeWeight& omega, double lambda, BoundaryCondition bc,
                    double scale = 1.0, const PruferOptions& options = {});

/// One eigenpair of L = q - d^2/dy^2.
///
/// `value[i]` and `deriv[i]` hold g(Omega(x_i)) and g'(Omega(x_i)) (derivative
/// in the Liouville variable) at the nodes x_i of the basis grid. The
/// eigenfunction in the original variable is u(x) = w(x)^{-1/2} g(Omega(x)).
struct Eigenpair {
  int index = 0;
  double eigenvalue = 0.0;
  std::vector<double> value;
  std::vector<double> deriv;
};

struct EigenSolveOptions {
  PruferOptions ode;
  /// Tolerances of the final pass that samples the eigenfunction; phase
  /// error there shows up directly as boundary-condition residual.
  PruferOptions sample_ode{1e-12, 1e-12};
  /// Root tolerance: |dlambda| <= lambda_tol * max(1, lambda).
  double lambda_tol = 1e-12;
  /// Worker threads for independent eigenvalues; 0 means one.
  unsigned threads = 0;
};

/// Ordered eigenpairs of one boundary-condition family, sampled on the grid
/// of `omega`.
class EigenBasis {
 public:
  EigenBasis(BoundaryCondition bc, std::shared_ptr<const CumulativeWeight> omega,
             std::vector<Eigenpair> pairs);

  BoundaryCondition bc() const { return bc_; }
  std::size_t size() const { return pairs_.size(); }
  const Eigenpair& operator[](std::size_t i) const { return pairs_[i]; }
  const std::vector<Eigenpair>& pairs() const { return pairs_; }
  const CumulativeWeight& omega() const { return *omega_; }
  const std::shared_ptr<const CumulativeWeight>& omega_ptr() const { return omega_; }
  const Grid& grid() const { return omega_->grid(); }

  /// Cubic Hermite interpolation of G_k(x) = g_k(Omega(x)) and of
  /// G_k'(x) = w(x) g_k'(Omega(x)) for k = 1..out.size(), at one point.
  void interpolate(double x, std::span<double> value, std::span<double> slope) const;

 private:
  BoundaryCondition bc_;
  std::shared_ptr<const CumulativeWeight> omega_;
  std::vector<Eigenpair> pairs_;
  // Cached w(x_i) so slopes G' = w g' are available at the nodes.
  std::vector<double> node_weight_;
};

/// First `k_max` eigenpairs for `bc`. Eigenvalue k is the root of the terminal
/// phase against its target (k pi for D, pi/2 + k pi for C) found by a
/// safeguarded bracketed secant iteration; the eigenfunction is recovered by
/// integrating phase and log-amplitude together and then normalized.
EigenBasis eigen_solve(std::shared_ptr<const CumulativeWeight> omega, BoundaryCondition bc,
                       int k_max, const EigenSolveOptions& options = {});

/// Rescales so that int g^2 dy = int G^2 w dx = pi and fixes the sign
/// (G(0) > 0 for C, G'(0) > 0 for D). Throws InvariantError on a zero pair.
Eigenpair normalize_eigenfunction(Eigenpair pair, BoundaryCondition bc,
                                  const CumulativeWeight& omega);

/// int_0^{2pi} G_j G_k w dx, i.e. the plain L^2 product of g_j, g_k in y.
double eigen_inner_product(const Eigenpair& a, const Eigenpair& b, const CumulativeWeight& omega);

/// w(x)^{-1/2} cos((k/2) Omega(x)) for C, w(x)^{-1/2} sin((k/2) Omega(x)) for D.
double asymptotic_eigenfunction(const CumulativeWeight& omega, int k, BoundaryCondition bc,
                                double x);

/// Leading-order derivative: -(k/2) w^{1/2} sin((k/2) Omega) for C and
/// (k/2) w^{1/2} cos((k/2) Omega) for D.
double asymptotic_eigenfunction_derivative(const CumulativeWeight& omega, int k,
                                           BoundaryCondition bc, double x);

struct AsymptoticDeviation {
  int k = 0;
  double eigenvalue = 0.0;
  /// sup_x |u_k(x) - asymptotic_k(x)| over the grid nodes.
  double sup_value = 0.0;
  /// sup_x |u_k'(x) - asymptotic_k'(x)| over the grid nodes.
  double sup_deriv = 0.0;
};

std::vector<AsymptoticDeviation> asymptotic_deviation(const EigenBasis& basis);

/// Number of sign changes of the tabulated eigenfunction strictly inside (0, 2pi).
int interior_sign_changes(const Eigenpair& pair);

}  // namespace slzeros
