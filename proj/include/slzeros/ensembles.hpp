#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "slzeros/eigen.hpp"
#include "slzeros/sl_core.hpp"

namespace slzeros {

// ---------------------------------------------------------------------------
// Counter-based Gaussian coefficients

/// Philox4x32-10 block function: 128-bit counter, 64-bit key.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// The i.i.d. N(0,1) coefficients a_k, b_k (k = 1..n) of one replicate.
struct CoefficientDraw {
  std::uint64_t master_seed = 0;
  int n = 0;
  std::uint64_t replicate_id = 0;
  std::vector<double> a;
  std::vector<double> b;

  /// 64-bit identifier of this replicate's stream, stored with the records.
  std::uint64_t derived_seed() const;
};

/// Values depend only on (master_seed, n, replicate_id); a and b come from
/// separate counter streams. Uniforms use 53 bits; normals use Box-Muller.
CoefficientDraw sample_coefficients(std::uint64_t master_seed, int n, std::uint64_t replicate_id);

// ---------------------------------------------------------------------------
// Process models

enum class ProcessKind { F, f, X, XRaw, T, C, Perturbed };

std::string_view kind_name(ProcessKind kind);

/// The cosine-like (C) and sine-like (D) eigen families used by F_n and f_n.
struct SturmLiouvilleBasis {
  std::shared_ptr<const EigenBasis> cos_family;
  std::shared_ptr<const EigenBasis> sin_family;

  std::size_t size() const;
  const CumulativeWeight& omega() const { return cos_family->omega(); }
};

/// Perturbations eps_k, eta_k of the trigonometric system together with the
/// declared bounds |eps_k|, |eta_k| <= c0 / k and |eps_k'|, |eta_k'| <= c1.
struct PerturbationFamily {
  using Fn = std::function<double(int, double)>;
  Fn eps, deps, eta, deta;
  double c0 = 0.5;
  double c1 = 1.0;
  /// Set by oscillating(): lets process models build eps_k, eta_k from the
  /// harmonics they already compute instead of calling the closures.
  bool harmonic = false;
  double harmonic_amplitude = 0.0;
  double harmonic_decay = 0.0;

  /// eps_k = amplitude sin((k+1)x) / (2 k^decay), eta_k = amplitude cos((k+1)x) / (2 k^decay).
  static PerturbationFamily oscillating(double amplitude = 1.0, double decay = 1.0,
                                        double c0 = 0.5, double c1 = 1.0);
  static PerturbationFamily zero();

  /// Samples the bounds for k = 1..n on `grid`; throws InvariantError with a
  /// report of the first violation.
  void validate(int n, const Grid& grid) const;
};

/// Basis values of a process at one point; the process is
///   Z(x) = n^{-1/2} sum_k a_k phi_k(x) + b_k chi_k(x).
struct BasisRow {
  std::vector<double> phi, chi, dphi, dchi;
  void resize(std::size_t n);
};

/// Kind-specific basis of a random process, independent of any coefficient draw.
class ProcessModel {
 public:
  /// F_n (u_k, v_k) or f_n = sqrt(w) F_n.
  static ProcessModel sturm_liouville(ProcessKind kind, SturmLiouvilleBasis basis, int n);
  /// X_n (cos/sin of (k/2) Omega) or X_n^o = w^{-1/2} X_n.
  static ProcessModel liouville_trig(ProcessKind kind, std::shared_ptr<const CumulativeWeight> omega,
                                     int n);
  /// T_n or C_n.
  static ProcessModel trig(ProcessKind kind, int n);
  static ProcessModel perturbed(std::shared_ptr<const PerturbationFamily> family, int n);

  ProcessKind kind() const { return kind_; }
  int n() const { return n_; }
  /// Liouville map of the weight, when the kind depends on one.
  const std::shared_ptr<const CumulativeWeight>& omega() const { return omega_; }

  /// Fills row.phi/chi (and derivatives when `derivs`) for k = 1..n.
  void basis(double x, BasisRow& row, bool derivs) const;

 private:
  ProcessModel(ProcessKind kind, int n) : kind_(kind), n_(n) {}

  ProcessKind kind_;
  int n_;
  SturmLiouvilleBasis sl_;
  std::shared_ptr<const CumulativeWeight> omega_;
  std::shared_ptr<const PerturbationFamily> perturbation_;
  std::vector<double> harmonic_scale_;
};

/// A process model bound to one coefficient draw.
class RandomProcess {
 public:
  RandomProcess(ProcessModel model, std::shared_ptr<const CoefficientDraw> draw);

  ProcessKind kind() const { return model_.kind(); }
  int n() const { return model_.n(); }
  const ProcessModel& model() const { return model_; }
  const CoefficientDraw& draw() const { return *draw_; }
  const std::shared_ptr<const CoefficientDraw>& draw_ptr() const { return draw_; }

  double value(double x) const;
  std::pair<double, double> value_and_derivative(double x) const;
  double operator()(double x) const { return value(x); }

 private:
  ProcessModel model_;
  std::shared_ptr<const CoefficientDraw> draw_;
};

// Per-kind entry points. Each checks the process kind.
std::pair<double, double> eval_F(const RandomProcess& proc, double x);
std::pair<double, double> eval_f(const RandomProcess& proc, double x);
std::pair<double, double> eval_X(const RandomProcess& proc, double x);
std::pair<double, double> eval_T(const RandomProcess& proc, double x);
std::pair<double, double> eval_C(const RandomProcess& proc, double x);
std::pair<double, double> eval_perturbed(const RandomProcess& proc, double x);

/// eps_n(x) = f_n(x) - X_n(x). Both processes must share the same coefficients.
double eval_epsilon(const RandomProcess& f_proc, const RandomProcess& x_proc, double x);

/// True when both draws carry bit-identical coefficients.
bool same_coefficients(const CoefficientDraw& lhs, const CoefficientDraw& rhs);

}  // namespace slzeros
