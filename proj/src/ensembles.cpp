#include "slzeros/ensembles.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "slzeros/errors.hpp"

namespace slzeros {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

constexpr std::uint32_t kStreamA = 0;
constexpr std::uint32_t kStreamB = 1;
constexpr std::uint32_t kStreamSeed = 0xFFFFFFFFu;

std::array<std::uint32_t, 2> key_of(std::uint64_t seed) {
  return {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
}

std::array<std::uint32_t, 4> block(std::uint64_t seed, int n, std::uint64_t replicate,
                                   std::uint32_t stream, std::uint32_t index) {
  // Replicate ids are folded to 32 bits together with the high bits.
  const auto rep = static_cast<std::uint32_t>(replicate ^ (replicate >> 32));
  return philox4x32({index, stream, rep, static_cast<std::uint32_t>(n)}, key_of(seed));
}

double to_unit(std::uint32_t hi, std::uint32_t lo) {
  const std::uint64_t bits = ((static_cast<std::uint64_t>(hi) << 32) | lo) >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

void fill_normals(std::vector<double>& out, std::uint64_t seed, int n, std::uint64_t replicate,
                  std::uint32_t stream) {
  out.resize(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < out.size(); i += 2) {
    const auto w = block(seed, n, replicate, stream, static_cast<std::uint32_t>(i / 2));
    const double u1 = to_unit(w[0], w[1]);
    const double u2 = to_unit(w[2], w[3]);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    out[i] = r * std::cos(angle);
    if (i + 1 < out.size()) out[i + 1] = r * std::sin(angle);
  }
}

// cos(k t), sin(k t) for k = 1..n by complex rotation.
void harmonics(double t, std::span<double> c, std::span<double> s) {
  const std::complex<double> step = std::polar(1.0, t);
  std::complex<double> z = step;
  for (std::size_t k = 0; k < c.size(); ++k) {
    // Re-anchor periodically to keep rounding drift bounded.
    if ((k & 63u) == 63u) z = std::polar(1.0, static_cast<double>(k + 1) * t);
    c[k] = z.real();
    s[k] = z.imag();
    z *= step;
  }
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * ctr[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kPhiloxW0;
    key[1] += kPhiloxW1;
  }
  return ctr;
}

std::uint64_t CoefficientDraw::derived_seed() const {
  const auto w = block(master_seed, n, replicate_id, kStreamSeed, 0);
  return (static_cast<std::uint64_t>(w[0]) << 32) | w[1];
}

CoefficientDraw sample_coefficients(std::uint64_t master_seed, int n, std::uint64_t replicate_id) {
  if (n < 1) throw PreconditionError("sample_coefficients: n must be >= 1");
  CoefficientDraw draw;
  draw.master_seed = master_seed;
  draw.n = n;
  draw.replicate_id = replicate_id;
  fill_normals(draw.a, master_seed, n, replicate_id, kStreamA);
  fill_normals(draw.b, master_seed, n, replicate_id, kStreamB);
  return draw;
}

bool same_coefficients(const CoefficientDraw& lhs, const CoefficientDraw& rhs) {
  return lhs.a == rhs.a && lhs.b == rhs.b;
}

std::string_view kind_name(ProcessKind kind) {
  switch (kind) {
    case ProcessKind::F: return "F_n";
    case ProcessKind::f: return "f_n";
    case ProcessKind::X: return "X_n";
    case ProcessKind::XRaw: return "X_n_raw";
    case ProcessKind::T: return "T_n";
    case ProcessKind::C: return "C_n";
    case ProcessKind::Perturbed: return "perturbed";
  }
  return "?";
}

std::size_t SturmLiouvilleBasis::size() const {
  return std::min(cos_family->size(), sin_family->size());
}

PerturbationFamily PerturbationFamily::oscillating(double amplitude, double decay, double c0,
                                                   double c1) {
  PerturbationFamily fam;
  auto scale = [amplitude, decay](int k) { return amplitude / (2.0 * std::pow(k, decay)); };
  fam.eps = [scale](int k, double x) { return scale(k) * std::sin((k + 1) * x); };
  fam.deps = [scale](int k, double x) { return scale(k) * (k + 1) * std::cos((k + 1) * x); };
  fam.eta = [scale](int k, double x) { return scale(k) * std::cos((k + 1) * x); };
  fam.deta = [scale](int k, double x) { return -scale(k) * (k + 1) * std::sin((k + 1) * x); };
  fam.c0 = c0;
  fam.c1 = c1;
  fam.harmonic = true;
  fam.harmonic_amplitude = amplitude;
  fam.harmonic_decay = decay;
  return fam;
}

PerturbationFamily PerturbationFamily::zero() {
  PerturbationFamily fam;
  fam.eps = fam.deps = fam.eta = fam.deta = [](int, double) { return 0.0; };
  fam.c0 = 0.0;
  fam.c1 = 0.0;
  return fam;
}

void PerturbationFamily::validate(int n, const Grid& grid) const {
  constexpr double kSlack = 1e-12;
  for (int k = 1; k <= n; ++k) {
    const double bound0 = c0 / k + kSlack;
    const double bound1 = c1 + kSlack;
    for (double x : grid.points()) {
      const std::array<std::pair<const char*, double>, 4> checks{
          {{"eps", eps(k, x)}, {"eta", eta(k, x)}, {"eps'", deps(k, x)}, {"eta'", deta(k, x)}}};
      for (std::size_t i = 0; i < checks.size(); ++i) {
        const double bound = i < 2 ? bound0 : bound1;
        if (!(std::abs(checks[i].second) <= bound)) {
          std::ostringstream msg;
          msg << "perturbation bound violated: |" << checks[i].first << "_" << k << "(" << x
              << ")| = " << std::abs(checks[i].second) << " > "
              << (i < 2 ? "c0/k = " : "c1 = ") << bound - kSlack;
          throw InvariantError(msg.str());
        }
      }
    }
  }
}

void BasisRow::resize(std::size_t n) {
  phi.resize(n);
  chi.resize(n);
  dphi.resize(n);
  dchi.resize(n);
}

ProcessModel ProcessModel::sturm_liouville(ProcessKind kind, SturmLiouvilleBasis basis, int n) {
  if (kind != ProcessKind::F && kind != ProcessKind::f) {
    throw PreconditionError("sturm_liouville model: kind must be F_n or f_n");
  }
  if (n < 1) throw PreconditionError("process model: n must be >= 1");
  if (!basis.cos_family || !basis.sin_family ||
      basis.cos_family->bc() != BoundaryCondition::C ||
      basis.sin_family->bc() != BoundaryCondition::D) {
    throw PreconditionError("sturm_liouville model: need a C family and a D family");
  }
  if (basis.size() < static_cast<std::size_t>(n)) {
    std::ostringstream msg;
    msg << "sturm_liouville model: basis has " << basis.size() << " pairs, need " << n;
    throw PreconditionError(msg.str());
  }
  ProcessModel m(kind, n);
  m.omega_ = basis.cos_family->omega_ptr();
  m.sl_ = std::move(basis);
  return m;
}

ProcessModel ProcessModel::liouville_trig(ProcessKind kind,
                                          std::shared_ptr<const CumulativeWeight> omega, int n) {
  if (kind != ProcessKind::X && kind != ProcessKind::XRaw) {
    throw PreconditionError("liouville_trig model: kind must be X_n or X_n_raw");
  }
  if (n < 1) throw PreconditionError("process model: n must be >= 1");
  ProcessModel m(kind, n);
  m.omega_ = std::move(omega);
  return m;
}

ProcessModel ProcessModel::trig(ProcessKind kind, int n) {
  if (kind != ProcessKind::T && kind != ProcessKind::C) {
    throw PreconditionError("trig model: kind must be T_n or C_n");
  }
  if (n < 1) throw PreconditionError("process model: n must be >= 1");
  return ProcessModel(kind, n);
}

ProcessModel ProcessModel::perturbed(std::shared_ptr<const PerturbationFamily> family, int n) {
  if (n < 1) throw PreconditionError("process model: n must be >= 1");
  ProcessModel m(ProcessKind::Perturbed, n);
  if (!family) throw PreconditionError("perturbed model: missing perturbation family");
  if (family->harmonic) {
    m.harmonic_scale_.resize(static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k) {
      m.harmonic_scale_[static_cast<std::size_t>(k - 1)] =
          family->harmonic_amplitude / (2.0 * std::pow(k, family->harmonic_decay));
    }
  }
  m.perturbation_ = std::move(family);
  return m;
}

void ProcessModel::basis(double x, BasisRow& row, bool derivs) const {
  const auto n = static_cast<std::size_t>(n_);
  row.resize(n);
  switch (kind_) {
    case ProcessKind::F:
    case ProcessKind::f: {
      std::span<double> dphi = derivs ? std::span<double>(row.dphi) : std::span<double>();
      std::span<double> dchi = derivs ? std::span<double>(row.dchi) : std::span<double>();
      sl_.cos_family->interpolate(x, row.phi, dphi);
      sl_.sin_family->interpolate(x, row.chi, dchi);
      if (kind_ == ProcessKind::F) {
        // u = w^{-1/2} G, u' = w^{-1/2} G' - (w'/2) w^{-3/2} G.
        const auto& wf = omega_->weight();
        const double w = wf(x);
        const double inv_sqrt = 1.0 / std::sqrt(w);
        const double corr = 0.5 * wf.deriv1(x) / w;
        for (std::size_t k = 0; k < n; ++k) {
          if (derivs) {
            row.dphi[k] = inv_sqrt * (row.dphi[k] - corr * row.phi[k]);
            row.dchi[k] = inv_sqrt * (row.dchi[k] - corr * row.chi[k]);
          }
          row.phi[k] *= inv_sqrt;
          row.chi[k] *= inv_sqrt;
        }
      }
      return;
    }
    case ProcessKind::X:
    case ProcessKind::XRaw: {
      const double y = (*omega_)(x);
      harmonics(0.5 * y, row.phi, row.chi);
      const auto& wf = omega_->weight();
      const double w = derivs || kind_ == ProcessKind::XRaw ? wf(x) : 1.0;
      if (derivs) {
        for (std::size_t k = 0; k < n; ++k) {
          const double rate = 0.5 * static_cast<double>(k + 1) * w;
          row.dphi[k] = -rate * row.chi[k];
          row.dchi[k] = rate * row.phi[k];
        }
      }
      if (kind_ == ProcessKind::XRaw) {
        const double inv_sqrt = 1.0 / std::sqrt(w);
        const double corr = 0.5 * wf.deriv1(x) / w;
        for (std::size_t k = 0; k < n; ++k) {
          if (derivs) {
            row.dphi[k] = inv_sqrt * (row.dphi[k] - corr * row.phi[k]);
            row.dchi[k] = inv_sqrt * (row.dchi[k] - corr * row.chi[k]);
          }
          row.phi[k] *= inv_sqrt;
          row.chi[k] *= inv_sqrt;
        }
      }
      return;
    }
    case ProcessKind::T:
    case ProcessKind::C:
    case ProcessKind::Perturbed: {
      harmonics(x, row.phi, row.chi);
      if (derivs) {
        for (std::size_t k = 0; k < n; ++k) {
          const double kk = static_cast<double>(k + 1);
          row.dphi[k] = -kk * row.chi[k];
          row.dchi[k] = kk * row.phi[k];
        }
      }
      if (kind_ == ProcessKind::C) {
        std::fill(row.chi.begin(), row.chi.end(), 0.0);
        if (derivs) std::fill(row.dchi.begin(), row.dchi.end(), 0.0);
      } else if (kind_ == ProcessKind::Perturbed && !harmonic_scale_.empty()) {
        // eps_k = s_k sin((k+1)x), eta_k = s_k cos((k+1)x); harmonic k+1 is
        // still unmodified when k is processed.
        const double top = static_cast<double>(n + 1) * x;
        const double cos_top = std::cos(top);
        const double sin_top = std::sin(top);
        for (std::size_t k = 0; k < n; ++k) {
          const double c_next = k + 1 < n ? row.phi[k + 1] : cos_top;
          const double s_next = k + 1 < n ? row.chi[k + 1] : sin_top;
          const double sk = harmonic_scale_[k];
          row.phi[k] += sk * s_next;
          row.chi[k] += sk * c_next;
          if (derivs) {
            const double rate = sk * static_cast<double>(k + 2);
            row.dphi[k] += rate * c_next;
            row.dchi[k] -= rate * s_next;
          }
        }
      } else if (kind_ == ProcessKind::Perturbed) {
        const auto& pf = *perturbation_;
        for (std::size_t k = 0; k < n; ++k) {
          const int kk = static_cast<int>(k + 1);
          row.phi[k] += pf.eps(kk, x);
          row.chi[k] += pf.eta(kk, x);
          if (derivs) {
            row.dphi[k] += pf.deps(kk, x);
            row.dchi[k] += pf.deta(kk, x);
          }
        }
      }
      return;
    }
  }
}

RandomProcess::RandomProcess(ProcessModel model, std::shared_ptr<const CoefficientDraw> draw)
    : model_(std::move(model)), draw_(std::move(draw)) {
  if (!draw_ || draw_->n < model_.n()) {
    throw PreconditionError("RandomProcess: coefficient draw shorter than the process order");
  }
}

namespace {

thread_local BasisRow tls_row;

std::pair<double, double> evaluate(const ProcessModel& model, const CoefficientDraw& draw, double x,
                                   bool derivs) {
  model.basis(x, tls_row, derivs);
  const auto n = static_cast<std::size_t>(model.n());
  double v = 0.0;
  double dv = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    v += draw.a[k] * tls_row.phi[k] + draw.b[k] * tls_row.chi[k];
    if (derivs) dv += draw.a[k] * tls_row.dphi[k] + draw.b[k] * tls_row.dchi[k];
  }
  const double norm = 1.0 / std::sqrt(static_cast<double>(model.n()));
  return {v * norm, dv * norm};
}

void expect_kind(const RandomProcess& proc, ProcessKind kind, const char* op) {
  if (proc.kind() != kind) {
    std::ostringstream msg;
    msg << op << ": expected a " << kind_name(kind) << " process, got " << kind_name(proc.kind());
    throw PreconditionError(msg.str());
  }
}

}  // namespace

double RandomProcess::value(double x) const { return evaluate(model_, *draw_, x, false).first; }

std::pair<double, double> RandomProcess::value_and_derivative(double x) const {
  return evaluate(model_, *draw_, x, true);
}

std::pair<double, double> eval_F(const RandomProcess& proc, double x) {
  expect_kind(proc, ProcessKind::F, "eval_F");
  return proc.value_and_derivative(x);
}

std::pair<double, double> eval_f(const RandomProcess& proc, double x) {
  expect_kind(proc, ProcessKind::f, "eval_f");
  return proc.value_and_derivative(x);
}

std::pair<double, double> eval_X(const RandomProcess& proc, double x) {
  expect_kind(proc, ProcessKind::X, "eval_X");
  return proc.value_and_derivative(x);
}

std::pair<double, double> eval_T(const RandomProcess& proc, double x) {
  expect_kind(proc, ProcessKind::T, "eval_T");
  return proc.value_and_derivative(x);
}

std::pair<double, double> eval_C(const RandomProcess& proc, double x) {
  expect_kind(proc, ProcessKind::C, "eval_C");
  return proc.value_and_derivative(x);
}

std::pair<double, double> eval_perturbed(const RandomProcess& proc, double x) {
  expect_kind(proc, ProcessKind::Perturbed, "eval_perturbed");
  return proc.value_and_derivative(x);
}

double eval_epsilon(const RandomProcess& f_proc, const RandomProcess& x_proc, double x) {
  expect_kind(f_proc, ProcessKind::f, "eval_epsilon");
  expect_kind(x_proc, ProcessKind::X, "eval_epsilon");
  if (f_proc.n() != x_proc.n() || !same_coefficients(f_proc.draw(), x_proc.draw())) {
    throw PreconditionError("eval_epsilon: processes do not share one coefficient draw");
  }
  return f_proc.value(x) - x_proc.value(x);
}

}  // namespace slzeros
