#include "slzeros/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "slzeros/errors.hpp"

namespace slzeros {

namespace {

// (1/n) sum_{k=1}^n k^p for p = 2, 4, 6, 8 (Faulhaber).
struct PowerMeans {
  double m2, m4, m6, m8;
  explicit PowerMeans(int n_int) {
    const double n = n_int;
    const double base = (n + 1) * (2 * n + 1);
    m2 = base / 6.0;
    m4 = base * (3 * n * n + 3 * n - 1) / 30.0;
    m6 = base * (3 * std::pow(n, 4) + 6 * std::pow(n, 3) - 3 * n + 1) / 42.0;
    m8 = base *
         (5 * std::pow(n, 6) + 15 * std::pow(n, 5) + 5 * std::pow(n, 4) - 15 * std::pow(n, 3) -
          n * n + 9 * n - 3) /
         90.0;
  }
};

double reduce_angle(double t) {
  // Into (-pi, pi]; r_n is 2pi-periodic and even.
  double r = std::remainder(t, 2.0 * std::numbers::pi);
  if (r <= -std::numbers::pi) r += 2.0 * std::numbers::pi;
  return r;
}

}  // namespace

KernelValue r_n_closed(int n, double t) {
  if (n < 1) throw PreconditionError("r_n: n must be >= 1");
  t = reduce_angle(t);
  const double nd = n;
  if (std::abs(t) < std::max(1e-6, 1e-2 / nd)) {
    const PowerMeans m(n);
    const double t2 = t * t;
    KernelValue v;
    v.r = 1.0 - m.m2 * t2 / 2.0 + m.m4 * t2 * t2 / 24.0 - m.m6 * t2 * t2 * t2 / 720.0 +
          m.m8 * t2 * t2 * t2 * t2 / 40320.0;
    v.d1 = t * (-m.m2 + m.m4 * t2 / 6.0 - m.m6 * t2 * t2 / 120.0 + m.m8 * t2 * t2 * t2 / 5040.0);
    v.d2 = -m.m2 + m.m4 * t2 / 2.0 - m.m6 * t2 * t2 / 24.0 + m.m8 * t2 * t2 * t2 / 720.0;
    return v;
  }
  // n r_n(t) = S(t) - 1/2 with S = sin(a t) / (2 sin(t/2)), a = n + 1/2.
  const double a = nd + 0.5;
  const double num = std::sin(a * t);
  const double dnum = a * std::cos(a * t);
  const double ddnum = -a * a * num;
  const double den = 2.0 * std::sin(0.5 * t);
  const double dden = std::cos(0.5 * t);
  const double ddden = -0.25 * den;
  const double s = num / den;
  const double ds = (dnum * den - num * dden) / (den * den);
  const double dds = (ddnum * den - num * ddden) / (den * den) - 2.0 * dden * ds / den;
  return {(s - 0.5) / nd, ds / nd, dds / nd};
}

StationaryKernel::StationaryKernel(int n) : n_(n) {
  if (n < 1) throw PreconditionError("StationaryKernel: n must be >= 1");
}

double covariance_X(int n, const CumulativeWeight& omega, double x, double y) {
  return r_n_closed(n, 0.5 * (omega(x) - omega(y))).r;
}

ProcessSecondOrder second_order_exact(int n, std::shared_ptr<const CumulativeWeight> omega) {
  if (n < 1) throw PreconditionError("second_order_exact: n must be >= 1");
  const double lead = (n + 1.0) * (2.0 * n + 1.0) / 24.0;
  ProcessSecondOrder so;
  so.var0 = [](double) { return 1.0; };
  so.cov01 = [](double) { return 0.0; };
  so.var1 = [omega, lead](double x) {
    const double w = omega->weight()(x);
    return w * w * lead;
  };
  return so;
}

ProcessSecondOrder second_order_from_basis(ProcessModel model) {
  auto shared = std::make_shared<const ProcessModel>(std::move(model));
  auto sums = [shared](double x, int which) {
    BasisRow row;
    shared->basis(x, row, which != 0);
    double acc = 0.0;
    for (std::size_t k = 0; k < row.phi.size(); ++k) {
      switch (which) {
        case 0: acc += row.phi[k] * row.phi[k] + row.chi[k] * row.chi[k]; break;
        case 1: acc += row.dphi[k] * row.dphi[k] + row.dchi[k] * row.dchi[k]; break;
        default: acc += row.phi[k] * row.dphi[k] + row.chi[k] * row.dchi[k]; break;
      }
    }
    return acc / shared->n();
  };
  ProcessSecondOrder so;
  so.var0 = [sums](double x) { return sums(x, 0); };
  so.var1 = [sums](double x) { return sums(x, 1); };
  so.cov01 = [sums](double x) { return sums(x, 2); };
  return so;
}

SecondOrderEstimate second_order_empirical(const ProcessModel& model, int draws, double x,
                                           std::uint64_t seed) {
  if (draws < 1000) throw PreconditionError("second_order_empirical: need at least 1000 draws");
  BasisRow row;
  model.basis(x, row, true);
  const auto n = static_cast<std::size_t>(model.n());
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<double> z(static_cast<std::size_t>(draws)), dz(z.size());
  for (std::size_t r = 0; r < z.size(); ++r) {
    const auto draw = sample_coefficients(seed, model.n(), r);
    double v = 0.0, dv = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      v += draw.a[k] * row.phi[k] + draw.b[k] * row.chi[k];
      dv += draw.a[k] * row.dphi[k] + draw.b[k] * row.dchi[k];
    }
    z[r] = v * norm;
    dz[r] = dv * norm;
  }
  // The processes are centered by construction, so second moments are
  // estimated about zero; SEs come from the sample spread of the products.
  auto moment = [&](const std::vector<double>& p, const std::vector<double>& q, double& se) {
    double mean = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) mean += p[i] * q[i];
    mean /= static_cast<double>(p.size());
    double ss = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) ss += std::pow(p[i] * q[i] - mean, 2);
    se = std::sqrt(ss / static_cast<double>(p.size() - 1) / static_cast<double>(p.size()));
    return mean;
  };
  SecondOrderEstimate est;
  est.x = x;
  est.draws = draws;
  est.var0 = moment(z, z, est.se_var0);
  est.var1 = moment(dz, dz, est.se_var1);
  est.cov01 = moment(z, dz, est.se_cov01);
  return est;
}

double kac_rice_expected(const ProcessSecondOrder& so, double a, double b, double rel_tol) {
  auto intensity = [&so](double x) {
    const double v0 = so.var0(x);
    if (!(v0 > 0.0)) {
      std::ostringstream msg;
      msg << "kac_rice_expected: variance " << v0 << " is not positive at x = " << x;
      throw DomainError(msg.str());
    }
    const double det = std::max(0.0, v0 * so.var1(x) - std::pow(so.cov01(x), 2));
    return std::sqrt(det) / v0;
  };
  double err = 0.0;
  const double value =
      boost::math::quadrature::gauss_kronrod<double, 31>::integrate(intensity, a, b, 15, rel_tol,
                                                                    &err);
  return value / std::numbers::pi;
}

double expected_zeros_X(int n) { return 2.0 * std::sqrt((n + 1.0) * (2.0 * n + 1.0) / 24.0); }

double expected_zeros_T(int n) { return 2.0 * std::sqrt((n + 1.0) * (2.0 * n + 1.0) / 6.0); }

}  // namespace slzeros
