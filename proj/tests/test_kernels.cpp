#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fixtures.hpp"
#include "slzeros/errors.hpp"
#include "slzeros/kernels.hpp"

using namespace slzeros;
using slzeros::testing::basis_of;
using slzeros::testing::omega_of;

namespace {

KernelValue direct_sum(int n, double t) {
  KernelValue v{0.0, 0.0, 0.0};
  for (int k = 1; k <= n; ++k) {
    v.r += std::cos(k * t);
    v.d1 -= k * std::sin(k * t);
    v.d2 -= static_cast<double>(k) * k * std::cos(k * t);
  }
  v.r /= n;
  v.d1 /= n;
  v.d2 /= n;
  return v;
}

}  // namespace

TEST_CASE("r_n closed form against the direct sum") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-kTwoPi, 2 * kTwoPi);
  std::uniform_real_distribution<double> tiny(-1e-3, 1e-3);
  for (int n : {1, 2, 5, 50, 400}) {
    const double n1 = n, n2 = static_cast<double>(n) * n;
    for (int i = 0; i < 2000; ++i) {
      double t;
      switch (i % 4) {
        case 0: t = tiny(rng); break;
        case 1: t = kTwoPi + tiny(rng); break;
        default: t = u(rng); break;
      }
      const auto c = r_n_closed(n, t);
      const auto d = direct_sum(n, t);
      CHECK(std::abs(c.r - d.r) <= 1e-10);
      CHECK(std::abs(c.d1 - d.d1) <= 1e-10 * n1);
      CHECK(std::abs(c.d2 - d.d2) <= 1e-10 * n2);
    }
  }
}

TEST_CASE("r_n special values") {
  for (int n : {1, 3, 10, 400}) {
    const auto v = r_n_closed(n, 0.0);
    CHECK(v.r == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(v.d1) < 1e-15);
    CHECK(v.d2 == doctest::Approx(-(n + 1.0) * (2.0 * n + 1.0) / 6.0).epsilon(1e-13));
  }
  CHECK(std::abs(r_n_closed(2, std::numbers::pi).r) < 1e-15);
  for (double t : {0.3, 1.7, -2.0}) CHECK(std::abs(r_n_closed(1, t).r - std::cos(t)) < 1e-15);
  StationaryKernel k(7);
  CHECK(k(0.4) == r_n_closed(7, 0.4).r);
}

TEST_CASE("covariance of X_n") {
  auto unit = omega_of("unit");
  auto sine2 = omega_of("sine2");
  CHECK(covariance_X(20, *sine2, 1.3, 1.3) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(covariance_X(20, *unit, 1.0, 4.0) - r_n_closed(20, -1.5).r) < 1e-14);
  // against the basis sums
  const auto m = ProcessModel::liouville_trig(ProcessKind::X, sine2, 30);
  BasisRow a, b;
  m.basis(0.7, a, false);
  m.basis(5.1, b, false);
  double s = 0.0;
  for (std::size_t k = 0; k < 30; ++k) s += a.phi[k] * b.phi[k] + a.chi[k] * b.chi[k];
  CHECK(std::abs(s / 30 - covariance_X(30, *sine2, 0.7, 5.1)) < 1e-12);
}

TEST_CASE("second-order structure of X_n") {
  auto unit = omega_of("unit");
  auto sine2 = omega_of("sine2");
  const auto u1 = second_order_exact(1, unit);
  CHECK(u1.var1(2.0) == doctest::Approx(0.25));
  for (int n : {1, 9, 120}) {
    const auto ex = second_order_exact(n, sine2);
    const auto fb = second_order_from_basis(ProcessModel::liouville_trig(ProcessKind::X, sine2, n));
    const auto& w = sine2->weight();
    const double ratio0 = ex.var1(0.0) / (w(0.0) * w(0.0));
    for (double x = 0.0; x <= kTwoPi; x += 0.4) {
      CHECK(ex.cov01(x) == 0.0);
      CHECK(ex.var0(x) == 1.0);
      CHECK(std::abs(fb.var0(x) - 1.0) < 1e-12);
      CHECK(std::abs(fb.cov01(x)) < 1e-10 * n);
      CHECK(fb.var1(x) == doctest::Approx(ex.var1(x)).epsilon(1e-10));
      CHECK(ex.var1(x) / (w(x) * w(x)) == doctest::Approx(ratio0).epsilon(1e-13));
    }
  }
}

TEST_CASE("Cauchy-Schwarz for every modelled process") {
  const auto& basis = basis_of("sine2", 60);
  auto omega = basis.cos_family->omega_ptr();
  auto osc = std::make_shared<const PerturbationFamily>(PerturbationFamily::oscillating());
  for (int n : {1, 20, 60}) {
    std::vector<ProcessModel> models{
        ProcessModel::sturm_liouville(ProcessKind::f, basis, n),
        ProcessModel::sturm_liouville(ProcessKind::F, basis, n),
        ProcessModel::liouville_trig(ProcessKind::XRaw, omega, n),
        ProcessModel::trig(ProcessKind::C, n), ProcessModel::perturbed(osc, n)};
    for (const auto& m : models) {
      const auto so = second_order_from_basis(m);
      for (double x = 0.0; x <= kTwoPi; x += 0.05) {
        const double c = so.cov01(x);
        CHECK(so.var0(x) * so.var1(x) - c * c >= -1e-12 * so.var0(x) * so.var1(x));
      }
    }
  }
}

TEST_CASE("Kac-Rice expected counts") {
  auto unit = omega_of("unit");
  auto sine2 = omega_of("sine2");
  CHECK(kac_rice_expected(second_order_exact(1, unit), 0, kTwoPi) == doctest::Approx(1.0).epsilon(1e-12));
  const auto t1 = second_order_from_basis(ProcessModel::trig(ProcessKind::T, 1));
  CHECK(kac_rice_expected(t1, 0, kTwoPi) == doctest::Approx(2.0).epsilon(1e-12));
  for (int n : {1, 10, 50, 400}) {
    CHECK(expected_zeros_X(n) == doctest::Approx(std::sqrt((n + 1.0) * (2.0 * n + 1.0) / 6.0)));
    // stationary: (T / pi) sqrt(-r''(0)) with half frequencies for X_n
    const double x_closed = 2.0 * std::sqrt(-r_n_closed(n, 0.0).d2 / 4.0);
    const double t_closed = 2.0 * std::sqrt(-r_n_closed(n, 0.0).d2);
    CHECK(std::abs(kac_rice_expected(second_order_exact(n, unit), 0, kTwoPi) / x_closed - 1) < 1e-8);
    CHECK(std::abs(kac_rice_expected(second_order_exact(n, sine2), 0, kTwoPi) / x_closed - 1) < 1e-8);
    const auto tn = second_order_from_basis(ProcessModel::trig(ProcessKind::T, n));
    CHECK(std::abs(kac_rice_expected(tn, 0, kTwoPi) / t_closed - 1) < 1e-8);
    CHECK(expected_zeros_T(n) == doctest::Approx(t_closed).epsilon(1e-14));
  }
  CHECK(expected_zeros_X(50) == doctest::Approx(29.30).epsilon(1e-3));

  ProcessSecondOrder bad{[](double x) { return x - 1.0; }, [](double) { return 1.0; },
                         [](double) { return 0.0; }};
  CHECK_THROWS_AS(kac_rice_expected(bad, 0, kTwoPi), DomainError);
}

TEST_CASE("empirical second-order estimates") {
  const auto& unit = basis_of("unit", 20);
  const auto m = ProcessModel::sturm_liouville(ProcessKind::f, unit, 20);
  const auto exact = second_order_exact(20, unit.cos_family->omega_ptr());
  for (double x : {0.5, 2.0, 4.4}) {
    const auto est = second_order_empirical(m, 2000, x, 99);
    CHECK(std::abs(est.var0 - exact.var0(x)) <= 4 * est.se_var0);
    CHECK(std::abs(est.var1 - exact.var1(x)) <= 4 * est.se_var1);
    CHECK(std::abs(est.cov01 - exact.cov01(x)) <= 4 * est.se_cov01);
  }
  CHECK_THROWS_AS(second_order_empirical(m, 999, 1.0, 1), PreconditionError);
}

TEST_CASE("sine2: var f_n = 1 + O(log n / n) and var f_n' ~ w^2 (n+1)(2n+1)/24") {
  const auto& basis = basis_of("sine2", 400);
  const auto& w = basis.omega().weight();
  std::vector<double> scaled, ratio_dev;
  for (int n : {50, 100, 200, 400}) {
    const auto so = second_order_from_basis(ProcessModel::sturm_liouville(ProcessKind::f, basis, n));
    double sup0 = 0.0, sup1 = 0.0;
    for (double x = 0.0; x <= kTwoPi; x += kTwoPi / 300) {
      sup0 = std::max(sup0, std::abs(so.var0(x) - 1.0));
      const double lead = w(x) * w(x) * (n + 1.0) * (2.0 * n + 1.0) / 24.0;
      sup1 = std::max(sup1, std::abs(so.var1(x) / lead - 1.0));
    }
    scaled.push_back(sup0 * n / std::log(n));
    ratio_dev.push_back(sup1);
  }
  const double mx = *std::max_element(scaled.begin(), scaled.end());
  auto sorted = scaled;
  std::sort(sorted.begin(), sorted.end());
  CHECK(mx <= 3.0 * 0.5 * (sorted[1] + sorted[2]));
  for (std::size_t i = 1; i < ratio_dev.size(); ++i) CHECK(ratio_dev[i] < ratio_dev[i - 1]);
  CHECK(ratio_dev.back() < 0.05);
}
