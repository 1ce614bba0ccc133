#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fixtures.hpp"
#include "slzeros/errors.hpp"
#include "slzeros/zeros.hpp"

using namespace slzeros;
using slzeros::testing::basis_of;
using slzeros::testing::omega_of;

constexpr double kPi = std::numbers::pi;

TEST_CASE("simple counts") {
  const auto half = count_zeros([](double x) { return std::cos(x / 2); }, Interval{}, 1);
  CHECK(half.count == 1);
  CHECK(half.stable);
  REQUIRE(half.locations.size() == 1);
  CHECK(std::abs(half.locations[0] - kPi) < 1e-11);

  CHECK(count_zeros([](double) { return 1.0; }, Interval{}, 1).count == 0);

  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  for (int i = 0; i < 50; ++i) {
    const double a = g(rng), b = g(rng);
    const auto r = count_zeros([=](double x) { return a * std::cos(x) + b * std::sin(x); },
                               Interval{}, 2);
    CHECK(r.count == 2);
  }
}

TEST_CASE("exact zeros on grid nodes and at endpoints") {
  // sin(x) vanishes exactly at 0 and (numerically) at pi and 2pi; pi lands on
  // a node of every grid used here.
  const auto r = count_zeros([](double x) { return std::sin(x); }, Interval{}, 2);
  CHECK(r.count == 3);
  // sin(3x) on [0, 2pi] has zeros at k pi / 3, k = 0..6
  const auto r3 = count_zeros([](double x) { return std::sin(3 * x); }, Interval{}, 6);
  CHECK(r3.count == 7);
}

TEST_CASE("near tangency is logged, not counted") {
  const auto r = count_zeros([](double x) { return (x - 1.0) * (x - 1.0) + 1e-12; },
                             Interval{0.0, 2.0}, 2);
  CHECK(r.count == 0);
  CHECK(r.near_tangencies >= 1);
}

TEST_CASE("zero pair inside one grid cell") {
  // roots 1 +- d, far closer than the finest grid step
  const double d = 1e-4;
  auto p = [d](double x) { return (x - 1.0) * (x - 1.0) - d * d; };
  const auto r = count_zeros(p, Interval{}, 1);
  CHECK(r.count == 2);
  CHECK(r.stable);
  REQUIRE(r.locations.size() == 2);
  CHECK(r.locations[0] == doctest::Approx(1.0 - d).epsilon(1e-10));
  CHECK(r.locations[1] == doctest::Approx(1.0 + d).epsilon(1e-10));

  ZeroCountOptions o;
  const auto pts = count_grid(Interval{}, 2 * base_cells(Interval{}, 1, o));
  std::vector<double> fine;
  for (double x : pts) fine.push_back(p(x));
  const auto q = count_zeros_presampled(fine, p, Interval{}, 1, o);
  CHECK(q.count == 2);
  CHECK(q.locations == r.locations);

  // a dip that stays positive adds nothing
  const auto s = count_zeros([](double x) { return (x - 1.0) * (x - 1.0) + 1e-3; }, Interval{}, 1);
  CHECK(s.count == 0);
  CHECK(s.near_tangencies == 0);
}

TEST_CASE("subintervals and bad arguments") {
  const auto r = count_zeros([](double x) { return std::cos(x); }, Interval{0.0, kPi}, 1);
  CHECK(r.count == 1);
  CHECK_THROWS_AS(count_zeros([](double x) { return x; }, Interval{1.0, 1.0}, 1), PreconditionError);
  CHECK_THROWS_AS(count_zeros([](double x) { return x; }, Interval{}, 0), PreconditionError);
}

TEST_CASE("grid helpers and standardization") {
  ZeroCountOptions o;
  CHECK(base_cells(Interval{}, 50, o) == 800);
  CHECK(base_cells(Interval{0.0, kPi}, 50, o) == 400);
  CHECK(base_cells(Interval{0.0, 0.01}, 1, o) == 8);
  const auto pts = count_grid(Interval{}, 10);
  CHECK(pts.size() == 11);
  CHECK(pts.back() == kTwoPi);
  CHECK(standardize_count(29, 29, 100) == 0.0);
  CHECK(standardize_count(30, 29.3, 100) == doctest::Approx(0.07));
}

TEST_CASE("presampled path agrees with the evaluator path") {
  const int n = 40;
  const auto tm = ProcessModel::trig(ProcessKind::T, n);
  ZeroCountOptions o;
  o.locate = false;
  const int fine_cells = 2 * base_cells(Interval{}, 2 * n, o);
  const auto pts = count_grid(Interval{}, fine_cells);
  for (std::uint64_t r = 0; r < 30; ++r) {
    RandomProcess p(tm, std::make_shared<const CoefficientDraw>(sample_coefficients(5, n, r)));
    std::vector<double> fine;
    for (double x : pts) fine.push_back(p.value(x));
    const auto a = count_zeros_presampled(fine, [&p](double x) { return p.value(x); }, Interval{}, 2 * n, o);
    const auto b = count_zeros([&p](double x) { return p.value(x); }, Interval{}, 2 * n, o);
    CHECK(a.count == b.count);
    CHECK(a.stable == b.stable);
  }
  std::vector<double> wrong(7, 1.0);
  CHECK_THROWS_AS(count_zeros_presampled(wrong, [](double) { return 1.0; }, Interval{}, 2 * n, o),
                  PreconditionError);
}

TEST_CASE("parity and determinism on random X_n") {
  auto omega = omega_of("sine2");
  const auto xm = ProcessModel::liouville_trig(ProcessKind::X, omega, 30);
  for (std::uint64_t r = 0; r < 100; ++r) {
    RandomProcess p(xm, std::make_shared<const CoefficientDraw>(sample_coefficients(8, 30, r)));
    auto ev = [&p](double x) { return p.value(x); };
    const auto a = count_zeros(ev, Interval{}, 30);
    const auto b = count_zeros(ev, Interval{}, 30);
    CHECK(a.count == b.count);
    CHECK(a.locations == b.locations);
    CHECK(static_cast<int>(a.locations.size()) == a.count);
    const double p0 = p.value(0.0), p1 = p.value(kTwoPi);
    if (std::abs(p0) > 1e-9 && std::abs(p1) > 1e-9) {
      CHECK((a.count % 2 == 0) == (p0 * p1 > 0));
    }
    for (double z : a.locations) CHECK(std::abs(p.value(z)) < 1e-8);
  }
}

TEST_CASE("flat weight: f_n and X_n have identical counts") {
  const auto& basis = basis_of("unit", 20);
  const auto fm = ProcessModel::sturm_liouville(ProcessKind::f, basis, 20);
  const auto xm = ProcessModel::liouville_trig(ProcessKind::X, basis.cos_family->omega_ptr(), 20);
  for (std::uint64_t r = 0; r < 100; ++r) {
    auto d = std::make_shared<const CoefficientDraw>(sample_coefficients(3, 20, r));
    RandomProcess f(fm, d), x(xm, d);
    CHECK(count_zeros([&f](double t) { return f.value(t); }, Interval{}, 20).count ==
          count_zeros([&x](double t) { return x.value(t); }, Interval{}, 20).count);
  }
}

TEST_CASE("change of variables keeps the count") {
  auto unit = omega_of("unit");
  auto sine2 = omega_of("sine2");
  for (const auto& om : {unit, sine2}) {
    const auto m = ProcessModel::liouville_trig(ProcessKind::XRaw, om, 40);
    for (std::uint64_t r = 0; r < 20; ++r) {
      RandomProcess p(m, std::make_shared<const CoefficientDraw>(sample_coefficients(4, 40, r)));
      for (double t : {kPi, kTwoPi, 2.2}) {
        const auto [nx, ny] = count_zeros_changed_variable(p, t);
        CHECK(nx == ny);
      }
    }
  }
  CHECK(std::abs((*sine2)(kPi) - (kPi + 1.0)) < 1e-12);
}
