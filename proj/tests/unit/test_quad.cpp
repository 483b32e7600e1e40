#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "../support/gen.hpp"
#include "orlicz/error.hpp"
#include "orlicz/quad.hpp"

using namespace orlicz;
using doctest::Approx;

TEST_CASE("polynomials are integrated exactly") {
  const auto r = quad::integrate([](double x) { return x * x * x; }, 0.0, 2.0);
  CHECK(r.value == Approx(4.0).epsilon(1e-15));
}

TEST_CASE("log singularity at the left end") {
  quad::QuadOptions opt;
  opt.abs_tol = 1e-14;
  opt.singularity = quad::Singularity::left;
  // integral_0^1 sqrt(-log x) dx = Gamma(3/2)
  const auto r = quad::integrate([](double x) { return std::sqrt(-std::log(x)); }, 0.0, 1.0, opt);
  CHECK(r.value == Approx(std::sqrt(std::numbers::pi) / 2).epsilon(1e-12));
}

TEST_CASE("power singularity at the right end") {
  quad::QuadOptions opt;
  opt.abs_tol = 1e-10;
  opt.singularity = quad::Singularity::right;
  const auto r = quad::integrate([](double x) { return std::pow(1.0 - x, -0.5); }, 0.0, 1.0, opt);
  // 2 sqrt(2^-53) of mass sits closer to 1 than one ulp
  CHECK(std::abs(r.value - 2.0) <= 5e-8);
}

TEST_CASE("non-integrable singularity does not converge") {
  quad::QuadOptions opt;
  opt.max_evaluations = 20'000;
  opt.abs_tol = 1e-12;
  CHECK_THROWS_AS(quad::integrate([](double x) { return 1.0 / x; }, 0.0, 1.0, opt), Error);
}

TEST_CASE("compensated sum is independent of ordering") {
  quad::CompensatedSum up;
  quad::CompensatedSum down;
  for (int i = 1; i <= 100'000; ++i) up += 1.0 / (static_cast<double>(i) * i);
  for (int i = 100'000; i >= 1; --i) down += 1.0 / (static_cast<double>(i) * i);
  CHECK(std::abs(up.value() - down.value()) <= 1e-16 * up.value());
}

TEST_CASE("convergent series: zeta(2) bracket holds the true value") {
  const auto r = quad::sum_series([](double n) { return 1.0 / (n * n); }, 1, 1e-10);
  CHECK(r.verdict == quad::SeriesVerdict::convergent);
  const double zeta2 = std::numbers::pi * std::numbers::pi / 6.0;
  CHECK(r.partial_sum <= zeta2 + 1e-15);
  CHECK(r.partial_sum + r.tail_bound >= zeta2 - 1e-15);
  CHECK(r.tail_bound <= 1e-10);
}

TEST_CASE("harmonic series is divergent") {
  const auto r = quad::sum_series([](double n) { return 1.0 / n; }, 1, 1e-6, 1'000'000);
  CHECK(r.verdict == quad::SeriesVerdict::divergent);
  CHECK(r.divergence_witness > 10.0);
}

TEST_CASE("increasing terms are rejected") {
  CHECK_THROWS_AS(quad::sum_series([](double n) { return n; }, 1, 1e-6), Error);
}

TEST_CASE("series with a closed-form tail model") {
  // sum 1/(n(n+1)) = 1, tail after N = 1/(N+1)
  const quad::TailModel model = [](std::uint64_t n) {
    const double t = 1.0 / static_cast<double>(n + 1);
    return quad::TailBracket{t, t};
  };
  const auto r = quad::sum_series([](double n) { return 1.0 / (n * (n + 1.0)); }, 1, 1e-12, 100'000'000, model);
  CHECK(r.partial_sum == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("partial sums at checkpoints") {
  const std::vector<std::uint64_t> cps{1, 10, 100};
  const auto g = quad::partial_sums([](double n) { return n; }, cps);
  REQUIRE(g.values.size() == 3);
  CHECK(g.values[0] == 1.0);
  CHECK(g.values[1] == 55.0);
  CHECK(g.values[2] == 5050.0);
}

TEST_CASE("property: loglog fit recovers power laws") {
  gen::for_all(11, 50, [](gen::Gen& g) {
    const double slope = g.uniform(-5.0, 5.0);
    const double c = g.log_uniform(1e-3, 1e3);
    std::vector<std::pair<double, double>> pts;
    for (int i = 0; i < 8; ++i) {
      const double x = std::pow(10.0, i * 0.5);
      pts.emplace_back(x, c * std::pow(x, slope));
    }
    const auto fit = quad::loglog_fit(pts);
    CHECK(fit.slope == Approx(slope).epsilon(1e-10));
    CHECK(std::exp(fit.intercept) == Approx(c).epsilon(1e-9));
    CHECK(fit.r_squared == Approx(1.0).epsilon(1e-12));
  });
}

TEST_CASE("property: integration is linear") {
  gen::for_all(12, 50, [](gen::Gen& g) {
    const double a = g.scalar();
    const double b = g.scalar();
    const double lo = g.uniform(-3.0, 0.0);
    const double hi = lo + g.uniform(0.1, 3.0);
    quad::QuadOptions opt;
    opt.abs_tol = 1e-14;
    opt.rel_tol = 1e-13;
    const auto f = [](double x) { return std::sin(3 * x) + x * x; };
    const auto h = [](double x) { return std::exp(-x * x); };
    const double lhs = quad::integrate([&](double x) { return a * f(x) + b * h(x); }, lo, hi, opt).value;
    const double rhs = a * quad::integrate(f, lo, hi, opt).value + b * quad::integrate(h, lo, hi, opt).value;
    CHECK(lhs == Approx(rhs).epsilon(1e-10).scale(std::abs(a) + std::abs(b)));
  });
}
