#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "../support/gen.hpp"
#include "orlicz/counterexample.hpp"
#include "orlicz/error.hpp"

using namespace orlicz;
namespace ce = orlicz::counterexample;
using doctest::Approx;

namespace {

const ce::DisjointSystem& probability() {
  static const auto sys = ce::build_system(ce::Params::probability(0.5, 2.0));
  return sys;
}

const ce::DisjointSystem& infinite() {
  static const auto sys = ce::build_system(ce::Params::infinite_measure());
  return sys;
}

}  // namespace

TEST_CASE("property: metric axioms on the index set") {
  gen::for_all(51, 500, [](gen::Gen& g) {
    auto point = [&g] {
      if (g.integer(0, 9) == 0) return ce::IndexPoint::infinity();
      return ce::IndexPoint::at(static_cast<std::uint64_t>(g.log_uniform(1.0, 1e12)));
    };
    const auto i = point();
    const auto j = point();
    const auto k = point();
    CHECK(ce::distance(i, i) == 0.0);
    CHECK(ce::distance(i, j) == ce::distance(j, i));
    CHECK(ce::distance(i, j) >= 0.0);
    CHECK(ce::distance(i, k) <= ce::distance(i, j) + ce::distance(j, k) + 1e-15);
  });
  CHECK(ce::distance(ce::IndexPoint::at(4), ce::IndexPoint::infinity()) == 0.25);
  CHECK_THROWS_AS(ce::IndexPoint::at(0), Error);
  CHECK_THROWS_AS(ce::IndexPoint::infinity().value(), Error);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(ce::build_system(ce::Params::probability(1.0, 2.0)), Error);
  CHECK_THROWS_AS(ce::build_system(ce::Params::probability(0.5, 1.0)), Error);
  CHECK_THROWS_AS(ce::sup_tail(infinite(), 1.0), Error);
  CHECK_THROWS_AS(ce::borel_cantelli_sum(probability(), 1.0), Error);
}

TEST_CASE("block geometry") {
  const auto& sys = probability();
  CHECK(sys.left(1.0) == 0.5);
  CHECK(sys.width(1.0) == Approx(0.5 * (1.0 - 1.0 / std::sqrt(2.0))));
  CHECK(sys.c(16.0) == Approx(2.0));
  CHECK(infinite().c(1.0) == Approx(std::pow(std::log(4.0), -3.0)));
  CHECK(infinite().width(7.0) == 1.0);
  CHECK(*sys.index_of(0.6) == 1);
  CHECK_FALSE(sys.index_of(0.25).has_value());
  CHECK(*infinite().index_of(12.5) == 12);
}

TEST_CASE("property: sup_value is the active block and index_of inverts support") {
  gen::for_all(52, 300, [](gen::Gen& g) {
    const auto& sys = g.coin() ? probability() : infinite();
    const auto n = static_cast<std::uint64_t>(g.log_uniform(1.0, 1e5));
    const auto span = sys.support(n);
    const double x = span.lo + g.uniform(0.01, 0.99) * span.length();
    REQUIRE(sys.index_of(x).has_value());
    CHECK(*sys.index_of(x) == n);
    CHECK(sys.sup_value(x) == Approx(sys.block(n)(x)).epsilon(1e-12));
    CHECK(sys.block(n + 1)(x) == 0.0);
  });
}

TEST_CASE("locate_upper agrees with index_of on resolved blocks") {
  const auto& sys = probability();
  for (const double y : {0.37, 0.013, 3.3e-4, 2.7e-5}) {
    const auto where = sys.locate_upper(y);
    CHECK(where.resolved);
    const auto n = sys.index_of(1.0 - y);
    REQUIRE(n.has_value());
    CHECK(static_cast<std::uint64_t>(where.n) == *n);
    CHECK(where.local > 0.0);
    CHECK(where.local < 1.0);
  }
}

TEST_CASE("block norms: quadrature against the Gamma closed form") {
  CHECK(ce::verify_block_norms(probability()).passed());
  CHECK(ce::verify_block_norms(infinite()).passed());
  CHECK(ce::block_lp_exact(probability(), 100, 2.0) == Approx(0.0498).epsilon(0.01));
}

TEST_CASE("disjointness at random points") {
  CHECK(ce::verify_disjointness(probability(), 5000, 7).passed());
  CHECK(ce::verify_disjointness(infinite(), 5000, 7).passed());
}

TEST_CASE("frozen oracles for the sup function, (alpha, p0) = (0.5, 2)") {
  // Euler-Maclaurin in 25-digit arithmetic, independent of the library's
  // integral-tail scheme.
  CHECK(ce::sup_lp(probability(), 1.0).value == Approx(0.8660854112324013).epsilon(2e-6));
  CHECK(ce::sup_tail(probability(), 1.0) == Approx(0.3030101765877474).epsilon(1e-4));
  CHECK(ce::sup_tail(probability(), 10.0) == Approx(0.004999250748039694).epsilon(1e-4));
  CHECK(ce::sup_tail(probability(), 100.0) == Approx(4.999999924860297e-5).epsilon(1e-4));
}

TEST_CASE("sup_tail tends to 1/2 at 0 and is non-increasing") {
  const auto& sys = probability();
  CHECK(ce::sup_tail(sys, 1e-9) == Approx(0.5).epsilon(1e-9));
  double prev = 0.5;
  for (double z = 1e-3; z < 1e4; z *= 1.5) {
    const double t = ce::sup_tail(sys, z);
    CHECK(t <= prev);
    prev = t;
  }
}

TEST_CASE("sup_tail error bound brackets the value") {
  const auto est = ce::sup_tail_estimate(probability(), 30.0);
  CHECK(est.error_bound >= 0.0);
  CHECK(est.error_bound <= 1e-3 * est.value);
}

TEST_CASE("light blocks, heavy sup") {
  // every block is in every Lp, the sup is not in L^p0
  for (const std::uint64_t n : {1ull, 1000ull, 1'000'000ull}) CHECK(std::isfinite(ce::block_lp_exact(probability(), n, 2.0)));
  const auto heavy = ce::sup_lp(probability(), 2.0);
  CHECK(heavy.verdict == quad::SeriesVerdict::divergent);
  CHECK(std::isinf(heavy.value));
  const auto light = ce::sup_lp(probability(), 1.9);
  CHECK(light.verdict == quad::SeriesVerdict::convergent);
  CHECK(std::isfinite(light.value));
}

TEST_CASE("Borel-Cantelli sums") {
  const auto one = ce::borel_cantelli_sum(infinite(), 1.0);
  CHECK(one.verdict == quad::SeriesVerdict::convergent);
  CHECK(one.partial_sum == Approx(8.268290811308345e-4).epsilon(1e-10));
  CHECK(one.tail_bound < 1e-10);
  const auto tenth = ce::borel_cantelli_sum(infinite(), 0.1);
  CHECK(tenth.verdict == quad::SeriesVerdict::convergent);
  CHECK(tenth.partial_sum + 0.5 * tenth.tail_bound == Approx(4.444616349744708).epsilon(1e-8));
}

TEST_CASE("modular integral, frozen values") {
  // mpmath quadrature of x^-1 log(e + x^(-1/p0))^(-1/2) on (eps, 1/2)
  CHECK(ce::modular_integral(2.0, 1e-6) == Approx(7.262352015362495).epsilon(1e-10));
  CHECK(ce::modular_integral(2.0, 1e-12) == Approx(11.61687213904999).epsilon(1e-10));
  CHECK(ce::modular_integral(4.0, 1e-6) == Approx(8.972909054667773).epsilon(1e-10));
}

TEST_CASE("partial-sum growth: the integral-test model tracks the divergent series") {
  const std::vector<std::uint64_t> cps{1000, 10'000, 100'000};
  CHECK(ce::verify_partial_sum_growth(infinite(), 1.0, cps).passed());
  // convergent control
  const auto control = ce::verify_partial_sum_growth(
      [](double n) { return 1.0 / (n * n); }, [](double n) { return 1.0 - 1.0 / n; }, cps, "control");
  CHECK_FALSE(control.passed());
}

TEST_CASE("continuity in the probability case") {
  const auto r = ce::verify_continuity(probability(), 1e-2);
  CHECK(r.passed());
  CHECK(r.computed < 1e-2);
}
