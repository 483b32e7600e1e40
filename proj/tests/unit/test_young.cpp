#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "../support/gen.hpp"
#include "orlicz/error.hpp"
#include "orlicz/young.hpp"

using namespace orlicz;
using doctest::Approx;

namespace {

std::vector<double> log_grid(double lo, double hi, int count) {
  std::vector<double> out{0.0};
  for (int i = 0; i < count; ++i) out.push_back(lo * std::pow(hi / lo, i / (count - 1.0)));
  return out;
}

}  // namespace

TEST_CASE("builtins vanish at 0, are even and pass the convexity scan") {
  const auto grid = log_grid(1e-6, 1e6, 400);
  for (const auto& y : {young::power(1.0), young::power(2.0), young::power(4.0), young::log_tempered_power(2.0),
                        young::log_tempered_power(4.0)}) {
    INFO(y.label());
    CHECK(y(0.0) == 0.0);
    for (const double u : {0.3, 2.0, 50.0}) CHECK(y(-u) == y(u));
    CHECK(young::check_young_validity(y, grid).passed());
  }
  // exp(u^2/2) overflows past u ~ 37; scan where it is finite.
  CHECK(young::check_young_validity(young::exp_square(), log_grid(1e-6, 30.0, 400)).passed());
}

TEST_CASE("a concave function is rejected with a witness") {
  const young::YoungFunction root{"sqrt", [](double u) { return std::sqrt(u); }};
  const auto r = young::check_young_validity(root, log_grid(1e-3, 1e3, 50));
  CHECK_FALSE(r.passed());
  CHECK_FALSE(r.detail.empty());
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(young::power(0.5), Error);
  CHECK_THROWS_AS(young::log_tempered_power(1.0), Error);
  CHECK_THROWS_AS(young::psi_beta_b(0.0, 2.0), Error);
  CHECK_THROWS_AS(young::psi_beta_b(0.5, 1.0), Error);
  CHECK_THROWS_AS(young::psi_beta_b(0.5, 2.0)(2.5), Error);
  CHECK_THROWS_AS(young::psi_sqrt()(0.5), Error);
}

TEST_CASE("inverse of exp_square is sqrt(2 log(1 + y))") {
  for (const double y : {0.5, 1.0, 4.0, 100.0, 1e10}) {
    CHECK(young::inverse_young(young::exp_square(), y) == Approx(std::sqrt(2.0 * std::log1p(y))).epsilon(1e-13));
  }
  // the tolerance is absolute below y = 1
  const double small = young::inverse_young(young::exp_square(), 1e-8);
  CHECK(std::abs(young::exp_square()(small) - 1e-8) <= 1e-14);
}

TEST_CASE("property: inverse_young inverts every builtin") {
  const std::vector<young::YoungFunction> fns{young::power(2.0), young::power(3.5), young::exp_square(),
                                              young::log_tempered_power(2.0), young::log_tempered_power(4.0)};
  gen::for_all(21, 200, [&](gen::Gen& g) {
    const auto& y = fns[static_cast<std::size_t>(g.integer(0, static_cast<int>(fns.size()) - 1))];
    const double target = g.log_uniform(1e-6, 1e8);
    const double u = young::inverse_young(y, target);
    CHECK(std::abs(y(u) - target) <= 1e-13 * std::max(1.0, target));
  });
}

TEST_CASE("log-tempered power is dominated by the power, not by itself") {
  const std::vector<double> lambdas{1.0, 10.0, 100.0};
  std::vector<double> u;
  for (int i = 0; i <= 10; ++i) u.push_back(std::pow(10.0, 2.0 + i));
  for (const double p0 : {2.0, 4.0}) {
    const auto dom = young::dominance_profile(young::log_tempered_power(p0), young::power(p0), lambdas, u);
    CHECK(dom.verdict == young::Dominance::dominated);
    const auto self = young::dominance_profile(young::power(p0), young::power(p0), lambdas, u);
    CHECK(self.verdict == young::Dominance::not_dominated);
  }
}

TEST_CASE("delta2: log-tempered square saturates below 4, exp_square explodes") {
  std::vector<double> u;
  for (int k = 0; k <= 40; ++k) u.push_back(std::ldexp(1.0, k));
  const auto t = young::delta2_profile(young::log_tempered_power(2.0), u);
  CHECK(t.bounded);
  CHECK(t.sup_ratio <= 4.0);
  CHECK(young::delta2_profile(young::power(3.0), u).sup_ratio == Approx(8.0));
  CHECK_FALSE(young::delta2_profile(young::exp_square(), u).bounded);
  const std::vector<double> with_zero{0.0, 1.0};
  CHECK_THROWS_AS(young::delta2_profile(young::power(2.0), with_zero), Error);
}

TEST_CASE("psi generators") {
  CHECK(young::psi_sqrt()(4.0) == 2.0);
  CHECK(young::psi_beta_b(0.5, 2.0)(1.75) == Approx(2.0));
  CHECK(young::psi_beta_b(0.5, 2.0).upper_limit() == 2.0);
}
