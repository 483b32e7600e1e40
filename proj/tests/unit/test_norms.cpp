#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "../support/gen.hpp"
#include "orlicz/error.hpp"
#include "orlicz/norms.hpp"

using namespace orlicz;
using doctest::Approx;

namespace {

const std::vector<young::YoungFunction>& phis() {
  static const std::vector<young::YoungFunction> v{young::power(2.0), young::power(4.0), young::exp_square()};
  return v;
}

}  // namespace

TEST_CASE("Gamma moments of f_half by quadrature") {
  const auto f = space::f_half();
  for (int p = 1; p <= 20; ++p) {
    const double exact = std::pow(std::tgamma(p / 2.0 + 1.0), 1.0 / p);
    CHECK(norms::lp_norm(f, p, 1e-12, norms::Method::quadrature).value == Approx(exact).epsilon(1e-10));
  }
}

TEST_CASE("Luxemburg norm of an indicator is 1 / Phi^-1(1/|A|)") {
  for (const double a : {0.01, 0.25, 0.5}) {
    for (const auto& phi : phis()) {
      INFO(phi.label() << " a = " << a);
      const double exact = 1.0 / young::inverse_young(phi, 1.0 / a);
      CHECK(std::abs(norms::luxemburg_norm(space::indicator({0.0, a}), phi).value - exact) <= 1e-10);
    }
  }
}

TEST_CASE("Luxemburg norms of f_half") {
  // modular of exp_square at k is 1 / (2k^2 - 1)
  CHECK(norms::luxemburg_norm(space::f_half(), young::exp_square()).value == Approx(1.0).epsilon(1e-10));
  CHECK(norms::luxemburg_norm(space::f_half(), young::power(2.0)).value == Approx(1.0).epsilon(1e-10));
  CHECK(norms::luxemburg_norm(space::zero(), young::power(2.0)).value == 0.0);
}

TEST_CASE("Luxemburg norm outside the space is infinite") {
  // power_tail(2) has |f|_2 = inf
  const auto r = norms::luxemburg_norm(space::power_tail(2.0), young::power(2.0));
  CHECK(r.infinite);
  CHECK_FALSE(r.witness.empty());
}

TEST_CASE("property: absolute homogeneity of Lp and Luxemburg norms") {
  gen::for_all(41, 30, [](gen::Gen& g) {
    const auto f = g.function();
    const double c = g.scalar();
    const auto cf = space::scaled(f, c);
    const double p = g.uniform(1.0, 4.0);
    CHECK(norms::lp_norm(cf, p).value == Approx(std::abs(c) * norms::lp_norm(f, p).value).epsilon(1e-10));
    const auto& phi = phis()[static_cast<std::size_t>(g.integer(0, 1))];
    CHECK(norms::luxemburg_norm(cf, phi).value ==
          Approx(std::abs(c) * norms::luxemburg_norm(f, phi).value).epsilon(1e-8));
  });
}

TEST_CASE("property: triangle inequality") {
  gen::for_all(42, 30, [](gen::Gen& g) {
    const auto f = g.function();
    const auto h = g.function();
    const auto s = space::sum(f, h);
    const double p = g.uniform(1.0, 4.0);
    CHECK(norms::lp_norm(s, p).value <= (norms::lp_norm(f, p).value + norms::lp_norm(h, p).value) * (1 + 1e-10));
    const auto& phi = phis()[static_cast<std::size_t>(g.integer(0, 1))];
    CHECK(norms::luxemburg_norm(s, phi).value <=
          (norms::luxemburg_norm(f, phi).value + norms::luxemburg_norm(h, phi).value) * (1 + 1e-8));
  });
}

TEST_CASE("property: Lp norms increase with p on a probability space") {
  gen::for_all(43, 40, [](gen::Gen& g) {
    const auto f = g.function();
    const double p = g.uniform(1.0, 3.0);
    const double q = p + g.uniform(0.01, 1.0);
    CHECK(norms::lp_norm(f, p).value <= norms::lp_norm(f, q).value * (1 + 1e-12));
  });
}

TEST_CASE("property: rearrangement preserves Lp norms") {
  gen::for_all(44, 10, [](gen::Gen& g) {
    const auto f = g.function();
    const auto star = space::rearrangement(f);
    const double p = g.uniform(1.0, 4.0);
    CHECK(norms::lp_norm(star, p).value == Approx(norms::lp_norm(f, p).value).epsilon(1e-5));
  });
}

TEST_CASE("rearrangement preserves Luxemburg norms") {
  const auto f = space::scale_translate(space::f_half(), 2.0, 0.3, 0.4);
  CHECK(norms::luxemburg_norm(space::rearrangement(f), young::exp_square()).value ==
        Approx(norms::luxemburg_norm(f, young::exp_square()).value).epsilon(1e-5));
}

TEST_CASE("property: the GLS norm dominates every grid ratio") {
  const auto psi = young::psi_sqrt();
  const std::vector<double> grid{1, 1.5, 2, 2.5, 3, 3.5, 4, 4.5};
  gen::for_all(45, 20, [&](gen::Gen& g) {
    const auto f = g.function();
    const auto r = norms::gls_norm(f, psi, grid);
    for (const double p : grid) CHECK(norms::lp_norm(f, p).value / psi(p) <= r.value);
  });
}

TEST_CASE("GLS grid validation") {
  const auto f = space::f_half();
  const std::vector<double> short_grid{1, 2, 3};
  CHECK_THROWS_AS(norms::gls_norm(f, young::psi_sqrt(), short_grid), Error);
  const std::vector<double> far{1, 1.1, 1.2, 1.3, 1.4, 1.5, 1.6, 1.7};
  CHECK_THROWS_AS(norms::gls_norm(f, young::psi_beta_b(0.5, 2.0), far), Error);
}

TEST_CASE("GLS norm of f_half with the sqrt generator") {
  // |f|_p / sqrt(p) = Gamma(p/2+1)^(1/p) / sqrt(p) decreases towards 1/sqrt(2e)
  const std::vector<double> grid{1, 2, 3, 4, 6, 8, 12, 16, 24, 32};
  const auto r = norms::gls_norm(space::f_half(), young::psi_sqrt(), grid);
  CHECK(r.value == Approx(std::sqrt(std::numbers::pi) / 2).epsilon(1e-12));
  CHECK(*r.attained_at == 1.0);
  CHECK(r.bounded);
}

TEST_CASE("Lorentz norm: rearrangement against the cell brute force") {
  const auto v = [](double s) { return std::sqrt(s); };
  std::vector<double> grid(1000);
  for (std::size_t k = 0; k < grid.size(); ++k) grid[k] = (k + 1) / 1000.0;
  const auto a = space::indicator({0.3, 0.55});
  CHECK(norms::lorentz_norm(a, v, grid).value == Approx(0.5).epsilon(1e-6));
  CHECK(std::abs(norms::lorentz_norm(a, v, grid).value - norms::lorentz_brute_force(a, v, 1000).value) <= 1e-3);
  const auto f = space::f_half();
  const double reduced = norms::lorentz_norm(f, v, grid).value;
  // sup_s (1/sqrt s) int_0^s sqrt(-log u) du, attained near s = 0.7538 (mpmath)
  CHECK(reduced == Approx(0.923097648726610).epsilon(1e-5));
  CHECK(std::abs(reduced - norms::lorentz_brute_force(f, v, 1000).value) <= 1e-3);
}

TEST_CASE("Lorentz norm needs the unit interval") {
  const auto v = [](double s) { return s; };
  const std::vector<double> grid{0.5, 1.0};
  CHECK_THROWS_AS(norms::lorentz_norm(space::indicator({0.0, 1.0}, space::MeasureDomain::positive_halfline()), v, grid),
                  Error);
}

TEST_CASE("tail quasinorm of f_half against its own tail") {
  std::vector<double> z;
  for (int i = 1; i <= 20; ++i) z.push_back(0.2 * i);
  const auto r = norms::tail_quasinorm(space::f_half(), [](double t) { return std::exp(-t * t); }, z);
  CHECK(r.value == Approx(1.0).epsilon(1e-12));
}
