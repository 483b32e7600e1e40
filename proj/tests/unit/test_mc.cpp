#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "../support/gen.hpp"
#include "orlicz/error.hpp"
#include "orlicz/mc.hpp"

using namespace orlicz;
namespace ce = orlicz::counterexample;

namespace {

const ce::DisjointSystem& probability() {
  static const auto sys = ce::build_system(ce::Params::probability(0.5, 2.0));
  return sys;
}

}  // namespace

TEST_CASE("mix64 is the splitmix64 finalizer") {
  // first output of splitmix64 seeded with 0
  CHECK(mc::mix64(0) == 0xe220a8397b1dcdafULL);
}

TEST_CASE("signs are a pure function of (seed, n)") {
  const mc::RademacherSigns a(5);
  const mc::RademacherSigns b(5);
  for (std::uint64_t n = 0; n < 1000; ++n) {
    CHECK(a.sign(n) == b.sign(n));
    CHECK(std::abs(a.sign(n)) == 1);
  }
  CHECK(a.sign(std::uint64_t{17}) == a.sign(17.0));
}

TEST_CASE("property: sign mean within 4/sqrt(N)") {
  gen::for_all(61, 20, [](gen::Gen& g) {
    const mc::RademacherSigns s(g.bits());
    constexpr int kN = 100'000;
    long total = 0;
    const std::uint64_t start = g.bits() >> 8;
    for (int i = 0; i < kN; ++i) total += s.sign(start + static_cast<std::uint64_t>(i));
    CHECK(std::abs(static_cast<double>(total) / kN) <= 4.0 / std::sqrt(kN));
  });
}

TEST_CASE("sampling is deterministic and independent of scheduling") {
  const auto a = mc::sample_sup(probability(), 99, 200'000);
  const auto b = mc::sample_sup(probability(), 99, 200'000);
  CHECK(a.values == b.values);
  CHECK(a.signed_values == b.signed_values);
  // a prefix run reproduces the leading sub-batches
  const auto prefix = mc::sample_sup(probability(), 99, mc::kSubBatch);
  CHECK(std::equal(prefix.values.begin(), prefix.values.end(), a.values.begin()));
}

TEST_CASE("samples: zero off the blocks, |signed| = value") {
  const auto batch = mc::sample_sup(probability(), 3, 100'000);
  std::size_t zeros = 0;
  for (std::size_t i = 0; i < batch.count; ++i) {
    CHECK(batch.values[i] >= 0.0);
    CHECK(std::abs(batch.signed_values[i]) == batch.values[i]);
    zeros += batch.values[i] == 0.0;
  }
  // g vanishes on (0, 1/2)
  CHECK(std::abs(static_cast<double>(zeros) / batch.count - 0.5) < 4 * 0.5 / std::sqrt(batch.count));
}

TEST_CASE("two seeds agree within pooled standard errors") {
  const auto a = mc::sample_sup(probability(), 1, 300'000);
  const auto b = mc::sample_sup(probability(), 2, 300'000);
  for (const double z : {1.0, 3.0, 10.0}) {
    const auto ta = mc::empirical_tail(a, z);
    const auto tb = mc::empirical_tail(b, z);
    const double pooled = std::hypot(ta.standard_error, tb.standard_error);
    CHECK(std::abs(ta.fraction - tb.fraction) <= 4.0 * pooled);
  }
}

TEST_CASE("empirical tail and errors") {
  const std::vector<double> v{0.5, 1.5, 2.5, 3.5};
  const auto t = mc::empirical_tail(v, 2.0);
  CHECK(t.fraction == 0.5);
  CHECK(t.standard_error == doctest::Approx(0.25));
  CHECK_THROWS_AS(mc::empirical_tail(std::span<const double>{}, 1.0), Error);
  CHECK_THROWS_AS(mc::sample_sup(ce::build_system(ce::Params::infinite_measure()), 1, 10), Error);
  const std::vector<std::size_t> bad{10, 5};
  CHECK_THROWS_AS(mc::running_moment(v, 1.0, bad), Error);
}

TEST_CASE("Monte Carlo tail and mean against the oracles") {
  const auto batch = mc::sample_sup(probability(), 20240601, 400'000);
  CHECK(mc::verify_mc_tail(probability(), batch, 1.0).passed());
  CHECK(mc::verify_mc_tail(probability(), batch, 10.0).passed());
  CHECK(mc::verify_mc_mean(probability(), batch).passed());
}

TEST_CASE("symmetrized blocks") {
  for (const std::uint64_t n : {1ull, 50ull}) CHECK(mc::symmetrization_check(probability(), n, 11, 50'000).passed());
}

TEST_CASE("running moments") {
  const std::vector<double> v{1, 2, 3, 4};
  const std::vector<std::size_t> cps{2, 4};
  const auto m = mc::running_moment(v, 2.0, cps);
  CHECK(m[0] == 2.5);
  CHECK(m[1] == 7.5);
}
