#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "orlicz/check.hpp"
#include "orlicz/norms.hpp"
#include "orlicz/quad.hpp"
#include "orlicz/space.hpp"

namespace orlicz::counterexample {

/// A point of the index set: a positive integer or the limit point at
/// infinity.
class IndexPoint {
 public:
  static IndexPoint at(std::uint64_t n);
  static IndexPoint infinity() { return IndexPoint(); }

  bool is_infinity() const noexcept { return !n_; }
  std::uint64_t value() const;

 private:
  IndexPoint() = default;
  std::optional<std::uint64_t> n_;
};

/// |1/i - 1/j|, with 1/inf = 0.
double distance(IndexPoint i, IndexPoint j);

enum class Case { infinite_measure, probability };

struct Params {
  Case kind = Case::probability;
  double alpha = 0.5;
  double p0 = 2.0;

  static Params infinite_measure() { return {Case::infinite_measure, 0.5, 2.0}; }
  static Params probability(double alpha = 0.5, double p0 = 2.0) { return {Case::probability, alpha, p0}; }
};

/// Block n on the resolution of a point near the right end of (0,1): which
/// block holds 1 - y and where inside it.
struct Located {
  /// Block index; exact integer below 2^53, rounded above.
  double n = 0.0;
  /// (x - left(n)) / width(n) in (0,1).
  double local = 0.0;
  /// False when width(n) is below the resolution of y, so `local` carries
  /// no information.
  bool resolved = true;
};

/// Disjointly supported blocks g_n = c(n) f_half((x - left(n)) / width(n)).
///
/// infinite_measure: support (n, n+1), c(n) = log(n+3)^-3 on R+.
/// probability: support (a(n), a(n+1)) with a(n) = 1 - n^-alpha / 2 and
/// c(n) = n^(alpha/p0) on (0,1).
class DisjointSystem {
 public:
  explicit DisjointSystem(Params params);

  const Params& params() const noexcept { return params_; }
  bool is_probability() const noexcept { return params_.kind == Case::probability; }
  space::MeasureDomain domain() const noexcept;

  double c(double n) const;
  double left(double n) const;
  double width(double n) const;
  space::Interval support(std::uint64_t n) const;
  space::RealFunction block(std::uint64_t n) const;

  /// The n with x in support(n); none off the union of the open supports.
  /// Throws Unsupported when n would exceed 2^53.
  std::optional<std::uint64_t> index_of(double x) const;

  /// Probability case: the block containing 1 - y for y in (0, 1/2).
  Located locate_upper(double y) const;

  /// g(x) = sup_n g_n(x).
  double sup_value(double x) const;

 private:
  Params params_;
};

/// Validates the parameters and cross-checks block closed forms against
/// quadrature at n = 1, 10, 100. Throws BadParameter or ClosedFormMismatch.
DisjointSystem build_system(const Params& params);

/// |g_n|_p from the Gamma closed form.
double block_lp_exact(const DisjointSystem& sys, std::uint64_t n, double p);

struct TailEstimate {
  double value = 0.0;
  double error_bound = 0.0;
};

/// G_g(z) = measure{ g > z } = sum_n width(n) exp(-(z / c(n))^2), probability
/// case. Exact sum to n = 10^4, then the Riemann-sum tail replaced by its
/// incomplete-gamma integral with a certified bracket. Throws
/// NonConvergence when the bracket exceeds rel_tol * value.
TailEstimate sup_tail_estimate(const DisjointSystem& sys, double z, double rel_tol = 1e-3);
double sup_tail(const DisjointSystem& sys, double z, double rel_tol = 1e-3);

struct SupLp {
  /// +inf for a divergent verdict.
  double value = 0.0;
  /// Bound on |value - |g|_p|.
  double error_bound = 0.0;
  quad::SeriesVerdict verdict = quad::SeriesVerdict::inconclusive;
  std::uint64_t n_terms = 0;
};

/// |g|_p = (sum_n |g_n|_p^p)^(1/p). For p < p0 the series tail is bracketed
/// analytically and `rel_tol` bounds the relative error of the sum; the
/// bracket narrows like 1/(2N) relative, so N grows as 1/(2 rel_tol). Throws
/// NonConvergence with the achieved bound when the budget runs out. For
/// p >= p0 the verdict is divergent.
SupLp sup_lp(const DisjointSystem& sys, double p, double rel_tol = 1e-6,
             std::uint64_t budget = 200'000'000);

// Verification procedures. Each returns a CheckResult and throws only on
// invalid input.

CheckResult verify_distance_axioms();

/// Quadrature against the closed form at n in {1, 10, 100}, p in {1, 2, 4}.
CheckResult verify_block_norms(const DisjointSystem& sys);

/// sup = sum = g and uniqueness of the active block at `samples` points.
CheckResult verify_disjointness(const DisjointSystem& sys, std::size_t samples, std::uint64_t seed);

/// Shape of the reference curve used to judge partial-sum growth.
enum class GrowthModel {
  /// integral_1^N term(x) dx
  integral_test,
  /// N / log(N)^(3p)
  leading_order,
};

/// Partial sums at `checkpoints` must increase strictly, consecutive ratios
/// must match the model's ratios within 25%, and the series must be
/// certified divergent beyond the last checkpoint.
CheckResult verify_partial_sum_growth(const quad::Term& term, const std::function<double(double)>& model,
                                      std::span<const std::uint64_t> checkpoints, std::string check_id);
CheckResult verify_partial_sum_growth(const DisjointSystem& sys, double p,
                                      std::span<const std::uint64_t> checkpoints,
                                      GrowthModel model = GrowthModel::integral_test);

/// log |f|_p against log(p0 - p): slope -1/p0 within 5%, r^2 >= 0.999.
CheckResult verify_sup_norm_blowup(const norms::LpOracle& lp, double p0, std::span<const double> p_schedule,
                                   std::string check_id);
CheckResult verify_sup_norm_blowup(const DisjointSystem& sys, std::span<const double> p_schedule);

/// F(p) = (p0 - p)^beta |f|_p on the schedule. Bounded when log F does not
/// fall against log(p0 - p) (slope >= -0.05); non-vanishing when it does not
/// rise (slope <= 0.05) and the near-p0 minimum is at least 0.1 of the
/// maximum. Passes when both hold and max/min over the near-p0 half <= 10.
CheckResult verify_gls_exactness(const norms::LpOracle& lp, double p0, double beta,
                                 std::span<const double> p_schedule, std::string check_id);
CheckResult verify_gls_exactness(const DisjointSystem& sys, std::span<const double> p_schedule);

/// log G(z) against log z: slope -p0 within 3%, r^2 >= 0.999. The fitted
/// constant exp(intercept) is recorded in the detail.
CheckResult verify_sup_tail_power_law(const std::function<double(double)>& tail_fn, double p0,
                                      std::span<const double> z_schedule, std::string check_id);
CheckResult verify_sup_tail_power_law(const DisjointSystem& sys, std::span<const double> z_schedule);

/// I(eps) = integral_eps^(1/2) integrand(x) dx: strictly increasing in
/// 1/eps, linear in sqrt|log eps| with r^2 >= 0.995 and positive slope, and
/// the slope within 15% of `expected_slope` when given.
CheckResult verify_modular_divergence(const std::function<double(double)>& integrand,
                                      std::span<const double> eps_schedule,
                                      std::optional<double> expected_slope, std::string check_id);
/// integrand = log_tempered_power(p0) composed with power_tail(p0, 1);
/// expected slope 2 sqrt(p0).
CheckResult verify_modular_divergence(double p0, std::span<const double> eps_schedule);

/// The curve I(eps) of verify_modular_divergence for the default integrand.
double modular_integral(double p0, double eps);

/// sum_n measure{ |g_n| > eps } = sum_n exp(-eps^2 log(n+3)^6), infinite case.
quad::SeriesResult borel_cantelli_sum(const DisjointSystem& sys, double eps);

/// Block norms at n in {1, 10, 100, 10^4, 10^6}: the grand Lebesgue norm for
/// the sqrt(p) generator (infinite case) or |g_n|_p0 (probability case).
/// Passes when they decrease from n = 10 on and the last is below
/// `final_ratio` times the first.
CheckResult verify_continuity(const DisjointSystem& sys, double final_ratio = 1e-2);

}  // namespace orlicz::counterexample
