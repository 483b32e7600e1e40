#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace orlicz::quad {

using Integrand = std::function<double(double)>;

/// Neumaier-compensated accumulator. Results are independent of the
/// magnitude ordering of the summands to ~1e-16 relative.
class CompensatedSum {
 public:
  CompensatedSum& operator+=(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
    return *this;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

struct QuadResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  std::size_t evaluations = 0;
};

/// Endpoint at which the integrand may be singular. A singular endpoint is
/// removed by the substitution x = end -/+ w exp(-t^2), which turns
/// logarithmic and integrable power singularities into smooth, decaying
/// integrands in t. At a right end, points closer to it than one ulp are not
/// representable, so the mass there is lost: about 2 sqrt(ulp(hi)) for
/// (hi - x)^(-1/2).
enum class Singularity { none, left, right };

struct QuadOptions {
  double abs_tol = 1e-10;
  double rel_tol = 0.0;
  std::size_t max_evaluations = 1'000'000;
  Singularity singularity = Singularity::none;
};

/// Globally adaptive Gauss-Kronrod (7/15) quadrature on a finite interval.
/// Converges when the summed |K15 - G7| estimate is below
/// max(abs_tol, rel_tol * |value|); throws NonConvergence otherwise.
QuadResult integrate(const Integrand& f, double lo, double hi, const QuadOptions& options = {});

enum class SeriesVerdict { convergent, divergent, inconclusive };

std::string to_string(SeriesVerdict verdict);

struct SeriesResult {
  /// Certified lower bound for the full sum: explicit terms plus the lower
  /// integral-test bound on the omitted tail.
  double partial_sum = 0.0;
  /// Width of the bracket [partial_sum, partial_sum + tail_bound] that holds
  /// the true sum (infinite when no finite upper bound was established).
  double tail_bound = 0.0;
  std::uint64_t n_terms = 0;
  SeriesVerdict verdict = SeriesVerdict::inconclusive;
  /// For divergent verdicts: the lower bound reached by the growth witness.
  double divergence_witness = 0.0;
};

/// Bounds on sum_{n > N} term(n), supplied when the tail has a closed form.
struct TailBracket {
  double lower = 0.0;
  double upper = 0.0;
};
using TailModel = std::function<TailBracket(std::uint64_t)>;
using Term = std::function<double(double)>;

/// Sums term(1) + term(2) + ... for a nonnegative, eventually non-increasing
/// term. `term` is evaluated at integers for the explicit sum and at reals
/// for the integral-test tail. When `tail_model` is given it replaces the
/// numerical tail integral.
///
/// Throws MonotonicityViolation if one of the 16 terms sampled from
/// `monotone_from` on increases or is negative.
SeriesResult sum_series(const Term& term, std::uint64_t monotone_from, double tol,
                        std::uint64_t budget = 100'000'000, const TailModel& tail_model = {});

struct GrowthProfile {
  std::vector<double> checkpoints;
  std::vector<double> values;
};

/// values[i] = sum_{n <= checkpoints[i]} term(n), one compensated pass.
GrowthProfile partial_sums(const Term& term, std::span<const std::uint64_t> checkpoints);

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Least-squares line through (log x, log y).
FitResult loglog_fit(std::span<const std::pair<double, double>> points);

/// Least-squares line through (x, y) in linear coordinates.
FitResult linear_fit(std::span<const std::pair<double, double>> points);

}  // namespace orlicz::quad
