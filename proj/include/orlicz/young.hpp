#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "orlicz/check.hpp"

namespace orlicz::young {

/// Even convex generator of an Orlicz space. Stored as its restriction to
/// u >= 0; evaluation at negative u reflects.
class YoungFunction {
 public:
  YoungFunction(std::string label, std::function<double(double)> on_halfline,
                std::optional<double> growth_hint = std::nullopt)
      : label_(std::move(label)), eval_(std::move(on_halfline)), growth_hint_(growth_hint) {}

  double operator()(double u) const { return eval_(std::abs(u)); }
  const std::string& label() const noexcept { return label_; }
  /// Exponent p with Y(u) comparable to u^p, when such a power exists.
  std::optional<double> growth_hint() const noexcept { return growth_hint_; }

 private:
  std::string label_;
  std::function<double(double)> eval_;
  std::optional<double> growth_hint_;
};

/// Grand Lebesgue generator psi(p) on [1, b); b may be infinite.
class PsiGenerator {
 public:
  PsiGenerator(std::string label, std::function<double(double)> eval,
               double b = std::numeric_limits<double>::infinity())
      : label_(std::move(label)), eval_(std::move(eval)), b_(b) {}

  /// Throws DomainMismatch outside [1, b).
  double operator()(double p) const;
  double upper_limit() const noexcept { return b_; }
  bool in_domain(double p) const noexcept { return p >= 1.0 && p < b_; }
  const std::string& label() const noexcept { return label_; }

 private:
  std::string label_;
  std::function<double(double)> eval_;
  double b_;
};

// Builtins. Each throws BadParameter on out-of-range parameters.

/// |u|^p0, p0 >= 1.
YoungFunction power(double p0);
/// exp(u^2/2) - 1.
YoungFunction exp_square();
/// |u|^p0 (log(e + |u|))^(-1/2), p0 > 1.
YoungFunction log_tempered_power(double p0);
/// sqrt(p) on [1, inf).
PsiGenerator psi_sqrt();
/// (b - p)^(-beta) on [1, b), beta > 0, b > 1.
PsiGenerator psi_beta_b(double beta, double b);

/// u >= 0 with |Y(u) - y| <= tol * max(1, y), by bracketing and bisection.
/// When the bracket shrinks to adjacent doubles first, the closer end is
/// returned.
double inverse_young(const YoungFunction& y_fn, double y, double tol = 1e-14);

/// Y(0) = 0, evenness, strict increase past the first nonzero value and
/// nonnegative second differences (relative slack 1e-10) on `grid`.
CheckResult check_young_validity(const YoungFunction& y_fn, std::span<const double> grid);

enum class Dominance { dominated, not_dominated, inconclusive };

std::string to_string(Dominance d);

struct DominanceProfile {
  std::vector<double> lambdas;
  std::vector<double> u_schedule;
  /// ratios[i][j] = Psi(lambdas[i] * u_schedule[j]) / Phi(u_schedule[j])
  std::vector<std::vector<double>> ratios;
  Dominance verdict = Dominance::inconclusive;
};

/// Finite-schedule test of Psi(lambda u) / Phi(u) -> 0.
///
/// dominated: for every lambda the ratio strictly decreases over the last
/// half of the schedule and final / first < decay_factor.
/// not_dominated: for some lambda the ratio does not decrease over the last
/// half. Anything else, including non-finite ratios, is inconclusive.
DominanceProfile dominance_profile(const YoungFunction& psi, const YoungFunction& phi,
                                   std::span<const double> lambdas,
                                   std::span<const double> u_schedule, double decay_factor = 0.6);

struct Delta2Profile {
  double sup_ratio = 0.0;
  bool bounded = false;
  std::vector<double> ratios;
};

/// sup over the schedule of Y(2u) / Y(u). The ratio sequence counts as
/// bounded when it is finite and, over the last half of the schedule,
/// either non-increasing or increasing with non-increasing increments.
/// Throws DivisionByZero when Y(u) = 0 on the schedule.
Delta2Profile delta2_profile(const YoungFunction& y_fn, std::span<const double> u_schedule);

}  // namespace orlicz::young
