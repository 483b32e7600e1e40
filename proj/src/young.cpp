#include "orlicz/young.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "orlicz/error.hpp"

namespace orlicz::young {

double PsiGenerator::operator()(double p) const {
  if (!in_domain(p)) {
    std::ostringstream msg;
    msg << label_ << " is defined on [1, " << b_ << "), got p = " << p;
    throw Error(Errc::domain_mismatch, msg.str());
  }
  return eval_(p);
}

YoungFunction power(double p0) {
  if (!(p0 >= 1.0) || !std::isfinite(p0)) throw Error(Errc::bad_parameter, "power needs p0 >= 1");
  std::ostringstream label;
  label << "power(" << p0 << ")";
  return {label.str(), [p0](double u) { return std::pow(u, p0); }, p0};
}

YoungFunction exp_square() {
  return {"exp_square", [](double u) { return std::expm1(0.5 * u * u); }};
}

YoungFunction log_tempered_power(double p0) {
  if (!(p0 > 1.0) || !std::isfinite(p0)) {
    throw Error(Errc::bad_parameter, "log_tempered_power needs p0 > 1");
  }
  std::ostringstream label;
  label << "log_tempered_power(" << p0 << ")";
  return {label.str(),
          [p0](double u) { return std::pow(u, p0) / std::sqrt(std::log(std::numbers::e + u)); },
          p0};
}

PsiGenerator psi_sqrt() {
  return {"psi_sqrt", [](double p) { return std::sqrt(p); }};
}

PsiGenerator psi_beta_b(double beta, double b) {
  if (!(beta > 0.0) || !(b > 1.0) || !std::isfinite(beta) || !std::isfinite(b)) {
    throw Error(Errc::bad_parameter, "psi_beta_b needs beta > 0 and finite b > 1");
  }
  std::ostringstream label;
  label << "psi_beta_b(" << beta << ", " << b << ")";
  return {label.str(), [beta, b](double p) { return std::pow(b - p, -beta); }, b};
}

double inverse_young(const YoungFunction& y_fn, double y, double tol) {
  if (!(y >= 0.0) || !std::isfinite(y)) throw Error(Errc::bad_parameter, "inverse_young needs y >= 0");
  if (y == 0.0) return 0.0;
  const double accept = tol * std::max(1.0, y);
  double lo = 0.0;
  double hi = 1.0;
  while (y_fn(hi) < y) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e300) throw Error(Errc::non_convergence, "no bracket for inverse_young");
  }
  for (int iter = 0; iter < 4096; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double value = y_fn(mid);
    if (std::abs(value - y) <= accept) return mid;
    if (!(mid > lo && mid < hi)) {
      return std::abs(y_fn(lo) - y) <= std::abs(y_fn(hi) - y) ? lo : hi;
    }
    (value < y ? lo : hi) = mid;
  }
  throw Error(Errc::non_convergence, "inverse_young bisection did not terminate");
}

CheckResult check_young_validity(const YoungFunction& y_fn, std::span<const double> grid) {
  if (grid.size() < 8) throw Error(Errc::too_few_points, "validity grid needs at least 8 points");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < 0.0 || (i > 0 && grid[i] <= grid[i - 1])) {
      throw Error(Errc::bad_parameter, "validity grid must be ascending and nonnegative");
    }
  }
  CheckResult out;
  out.check_id = "young_validity:" + y_fn.label();
  out.anchor = "Y even, convex, strictly increasing, Y(0) = 0";
  out.oracle = 0.0;
  out.tolerance = 1e-10;

  std::size_t violations = 0;
  std::ostringstream first;
  auto record = [&](const std::string& what, double u) {
    if (violations++ == 0) first << what << " at u = " << u;
  };

  if (y_fn(0.0) != 0.0) record("Y(0) != 0", 0.0);
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    values[i] = y_fn(grid[i]);
    if (y_fn(-grid[i]) != values[i]) record("Y(-u) != Y(u)", grid[i]);
    if (!std::isfinite(values[i])) record("non-finite value", grid[i]);
  }
  bool positive = values[0] > 0.0;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (positive ? !(values[i] > values[i - 1]) : values[i] < values[i - 1]) {
      record("not strictly increasing", grid[i]);
    }
    positive = positive || values[i] > 0.0;
  }
  for (std::size_t i = 2; i < grid.size(); ++i) {
    const double s0 = (values[i - 1] - values[i - 2]) / (grid[i - 1] - grid[i - 2]);
    const double s1 = (values[i] - values[i - 1]) / (grid[i] - grid[i - 1]);
    if (s1 - s0 < -out.tolerance * std::max(std::abs(s0), std::abs(s1))) {
      record("negative second difference (concavity)", grid[i - 1]);
    }
  }
  out.computed = static_cast<double>(violations);
  out.verdict = verdict_of(violations == 0);
  out.detail = violations == 0 ? "no violations on " + std::to_string(grid.size()) + " points"
                               : first.str();
  return out;
}

std::string to_string(Dominance d) {
  switch (d) {
    case Dominance::dominated: return "dominated";
    case Dominance::not_dominated: return "not_dominated";
    case Dominance::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

DominanceProfile dominance_profile(const YoungFunction& psi, const YoungFunction& phi,
                                   std::span<const double> lambdas,
                                   std::span<const double> u_schedule, double decay_factor) {
  if (lambdas.empty() || std::any_of(lambdas.begin(), lambdas.end(), [](double l) { return !(l > 0.0); })) {
    throw Error(Errc::bad_parameter, "lambdas must be positive");
  }
  if (u_schedule.size() < 6) throw Error(Errc::too_few_points, "u schedule needs at least 6 points");
  for (std::size_t j = 1; j < u_schedule.size(); ++j) {
    if (!(u_schedule[j] > u_schedule[j - 1])) throw Error(Errc::bad_parameter, "u schedule must ascend");
  }
  if (!(u_schedule.front() > 0.0) || u_schedule.back() / u_schedule.front() < 1e4) {
    throw Error(Errc::bad_parameter, "u schedule must be positive and span at least 4 decades");
  }

  DominanceProfile out;
  out.lambdas.assign(lambdas.begin(), lambdas.end());
  out.u_schedule.assign(u_schedule.begin(), u_schedule.end());
  const std::size_t n = u_schedule.size();
  const std::size_t tail_start = (n - 1) / 2;
  bool all_dominated = true;
  bool any_flat = false;
  bool all_finite = true;
  for (const double lambda : lambdas) {
    std::vector<double> row(n);
    for (std::size_t j = 0; j < n; ++j) {
      row[j] = psi(lambda * u_schedule[j]) / phi(u_schedule[j]);
      all_finite = all_finite && std::isfinite(row[j]);
    }
    bool decreasing = true;
    for (std::size_t j = tail_start + 1; j < n; ++j) decreasing = decreasing && row[j] < row[j - 1];
    const bool decayed = row.back() < decay_factor * row.front();
    all_dominated = all_dominated && decreasing && decayed;
    any_flat = any_flat || row.back() >= row[tail_start];
    out.ratios.push_back(std::move(row));
  }
  if (!all_finite) {
    out.verdict = Dominance::inconclusive;
  } else if (all_dominated) {
    out.verdict = Dominance::dominated;
  } else if (any_flat) {
    out.verdict = Dominance::not_dominated;
  } else {
    out.verdict = Dominance::inconclusive;
  }
  return out;
}

Delta2Profile delta2_profile(const YoungFunction& y_fn, std::span<const double> u_schedule) {
  if (u_schedule.size() < 2) throw Error(Errc::too_few_points, "delta2 schedule needs 2 points");
  Delta2Profile out;
  out.ratios.reserve(u_schedule.size());
  bool finite = true;
  for (std::size_t i = 0; i < u_schedule.size(); ++i) {
    const double u = u_schedule[i];
    if (!(u > 0.0) || (i > 0 && !(u > u_schedule[i - 1]))) {
      throw Error(Errc::bad_parameter, "delta2 schedule must be positive and ascending");
    }
    const double base = y_fn(u);
    if (base == 0.0) throw Error(Errc::division_by_zero, "Y(u) = 0 at u = " + std::to_string(u));
    const double r = y_fn(2.0 * u) / base;
    finite = finite && std::isfinite(r);
    out.ratios.push_back(r);
  }
  out.sup_ratio = finite ? *std::max_element(out.ratios.begin(), out.ratios.end())
                         : std::numeric_limits<double>::infinity();

  bool saturating = true;
  const std::size_t start = (out.ratios.size() - 1) / 2;
  for (std::size_t i = start + 2; i < out.ratios.size(); ++i) {
    const double previous_step = out.ratios[i - 1] - out.ratios[i - 2];
    const double step = out.ratios[i] - out.ratios[i - 1];
    saturating = saturating && step <= std::max(previous_step, 0.0) + 1e-12 * std::abs(out.ratios[i]);
  }
  out.bounded = finite && saturating;
  return out;
}

}  // namespace orlicz::young
