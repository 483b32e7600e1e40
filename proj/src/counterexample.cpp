#include "orlicz/counterexample.hpp"

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "orlicz/anchors.hpp"
#include "orlicz/error.hpp"
#include "orlicz/young.hpp"

namespace orlicz::counterexample {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMaxExactIndex = 9007199254740992.0;  // 2^53
constexpr std::uint64_t kExplicitTailTerms = 10'000;

std::string fmt(double x) {
  std::ostringstream out;
  out << x;
  return out.str();
}

void require_probability(const DisjointSystem& sys, const char* what) {
  if (!sys.is_probability()) throw Error(Errc::unsupported, std::string(what) + " needs the probability case");
}

void require_infinite(const DisjointSystem& sys, const char* what) {
  if (sys.is_probability()) throw Error(Errc::unsupported, std::string(what) + " needs the infinite-measure case");
}

CheckResult make_check(std::string id, Anchor anchor) {
  CheckResult out;
  out.check_id = std::move(id);
  out.anchor = std::string(anchor_text(anchor));
  return out;
}

// a * gamma(a, x) / x^a, the lower incomplete gamma normalized by its
// small-x behaviour.
double normalized_lower_gamma(double a, double x) {
  if (x < 1.0) {
    quad::CompensatedSum sum;
    double power = 1.0;
    for (int k = 0; k < 60; ++k) {
      sum += power / (a + k);
      power *= -x / (k + 1);
      if (std::abs(power) < 1e-20) break;
    }
    return a * sum.value();
  }
  return a * boost::math::tgamma_lower(a, x) * std::pow(x, -a);
}

void require_schedule(std::span<const double> s, std::size_t min_size, const char* what) {
  if (s.size() < min_size) {
    throw Error(Errc::too_few_points, std::string(what) + " needs at least " + std::to_string(min_size) +
                                          " points");
  }
}

}  // namespace

IndexPoint IndexPoint::at(std::uint64_t n) {
  if (n == 0) throw Error(Errc::bad_parameter, "index points are positive integers");
  IndexPoint out;
  out.n_ = n;
  return out;
}

std::uint64_t IndexPoint::value() const {
  if (!n_) throw Error(Errc::bad_parameter, "the point at infinity has no integer value");
  return *n_;
}

double distance(IndexPoint i, IndexPoint j) {
  const double a = i.is_infinity() ? 0.0 : 1.0 / static_cast<double>(i.value());
  const double b = j.is_infinity() ? 0.0 : 1.0 / static_cast<double>(j.value());
  return std::abs(a - b);
}

DisjointSystem::DisjointSystem(Params params) : params_(params) {
  if (params_.kind == Case::probability) {
    if (!(params_.alpha > 0.0 && params_.alpha < 1.0)) {
      throw Error(Errc::bad_parameter, "alpha must lie in (0,1), got " + fmt(params_.alpha));
    }
    if (!(params_.p0 > 1.0) || !std::isfinite(params_.p0)) {
      throw Error(Errc::bad_parameter, "p0 must be finite and > 1, got " + fmt(params_.p0));
    }
  }
}

space::MeasureDomain DisjointSystem::domain() const noexcept {
  return is_probability() ? space::MeasureDomain::unit_interval() : space::MeasureDomain::positive_halfline();
}

double DisjointSystem::c(double n) const {
  if (!is_probability()) return std::pow(std::log(n + 3.0), -3.0);
  return std::pow(n, params_.alpha / params_.p0);
}

double DisjointSystem::left(double n) const {
  if (!is_probability()) return n;
  return 1.0 - 0.5 * std::pow(n, -params_.alpha);
}

double DisjointSystem::width(double n) const {
  if (!is_probability()) return 1.0;
  // 0.5 (n^-alpha - (n+1)^-alpha) without cancellation.
  return -0.5 * std::pow(n, -params_.alpha) * std::expm1(-params_.alpha * std::log1p(1.0 / n));
}

space::Interval DisjointSystem::support(std::uint64_t n) const {
  if (n == 0) throw Error(Errc::bad_parameter, "block indices start at 1");
  const double x = static_cast<double>(n);
  return {left(x), left(x + 1.0)};
}

space::RealFunction DisjointSystem::block(std::uint64_t n) const {
  if (n == 0) throw Error(Errc::bad_parameter, "block indices start at 1");
  const double x = static_cast<double>(n);
  return space::scale_translate(space::f_half(), c(x), left(x), width(x));
}

std::optional<std::uint64_t> DisjointSystem::index_of(double x) const {
  if (!is_probability()) {
    if (!(x > 1.0) || !std::isfinite(x) || x == std::floor(x)) return std::nullopt;
    if (x >= kMaxExactIndex) throw Error(Errc::unsupported, "index beyond 2^53");
    return static_cast<std::uint64_t>(std::floor(x));
  }
  if (!(x > 0.5 && x < 1.0)) return std::nullopt;
  const double y = 1.0 - x;
  const double guess = std::floor(std::pow(0.5 / y, 1.0 / params_.alpha));
  if (guess >= kMaxExactIndex) throw Error(Errc::unsupported, "index beyond 2^53");
  const auto center = static_cast<std::uint64_t>(std::max(guess, 1.0));
  for (std::uint64_t n = center > 2 ? center - 2 : 1; n <= center + 2; ++n) {
    const double nn = static_cast<double>(n);
    if (left(nn) < x && x < left(nn + 1.0)) return n;
  }
  return std::nullopt;
}

Located DisjointSystem::locate_upper(double y) const {
  require_probability(*this, "locate_upper");
  if (!(y > 0.0 && y < 0.5)) throw Error(Errc::bad_parameter, "locate_upper needs y in (0, 1/2)");
  const double alpha = params_.alpha;
  double n = std::max(1.0, std::floor(std::pow(0.5 / y, 1.0 / alpha)));
  if (n < kMaxExactIndex) {
    while (n > 1.0 && y > 0.5 * std::pow(n, -alpha)) n -= 1.0;
    while (y <= 0.5 * std::pow(n + 1.0, -alpha)) n += 1.0;
  }
  Located out;
  out.n = n;
  out.resolved = n / alpha <= 1073741824.0;  // 2^30
  if (out.resolved) {
    out.local = std::clamp((0.5 * std::pow(n, -alpha) - y) / width(n), 0.0, 1.0);
  }
  return out;
}

double DisjointSystem::sup_value(double x) const {
  const auto n = index_of(x);
  if (!n) return 0.0;
  const double nn = static_cast<double>(*n);
  const double local = (x - left(nn)) / width(nn);
  return c(nn) * space::f_half()(local);
}

DisjointSystem build_system(const Params& params) {
  DisjointSystem sys(params);
  for (const std::uint64_t n : {1u, 10u, 100u}) space::verify_closed_forms(sys.block(n));
  return sys;
}

double block_lp_exact(const DisjointSystem& sys, std::uint64_t n, double p) {
  if (n == 0 || !(p >= 1.0) || !std::isfinite(p)) {
    throw Error(Errc::bad_parameter, "block_lp_exact needs n >= 1 and finite p >= 1");
  }
  const double x = static_cast<double>(n);
  const double log_gamma = std::lgamma(0.5 * p + 1.0);
  return std::exp((p * std::log(sys.c(x)) + log_gamma + std::log(sys.width(x))) / p);
}

TailEstimate sup_tail_estimate(const DisjointSystem& sys, double z, double rel_tol) {
  require_probability(sys, "sup_tail");
  if (!(z > 0.0) || !std::isfinite(z)) throw Error(Errc::bad_parameter, "sup_tail needs finite z > 0");
  const double alpha = sys.params().alpha;
  const double p0 = sys.params().p0;
  auto level = [&](double n) {
    const double r = z / sys.c(n);
    return std::exp(-r * r);
  };

  quad::CompensatedSum head;
  for (std::uint64_t n = 1; n <= kExplicitTailTerms; ++n) {
    const double x = static_cast<double>(n);
    head += sys.width(x) * level(x);
  }

  // The remaining terms are a lower Riemann sum, in u = n^-alpha, of the
  // decreasing 0.5 exp(-z^2 u^(2/p0)) over (0, U]. It falls short of the
  // integral by at most the sum over doubling index blocks of
  // width * (level rise).
  const double m0 = static_cast<double>(kExplicitTailTerms + 1);
  const double u0 = std::pow(m0, -alpha);
  const double a = 0.5 * p0;
  const double x = z * z * std::pow(u0, 2.0 / p0);
  const double integral = x < 1.0 ? 0.5 * u0 * normalized_lower_gamma(a, x)
                                  : 0.25 * p0 * std::pow(z, -p0) * boost::math::tgamma_lower(a, x);
  quad::CompensatedSum excess;
  for (double m = m0; m < 1e300; m *= 2.0) {
    const double w = sys.width(m);
    if (w == 0.0) break;
    excess += w * (level(2.0 * m) - level(m));
  }
  TailEstimate out;
  out.error_bound = 0.5 * excess.value();
  out.value = head.value() + integral - out.error_bound;
  if (out.error_bound > rel_tol * out.value) {
    throw Error(Errc::non_convergence, "sup_tail bracket " + fmt(out.error_bound) + " exceeds tolerance at z = " +
                                           fmt(z));
  }
  return out;
}

double sup_tail(const DisjointSystem& sys, double z, double rel_tol) {
  return sup_tail_estimate(sys, z, rel_tol).value;
}

SupLp sup_lp(const DisjointSystem& sys, double p, double rel_tol, std::uint64_t budget) {
  require_probability(sys, "sup_lp");
  if (!(p >= 1.0) || !std::isfinite(p)) throw Error(Errc::bad_parameter, "sup_lp needs finite p >= 1");
  const double alpha = sys.params().alpha;
  const double p0 = sys.params().p0;
  const double gamma = std::exp(std::lgamma(0.5 * p + 1.0));
  const double q = alpha * p / p0;
  const quad::Term term = [&](double n) { return gamma * std::pow(n, q) * sys.width(n); };

  SupLp out;
  if (p >= p0) {
    const auto r = quad::sum_series(term, 1, 1e-12 * gamma, std::min<std::uint64_t>(budget, 1u << 20));
    out.verdict = r.verdict;
    out.n_terms = r.n_terms;
    if (r.verdict == quad::SeriesVerdict::divergent) {
      out.value = kInf;
      out.error_bound = kInf;
      return out;
    }
    if (r.verdict == quad::SeriesVerdict::inconclusive) {
      throw Error(Errc::non_convergence, "sup_lp could not classify the series at p = " + fmt(p));
    }
    out.value = std::pow(r.partial_sum + 0.5 * r.tail_bound, 1.0 / p);
    out.error_bound = out.value * r.tail_bound / (p * r.partial_sum);
    return out;
  }

  // alpha/2 (n+1)^(-alpha-1) <= width(n) <= alpha/2 n^(-alpha-1).
  const double gap = alpha - q;
  const quad::TailModel model = [=](std::uint64_t n) {
    const double nn = static_cast<double>(n);
    const double upper = gamma * 0.5 * alpha * std::pow(nn, -gap) / gap;
    const double lower = gamma * 0.5 * alpha * std::pow((nn + 1.0) / (nn + 2.0), q) * std::pow(nn + 2.0, -gap) / gap;
    return quad::TailBracket{lower, upper};
  };
  const double estimate = gamma * p0 / (2.0 * (p0 - p));
  const auto r = quad::sum_series(term, 1, rel_tol * estimate, budget, model);
  if (r.verdict != quad::SeriesVerdict::convergent) {
    throw Error(Errc::non_convergence, "sup_lp tail bracket " + fmt(r.tail_bound) + " after " +
                                           std::to_string(r.n_terms) + " terms at p = " + fmt(p));
  }
  out.verdict = r.verdict;
  out.n_terms = r.n_terms;
  const double sum = r.partial_sum + 0.5 * r.tail_bound;
  out.value = std::pow(sum, 1.0 / p);
  out.error_bound = out.value * 0.5 * r.tail_bound / (p * r.partial_sum);
  return out;
}

CheckResult verify_distance_axioms() {
  auto out = make_check("distance_axioms", Anchor::distance);
  std::vector<IndexPoint> points;
  for (std::uint64_t n = 1; n <= 100; ++n) points.push_back(IndexPoint::at(n));
  points.push_back(IndexPoint::infinity());
  std::size_t violations = 0;
  for (const auto& i : points) {
    if (distance(i, i) != 0.0) ++violations;
    if (!i.is_infinity() && distance(i, IndexPoint::infinity()) != 1.0 / static_cast<double>(i.value())) {
      ++violations;
    }
    for (const auto& j : points) {
      if (distance(i, j) != distance(j, i) || distance(i, j) < 0.0) ++violations;
      for (const auto& k : points) {
        if (distance(i, k) > distance(i, j) + distance(j, k) + 1e-15) ++violations;
      }
    }
  }
  out.computed = static_cast<double>(violations);
  out.oracle = 0.0;
  out.tolerance = 0.0;
  out.verdict = verdict_of(violations == 0);
  out.detail = std::to_string(violations) + " violations over {1..100, inf}";
  return out;
}

CheckResult verify_block_norms(const DisjointSystem& sys) {
  auto out = make_check(sys.is_probability() ? "block_norms:probability" : "block_norms:infinite_measure",
                        Anchor::block_norm);
  double worst = 0.0;
  std::ostringstream detail;
  for (const std::uint64_t n : {1u, 10u, 100u}) {
    const auto g = sys.block(n);
    for (const double p : {1.0, 2.0, 4.0}) {
      const double exact = block_lp_exact(sys, n, p);
      const double numeric = norms::lp_norm(g, p, 1e-13, norms::Method::quadrature).value;
      const double dev = std::abs(numeric - exact) / exact;
      if (dev > worst) {
        worst = dev;
        detail.str("");
        detail << "worst at n = " << n << ", p = " << p;
      }
    }
  }
  out.computed = worst;
  out.oracle = 0.0;
  out.tolerance = 1e-8;
  out.verdict = verdict_of(worst <= out.tolerance);
  out.detail = detail.str().empty() ? "exact agreement" : detail.str();
  return out;
}

CheckResult verify_disjointness(const DisjointSystem& sys, std::size_t samples, std::uint64_t seed) {
  auto out = make_check(sys.is_probability() ? "disjointness:probability" : "disjointness:infinite_measure",
                        Anchor::block_disjointness);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> draw(0.0, sys.is_probability() ? 0.999 : 200.0);
  std::size_t violations = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    const double x = draw(rng);
    const auto n = sys.index_of(x);
    const double g = sys.sup_value(x);
    if (!n) {
      violations += g != 0.0;
      continue;
    }
    double sup = 0.0;
    double total = 0.0;
    std::size_t active = 0;
    for (std::uint64_t k = *n > 2 ? *n - 2 : 1; k <= *n + 2; ++k) {
      const double v = std::abs(sys.block(k)(x));
      if (v != 0.0) ++active;
      if (v != 0.0 && k != *n) ++violations;
      sup = std::max(sup, v);
      total += v;
    }
    if (active > 1 || sup != total || sup != g) ++violations;
  }
  out.computed = static_cast<double>(violations);
  out.oracle = 0.0;
  out.tolerance = 0.0;
  out.verdict = verdict_of(violations == 0);
  out.detail = std::to_string(violations) + " violations at " + std::to_string(samples) + " points";
  return out;
}

CheckResult verify_partial_sum_growth(const quad::Term& term, const std::function<double(double)>& model,
                                      std::span<const std::uint64_t> checkpoints, std::string check_id) {
  if (checkpoints.size() < 2) throw Error(Errc::too_few_points, "growth check needs at least 2 checkpoints");
  auto out = make_check(std::move(check_id), Anchor::partial_sum_divergence);
  const auto profile = quad::partial_sums(term, checkpoints);

  bool increasing = true;
  double worst = 0.0;
  std::ostringstream detail;
  detail.precision(6);
  detail << "ratios (actual/model):";
  for (std::size_t i = 1; i < checkpoints.size(); ++i) {
    increasing = increasing && profile.values[i] > profile.values[i - 1];
    const double actual = profile.values[i] / profile.values[i - 1];
    const double expected = model(static_cast<double>(checkpoints[i])) / model(static_cast<double>(checkpoints[i - 1]));
    worst = std::max(worst, std::abs(actual / expected - 1.0));
    detail << " " << actual << "/" << expected;
  }
  const auto series = quad::sum_series(term, 1, 1e-9, checkpoints.back());
  const bool divergent =
      series.verdict == quad::SeriesVerdict::divergent && series.divergence_witness > profile.values.back();
  detail << "; series verdict " << quad::to_string(series.verdict);
  if (!increasing) detail << "; partial sums not strictly increasing";

  out.computed = worst;
  out.oracle = 0.0;
  out.tolerance = 0.25;
  out.verdict = verdict_of(increasing && worst <= out.tolerance && divergent);
  out.detail = detail.str();
  return out;
}

CheckResult verify_partial_sum_growth(const DisjointSystem& sys, double p,
                                      std::span<const std::uint64_t> checkpoints, GrowthModel model) {
  require_infinite(sys, "partial-sum growth");
  if (!(p >= 1.0)) throw Error(Errc::bad_parameter, "growth check needs p >= 1");
  const double gamma = std::exp(std::lgamma(0.5 * p + 1.0));
  const quad::Term term = [gamma, p](double n) { return gamma * std::pow(std::log(n + 3.0), -3.0 * p); };
  std::function<double(double)> reference;
  std::string id = "partial_sum_growth:p=" + fmt(p);
  if (model == GrowthModel::leading_order) {
    reference = [p](double n) { return n / std::pow(std::log(n), 3.0 * p); };
    id += ":leading_order";
  } else {
    reference = [term](double n) {
      quad::QuadOptions opt;
      opt.abs_tol = 0.0;
      opt.rel_tol = 1e-12;
      quad::CompensatedSum total;
      for (double a = 1.0; a < n; a *= 10.0) total += quad::integrate(term, a, std::min(10.0 * a, n), opt).value;
      return total.value();
    };
  }
  return verify_partial_sum_growth(term, reference, checkpoints, std::move(id));
}

CheckResult verify_sup_norm_blowup(const norms::LpOracle& lp, double p0, std::span<const double> p_schedule,
                                   std::string check_id) {
  require_schedule(p_schedule, 8, "blow-up schedule");
  auto out = make_check(std::move(check_id), Anchor::sup_norm_blowup);
  out.oracle = -1.0 / p0;
  out.tolerance = 0.05 / p0;
  std::vector<std::pair<double, double>> points;
  for (const double p : p_schedule) {
    if (!(p < p0)) throw Error(Errc::bad_parameter, "blow-up schedule must stay below p0");
    points.emplace_back(p0 - p, lp(p));
  }
  try {
    const auto fit = quad::loglog_fit(points);
    out.fit = fit;
    out.computed = fit.slope;
    out.verdict = verdict_of(std::abs(fit.slope - out.oracle) <= out.tolerance && fit.r_squared >= 0.999);
    out.detail = "slope " + fmt(fit.slope) + ", r^2 " + fmt(fit.r_squared);
  } catch (const Error& e) {
    out.computed = std::numeric_limits<double>::quiet_NaN();
    out.verdict = Verdict::fail;
    out.detail = e.what();
  }
  return out;
}

CheckResult verify_sup_norm_blowup(const DisjointSystem& sys, std::span<const double> p_schedule) {
  require_probability(sys, "sup-norm blow-up");
  const auto lp = [&sys](double p) { return sup_lp(sys, p).value; };
  return verify_sup_norm_blowup(lp, sys.params().p0, p_schedule, "sup_norm_blowup");
}

CheckResult verify_gls_exactness(const norms::LpOracle& lp, double p0, double beta,
                                 std::span<const double> p_schedule, std::string check_id) {
  require_schedule(p_schedule, 8, "exactness schedule");
  auto out = make_check(std::move(check_id), Anchor::gls_exactness);
  std::vector<double> sorted(p_schedule.begin(), p_schedule.end());
  std::sort(sorted.begin(), sorted.end());
  if (!(sorted.back() < p0) || !(sorted.front() >= 1.0)) {
    throw Error(Errc::bad_parameter, "exactness schedule must lie in [1, p0)");
  }
  std::vector<double> weighted;
  for (const double p : sorted) weighted.push_back(std::pow(p0 - p, beta) * lp(p));
  const std::size_t near = sorted.size() / 2;
  const auto [min_near, max_near] = std::minmax_element(weighted.begin() + static_cast<std::ptrdiff_t>(near),
                                                        weighted.end());
  const double max_all = *std::max_element(weighted.begin(), weighted.end());
  std::vector<std::pair<double, double>> points;
  for (std::size_t i = near; i < sorted.size(); ++i) points.emplace_back(p0 - sorted[i], weighted[i]);

  out.oracle = 1.0;
  out.tolerance = 10.0;
  const bool finite = std::all_of(weighted.begin(), weighted.end(), [](double w) { return std::isfinite(w) && w > 0.0; });
  if (!finite) {
    out.computed = kInf;
    out.verdict = Verdict::fail;
    out.detail = "weighted norm is not finite and positive on the schedule";
    return out;
  }
  const auto fit = quad::loglog_fit(points);
  out.fit = fit;
  const bool bounded = fit.slope >= -0.05;
  const bool non_vanishing = fit.slope <= 0.05 && *min_near >= 0.1 * max_all;
  out.computed = *max_near / *min_near;
  out.verdict = verdict_of(bounded && non_vanishing && out.computed <= out.tolerance);
  std::ostringstream detail;
  detail << "near-p0 max/min " << out.computed << ", trend slope " << fit.slope;
  if (!bounded) detail << "; weighted norm grows toward p0 (unbounded)";
  if (!non_vanishing) detail << "; weighted norm decays toward p0 (not sharp)";
  out.detail = detail.str();
  return out;
}

CheckResult verify_gls_exactness(const DisjointSystem& sys, std::span<const double> p_schedule) {
  require_probability(sys, "exactness");
  const auto lp = [&sys](double p) { return sup_lp(sys, p).value; };
  return verify_gls_exactness(lp, sys.params().p0, 1.0 / sys.params().p0, p_schedule, "gls_exactness");
}

CheckResult verify_sup_tail_power_law(const std::function<double(double)>& tail_fn, double p0,
                                      std::span<const double> z_schedule, std::string check_id) {
  require_schedule(z_schedule, 8, "tail schedule");
  auto out = make_check(std::move(check_id), Anchor::sup_tail_power_law);
  out.oracle = -p0;
  out.tolerance = 0.03 * p0;
  std::vector<std::pair<double, double>> points;
  for (const double z : z_schedule) points.emplace_back(z, tail_fn(z));
  try {
    const auto fit = quad::loglog_fit(points);
    out.fit = fit;
    out.computed = fit.slope;
    out.verdict = verdict_of(std::abs(fit.slope - out.oracle) <= out.tolerance && fit.r_squared >= 0.999);
    out.detail = "slope " + fmt(fit.slope) + ", r^2 " + fmt(fit.r_squared) + ", fitted constant " +
                 fmt(std::exp(fit.intercept));
  } catch (const Error& e) {
    out.computed = std::numeric_limits<double>::quiet_NaN();
    out.verdict = Verdict::fail;
    out.detail = e.what();
  }
  return out;
}

CheckResult verify_sup_tail_power_law(const DisjointSystem& sys, std::span<const double> z_schedule) {
  require_probability(sys, "sup-tail power law");
  const auto tail_fn = [&sys](double z) { return sup_tail(sys, z); };
  return verify_sup_tail_power_law(tail_fn, sys.params().p0, z_schedule, "sup_tail_power_law");
}

CheckResult verify_modular_divergence(const std::function<double(double)>& integrand,
                                      std::span<const double> eps_schedule,
                                      std::optional<double> expected_slope, std::string check_id) {
  require_schedule(eps_schedule, 3, "epsilon schedule");
  auto out = make_check(std::move(check_id), Anchor::modular_divergence);
  std::vector<double> eps(eps_schedule.begin(), eps_schedule.end());
  std::sort(eps.begin(), eps.end(), std::greater<>());
  if (!(eps.front() < 0.5) || !(eps.back() > 0.0)) {
    throw Error(Errc::bad_parameter, "epsilon schedule must lie in (0, 1/2)");
  }
  // x = e^s turns each decade into a smooth unit-scale stretch.
  const auto in_s = [&integrand](double s) {
    const double x = std::exp(s);
    return integrand(x) * x;
  };
  quad::QuadOptions opt;
  opt.abs_tol = 0.0;
  opt.rel_tol = 1e-12;
  quad::CompensatedSum running;
  double upper = std::log(0.5);
  std::vector<std::pair<double, double>> points;
  std::vector<double> values;
  for (const double e : eps) {
    const double lower = std::log(e);
    for (double hi = upper; hi > lower;) {
      const double lo = std::max(lower, hi - 1.0);
      running += quad::integrate(in_s, lo, hi, opt).value;
      hi = lo;
    }
    upper = lower;
    values.push_back(running.value());
    points.emplace_back(std::sqrt(-lower), running.value());
  }
  bool increasing = true;
  for (std::size_t i = 1; i < values.size(); ++i) increasing = increasing && values[i] > values[i - 1];
  const auto fit = quad::linear_fit(points);
  out.fit = fit;
  bool ok = increasing && fit.r_squared >= 0.995 && fit.slope > 0.0;
  if (expected_slope) {
    out.computed = fit.slope;
    out.oracle = *expected_slope;
    out.tolerance = 0.15 * std::abs(*expected_slope);
    ok = ok && std::abs(fit.slope - *expected_slope) <= out.tolerance;
  } else {
    out.computed = fit.r_squared;
    out.oracle = 1.0;
    out.tolerance = 0.005;
  }
  out.verdict = verdict_of(ok);
  std::ostringstream detail;
  detail << "slope " << fit.slope << ", r^2 " << fit.r_squared << ", I(eps_min) = " << values.back();
  if (!increasing) detail << "; not strictly increasing";
  out.detail = detail.str();
  return out;
}

double modular_integral(double p0, double eps) {
  if (!(eps > 0.0 && eps < 0.5)) throw Error(Errc::bad_parameter, "modular_integral needs eps in (0, 1/2)");
  const auto psi = young::log_tempered_power(p0);
  const auto eta = space::power_tail(p0, 1.0);
  const auto in_s = [&psi, &eta](double s) {
    const double x = std::exp(s);
    return psi(eta(x)) * x;
  };
  quad::QuadOptions opt;
  opt.abs_tol = 0.0;
  opt.rel_tol = 1e-12;
  quad::CompensatedSum total;
  const double lower = std::log(eps);
  for (double hi = std::log(0.5); hi > lower;) {
    const double lo = std::max(lower, hi - 1.0);
    total += quad::integrate(in_s, lo, hi, opt).value;
    hi = lo;
  }
  return total.value();
}

CheckResult verify_modular_divergence(double p0, std::span<const double> eps_schedule) {
  const auto psi = young::log_tempered_power(p0);
  const auto eta = space::power_tail(p0, 1.0);
  const auto integrand = [&psi, &eta](double x) { return psi(eta(x)); };
  return verify_modular_divergence(integrand, eps_schedule, 2.0 * std::sqrt(p0), "modular_divergence");
}

quad::SeriesResult borel_cantelli_sum(const DisjointSystem& sys, double eps) {
  require_infinite(sys, "borel_cantelli_sum");
  if (!(eps > 0.0) || !std::isfinite(eps)) throw Error(Errc::bad_parameter, "borel_cantelli_sum needs eps > 0");
  const double e2 = eps * eps;
  const quad::Term term = [e2](double n) { return std::exp(-e2 * std::pow(std::log(n + 3.0), 6.0)); };
  return quad::sum_series(term, 1, 1e-12);
}

CheckResult verify_continuity(const DisjointSystem& sys, double final_ratio) {
  auto out = make_check(sys.is_probability() ? "continuity:probability" : "continuity:infinite_measure",
                        Anchor::continuity);
  const std::array<std::uint64_t, 5> ns{1, 10, 100, 10'000, 1'000'000};
  std::vector<double> values;
  if (sys.is_probability()) {
    for (const auto n : ns) values.push_back(block_lp_exact(sys, n, sys.params().p0));
  } else {
    const std::array<double, 10> p_grid{1, 2, 3, 4, 6, 8, 12, 16, 24, 32};
    const auto psi = young::psi_sqrt();
    for (const auto n : ns) values.push_back(norms::gls_norm(sys.block(n), psi, p_grid).value);
  }
  bool decreasing = true;
  for (std::size_t i = 2; i < values.size(); ++i) decreasing = decreasing && values[i] < values[i - 1];
  out.computed = values.back() / values.front();
  out.oracle = 0.0;
  out.tolerance = final_ratio;
  out.verdict = verdict_of(decreasing && out.computed < final_ratio);
  std::ostringstream detail;
  detail.precision(6);
  detail << "norms at n = 1, 10, 100, 1e4, 1e6:";
  for (const double v : values) detail << " " << v;
  if (!decreasing) detail << "; not decreasing from n = 10";
  out.detail = detail.str();
  return out;
}

}  // namespace orlicz::counterexample
