#include "orlicz/quad.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>

#include "orlicz/error.hpp"

namespace orlicz::quad {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kInf = std::numeric_limits<double>::infinity();

// Kronrod 15-point abscissae and weights; every odd-indexed node is also a
// 7-point Gauss node.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

// exp(-T^2) ~ 1e-300: the transformed variable never leaves normal range.
constexpr double kSingularCutoff = 26.2;

struct Segment {
  double a = 0.0;
  double b = 0.0;
  double value = 0.0;
  double error = 0.0;
};

struct ByError {
  bool operator()(const Segment& lhs, const Segment& rhs) const { return lhs.error < rhs.error; }
};

Segment gauss_kronrod(const Integrand& g, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = g(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  double absolute = std::abs(fc) * kWgk[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = g(center - dx);
    const double f2 = g(center + dx);
    kronrod += kWgk[j] * (f1 + f2);
    absolute += kWgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }
  Segment s{a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
  s.error = std::max(s.error, 50.0 * kEps * absolute * std::abs(half));
  if (!std::isfinite(s.value) || !std::isfinite(s.error)) {
    throw Error(Errc::non_convergence, "integrand is not finite on [" + std::to_string(a) + ", " +
                                           std::to_string(b) + "]");
  }
  return s;
}

QuadResult adaptive(const Integrand& g, double lo, double hi, const QuadOptions& opt,
                    const std::function<void(double)>& after_first_pass = {}) {
  constexpr std::size_t kEvalsPerSegment = 15;
  std::priority_queue<Segment, std::vector<Segment>, ByError> heap;
  std::vector<Segment> frozen;
  QuadResult out;

  Segment first = gauss_kronrod(g, lo, hi);
  out.evaluations = kEvalsPerSegment;
  double total_value = first.value;
  double total_error = first.error;
  heap.push(first);
  if (after_first_pass) after_first_pass(total_value);

  auto tolerance = [&] { return std::max(opt.abs_tol, opt.rel_tol * std::abs(total_value)); };

  while (!heap.empty() && total_error > tolerance()) {
    if (out.evaluations + 2 * kEvalsPerSegment > opt.max_evaluations) {
      throw Error(Errc::non_convergence,
                  "evaluation budget exhausted; error estimate " + std::to_string(total_error));
    }
    const Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b) ||
        worst.b - worst.a <= 8.0 * kEps * std::max(std::abs(worst.a), std::abs(worst.b))) {
      frozen.push_back(worst);
      continue;
    }
    const Segment left = gauss_kronrod(g, worst.a, mid);
    const Segment right = gauss_kronrod(g, mid, worst.b);
    out.evaluations += 2 * kEvalsPerSegment;
    total_value += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }

  CompensatedSum value;
  CompensatedSum error;
  for (const auto& s : frozen) {
    value += s.value;
    error += s.error;
  }
  while (!heap.empty()) {
    value += heap.top().value;
    error += heap.top().error;
    heap.pop();
  }
  out.value = value.value();
  out.abs_error_estimate = error.value();
  if (out.abs_error_estimate > std::max(opt.abs_tol, opt.rel_tol * std::abs(out.value))) {
    throw Error(Errc::non_convergence, "roundoff limits the error estimate to " +
                                           std::to_string(out.abs_error_estimate));
  }
  return out;
}

}  // namespace

std::string to_string(SeriesVerdict verdict) {
  switch (verdict) {
    case SeriesVerdict::convergent: return "convergent";
    case SeriesVerdict::divergent: return "divergent";
    case SeriesVerdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

QuadResult integrate(const Integrand& f, double lo, double hi, const QuadOptions& options) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw Error(Errc::domain_mismatch, "integration interval must be finite with lo < hi");
  }
  if (options.singularity == Singularity::none) return adaptive(f, lo, hi, options);

  const double width = hi - lo;
  const bool left = options.singularity == Singularity::left;
  const double end = left ? lo : hi;
  // x = end +/- width * exp(-t^2); points that round onto the singular end
  // carry no resolvable measure and contribute nothing.
  Integrand transformed = [&f, width, left, end](double t) {
    const double e = std::exp(-t * t);
    const double x = left ? end + width * e : end - width * e;
    if (x == end || e == 0.0) return 0.0;
    return f(x) * 2.0 * width * t * e;
  };

  const double edge = std::abs(transformed(kSingularCutoff));
  auto check_edge = [&](double value) {
    const double budget = std::max(options.abs_tol, options.rel_tol * std::abs(value));
    if (edge > 1e-3 * budget) {
      throw Error(Errc::non_convergence,
                  "integrand does not decay at the singular endpoint (mass escapes to the endpoint)");
    }
  };
  QuadResult r = adaptive(transformed, 0.0, kSingularCutoff, options, check_edge);
  check_edge(r.value);
  r.evaluations += 1;
  return r;
}

namespace {

struct TailIntegral {
  enum class Status { finite, divergent, unresolved } status = Status::unresolved;
  double lower = 0.0;
  double upper = kInf;
};

// Integral of a nonnegative non-increasing term over [start, inf), by
// doubling blocks. Eight consecutive non-decreasing blocks witness divergence.
TailIntegral tail_integral(const Term& term, double start, double target) {
  constexpr int kMaxBlocks = 1000;
  constexpr int kGrowthWitness = 8;
  TailIntegral out;
  CompensatedSum blocks;
  CompensatedSum errors;
  double previous = kInf;
  int growing = 0;
  double a = start;
  QuadOptions opt;
  opt.abs_tol = std::max(target * 1e-3, std::numeric_limits<double>::min());
  opt.rel_tol = 1e-10;
  for (int j = 0; j < kMaxBlocks && a < 1e300; ++j) {
    const double b = 2.0 * a;
    QuadResult r;
    try {
      r = integrate(term, a, b, opt);
    } catch (const Error&) {
      return out;
    }
    blocks += r.value;
    errors += r.abs_error_estimate;
    if (r.value >= previous * (1.0 - 1e-9)) {
      if (++growing >= kGrowthWitness) {
        out.status = TailIntegral::Status::divergent;
        out.lower = blocks.value() - errors.value();
        return out;
      }
    } else {
      growing = 0;
    }
    if (r.value <= target && r.value < previous) {
      const double ratio = r.value / previous;
      const double remainder = r.value * ratio / (1.0 - ratio);
      if (remainder <= target) {
        out.status = TailIntegral::Status::finite;
        out.lower = std::max(0.0, blocks.value() - errors.value());
        out.upper = blocks.value() + errors.value() + remainder;
        return out;
      }
    }
    previous = r.value;
    a = b;
  }
  return out;
}

bool is_power_of_two(std::uint64_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace

SeriesResult sum_series(const Term& term, std::uint64_t monotone_from, double tol,
                        std::uint64_t budget, const TailModel& tail_model) {
  if (monotone_from < 1) monotone_from = 1;
  if (!(tol > 0.0) || budget < monotone_from) {
    throw Error(Errc::bad_parameter, "sum_series needs tol > 0 and budget >= monotone_from");
  }
  constexpr int kSpotCheck = 16;
  double prev = term(static_cast<double>(monotone_from));
  for (int k = 1; k < kSpotCheck; ++k) {
    const double cur = term(static_cast<double>(monotone_from + k));
    if (prev < 0.0 || cur < 0.0 || cur > prev * (1.0 + 1e-12) + std::numeric_limits<double>::min()) {
      throw Error(Errc::monotonicity_violation,
                  "term increases at n = " + std::to_string(monotone_from + k));
    }
    prev = cur;
  }

  SeriesResult out;
  CompensatedSum sum;
  std::uint64_t n = 0;
  double last = 0.0;
  TailBracket bracket{0.0, kInf};
  while (n < budget) {
    ++n;
    last = term(static_cast<double>(n));
    sum += last;
    if (n < monotone_from) continue;
    if (tail_model) {
      if (is_power_of_two(n) || n == budget) {
        bracket = tail_model(n);
        if (bracket.upper - bracket.lower <= tol) break;
      }
    } else if (last <= 0.25 * tol) {
      break;
    }
  }
  out.n_terms = n;
  const double explicit_sum = sum.value();

  if (tail_model) {
    if (n == budget) bracket = tail_model(n);
    out.partial_sum = explicit_sum + bracket.lower;
    out.tail_bound = bracket.upper - bracket.lower;
    out.verdict = std::isfinite(out.tail_bound) && out.tail_bound <= tol ? SeriesVerdict::convergent
                                                                         : SeriesVerdict::inconclusive;
    return out;
  }

  const TailIntegral tail = tail_integral(term, static_cast<double>(n) + 1.0, 0.125 * tol);
  switch (tail.status) {
    case TailIntegral::Status::finite:
      // sum_{k>n} term(k) lies in [I(n+1), term(n) + I(n+1)].
      out.partial_sum = explicit_sum + tail.lower;
      out.tail_bound = last + (tail.upper - tail.lower);
      out.verdict = out.tail_bound <= tol ? SeriesVerdict::convergent : SeriesVerdict::inconclusive;
      break;
    case TailIntegral::Status::divergent:
      out.partial_sum = explicit_sum + tail.lower;
      out.tail_bound = kInf;
      out.verdict = SeriesVerdict::divergent;
      out.divergence_witness = out.partial_sum;
      break;
    case TailIntegral::Status::unresolved:
      out.partial_sum = explicit_sum;
      out.tail_bound = kInf;
      out.verdict = SeriesVerdict::inconclusive;
      break;
  }
  return out;
}

GrowthProfile partial_sums(const Term& term, std::span<const std::uint64_t> checkpoints) {
  for (std::size_t i = 1; i < checkpoints.size(); ++i) {
    if (checkpoints[i] <= checkpoints[i - 1]) {
      throw Error(Errc::bad_parameter, "checkpoints must be strictly increasing");
    }
  }
  GrowthProfile out;
  out.checkpoints.reserve(checkpoints.size());
  out.values.reserve(checkpoints.size());
  CompensatedSum sum;
  std::uint64_t n = 0;
  for (const std::uint64_t cp : checkpoints) {
    while (n < cp) {
      ++n;
      sum += term(static_cast<double>(n));
    }
    out.checkpoints.push_back(static_cast<double>(cp));
    out.values.push_back(sum.value());
  }
  return out;
}

FitResult linear_fit(std::span<const std::pair<double, double>> points) {
  if (points.size() < 3) throw Error(Errc::too_few_points, "a fit needs at least 3 points");
  const double count = static_cast<double>(points.size());
  double mx = 0.0;
  double my = 0.0;
  for (const auto& [x, y] : points) {
    if (!std::isfinite(x) || !std::isfinite(y)) {
      throw Error(Errc::non_positive_coordinate, "fit coordinates must be finite");
    }
    mx += x;
    my += y;
  }
  mx /= count;
  my /= count;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (const auto& [x, y] : points) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
    syy += (y - my) * (y - my);
  }
  if (sxx == 0.0) throw Error(Errc::too_few_points, "fit abscissae are all equal");
  FitResult fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double residual = 0.0;
  for (const auto& [x, y] : points) {
    const double r = y - (fit.intercept + fit.slope * x);
    residual += r * r;
  }
  if (syy == 0.0) {
    fit.r_squared = residual == 0.0 ? 1.0 : 0.0;
  } else {
    fit.r_squared = std::clamp(1.0 - residual / syy, 0.0, 1.0);
  }
  return fit;
}

FitResult loglog_fit(std::span<const std::pair<double, double>> points) {
  if (points.size() < 3) throw Error(Errc::too_few_points, "a fit needs at least 3 points");
  std::vector<std::pair<double, double>> logs;
  logs.reserve(points.size());
  for (const auto& [x, y] : points) {
    if (!(x > 0.0) || !(y > 0.0)) {
      throw Error(Errc::non_positive_coordinate, "log-log fit needs strictly positive coordinates");
    }
    logs.emplace_back(std::log(x), std::log(y));
  }
  return linear_fit(logs);
}

}  // namespace orlicz::quad
