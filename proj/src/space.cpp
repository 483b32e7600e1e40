#include "orlicz/space.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "orlicz/error.hpp"

namespace orlicz::space {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string format_label(const std::string& name, std::initializer_list<double> args) {
  std::ostringstream out;
  out << name << "(";
  bool first = true;
  for (const double a : args) {
    out << (first ? "" : ", ") << a;
    first = false;
  }
  out << ")";
  return out.str();
}

Interval domain_interval(MeasureDomain d) { return {0.0, d.upper()}; }

}  // namespace

RealFunction::RealFunction(Definition def) {
  if (!def.evaluate) throw Error(Errc::bad_parameter, "RealFunction needs an evaluator");
  if (!(def.support.lo <= def.support.hi) || !def.support.within(domain_interval(def.domain))) {
    throw Error(Errc::domain_mismatch, "support of " + def.label + " leaves its domain");
  }
  if (def.pieces.empty() && def.support.length() > 0.0) def.pieces.push_back({def.support});
  def_ = std::make_shared<const Definition>(std::move(def));
}

double RealFunction::operator()(double x) const {
  return def_->support.contains(x) ? def_->evaluate(x) : 0.0;
}

std::optional<double> RealFunction::closed_form_tail(double z) const {
  if (!def_->closed_form_tail) return std::nullopt;
  return def_->closed_form_tail(z);
}

std::optional<double> RealFunction::closed_form_norm(double p) const {
  if (!def_->closed_form_norm) return std::nullopt;
  return def_->closed_form_norm(p);
}

quad::QuadResult integrate_composed(const RealFunction& f, const std::function<double(double)>& outer,
                                    const quad::QuadOptions& options) {
  if (const auto& image = f.definition().affine_image) {
    const double abs_c = std::abs(image->c);
    quad::QuadOptions local = options;
    local.abs_tol = options.abs_tol / image->width;
    auto r = integrate_composed(image->base, [&outer, abs_c](double u) { return outer(abs_c * u); }, local);
    r.value *= image->width;
    r.abs_error_estimate *= image->width;
    return r;
  }
  const auto pieces = f.pieces();
  quad::QuadResult out;
  if (pieces.empty()) return out;
  for (const Piece& piece : pieces) {
    if (!std::isfinite(piece.span.lo) || !std::isfinite(piece.span.hi)) {
      throw Error(Errc::unsupported, "quadrature over an unbounded piece of " + f.label());
    }
  }
  const auto& eval = f.definition().evaluate;
  const auto integrand = [&](double x) { return outer(std::abs(eval(x))); };
  auto run = [&](const quad::QuadOptions& per_piece_base) {
    quad::QuadOptions per_piece = per_piece_base;
    quad::CompensatedSum value;
    quad::CompensatedSum error;
    quad::QuadResult r;
    for (const Piece& piece : pieces) {
      per_piece.singularity = piece.singularity;
      const auto p = quad::integrate(integrand, piece.span.lo, piece.span.hi, per_piece);
      value += p.value;
      error += p.abs_error_estimate;
      r.evaluations += p.evaluations;
    }
    r.value = value.value();
    r.abs_error_estimate = error.value();
    return r;
  };

  const double count = static_cast<double>(pieces.size());
  if (pieces.size() == 1 || options.rel_tol == 0.0) {
    quad::QuadOptions per_piece = options;
    per_piece.abs_tol = options.abs_tol / count;
    return run(per_piece);
  }
  // Many narrow pieces: a relative tolerance per piece can sit below the
  // resolution of the abscissae, so the relative budget is shared out in
  // absolute terms after a rough first pass.
  quad::QuadOptions rough = options;
  rough.abs_tol = options.abs_tol / count;
  rough.rel_tol = std::max(options.rel_tol, 1e-4);
  const auto first = run(rough);
  quad::QuadOptions fine = options;
  fine.abs_tol = std::max(options.abs_tol, options.rel_tol * std::abs(first.value)) / count;
  fine.rel_tol = 0.0;
  out = run(fine);
  out.evaluations += first.evaluations;
  return out;
}

quad::QuadResult integrate(const RealFunction& f, Interval where, const quad::QuadOptions& options) {
  if (!(where.lo < where.hi) || !where.within(domain_interval(f.domain()))) {
    throw Error(Errc::domain_mismatch, "integration interval leaves the domain of " + f.label());
  }
  quad::QuadResult out;
  quad::CompensatedSum value;
  quad::CompensatedSum error;
  std::size_t count = 0;
  for (const Piece& piece : f.pieces()) count += piece.span.hi > where.lo && piece.span.lo < where.hi;
  if (count == 0) return out;
  quad::QuadOptions per_piece = options;
  per_piece.abs_tol = options.abs_tol / static_cast<double>(count);
  for (const Piece& piece : f.pieces()) {
    const double lo = std::max(piece.span.lo, where.lo);
    const double hi = std::min(piece.span.hi, where.hi);
    if (!(lo < hi)) continue;
    per_piece.singularity = quad::Singularity::none;
    if (piece.singularity == quad::Singularity::left && lo == piece.span.lo) {
      per_piece.singularity = quad::Singularity::left;
    } else if (piece.singularity == quad::Singularity::right && hi == piece.span.hi) {
      per_piece.singularity = quad::Singularity::right;
    }
    const auto& eval = f.definition().evaluate;
    const auto r = quad::integrate(eval, lo, hi, per_piece);
    value += r.value;
    error += r.abs_error_estimate;
    out.evaluations += r.evaluations;
  }
  out.value = value.value();
  out.abs_error_estimate = error.value();
  return out;
}

const RealFunction& verify_closed_forms(const RealFunction& f) {
  constexpr double kRelTol = 1e-8;
  if (f.has_closed_form_norm()) {
    for (const double p : {1.0, 2.0, 4.0, 8.0}) {
      const double closed = *f.closed_form_norm(p);
      if (!std::isfinite(closed)) continue;
      quad::QuadOptions opt;
      opt.abs_tol = 0.0;
      opt.rel_tol = 1e-12;
      double numeric = 0.0;
      try {
        numeric = std::pow(integrate_composed(f, [p](double u) { return std::pow(u, p); }, opt).value,
                           1.0 / p);
      } catch (const Error& e) {
        throw Error(Errc::closed_form_mismatch,
                    f.label() + ": quadrature failed for p = " + std::to_string(p) + " (" + e.what() + ")");
      }
      if (std::abs(numeric - closed) > kRelTol * std::abs(closed)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << f.label() << ": |f|_" << p << " closed form " << closed << " vs quadrature " << numeric;
        throw Error(Errc::closed_form_mismatch, msg.str());
      }
    }
  }
  if (f.has_closed_form_tail() && std::isfinite(f.support().length())) {
    const double near_zero = *f.closed_form_tail(1e-300);
    if (std::abs(near_zero - f.support().length()) > kRelTol * f.support().length()) {
      throw Error(Errc::closed_form_mismatch, f.label() + ": tail at 0+ differs from the support measure");
    }
    double previous = near_zero;
    for (double z = 1e-3; z < 1e6; z *= 1.5) {
      const double t = *f.closed_form_tail(z);
      if (t > previous || t < 0.0) {
        throw Error(Errc::closed_form_mismatch, f.label() + ": closed-form tail increases");
      }
      previous = t;
    }
  }
  return f;
}

RealFunction f_half() {
  static const RealFunction instance = [] {
    RealFunction::Definition def;
    def.label = "f_half";
    def.domain = MeasureDomain::unit_interval();
    def.support = {0.0, 1.0};
    def.evaluate = [](double x) { return x > 0.0 ? std::sqrt(-std::log(x)) : 0.0; };
    def.monotonicity = Monotonicity::decreasing;
    def.pieces = {{{0.0, 1.0}, quad::Singularity::left}};
    def.closed_form_tail = [](double z) { return std::exp(-z * z); };
    def.closed_form_norm = [](double p) { return std::exp(std::lgamma(0.5 * p + 1.0) / p); };
    RealFunction f(std::move(def));
    verify_closed_forms(f);
    return f;
  }();
  return instance;
}

RealFunction indicator(Interval a, MeasureDomain domain) {
  if (!(a.lo < a.hi) || !a.within(domain_interval(domain))) {
    throw Error(Errc::domain_mismatch, "indicator set must be a nonempty interval inside the domain");
  }
  const double measure = a.length();
  RealFunction::Definition def;
  def.label = format_label("indicator", {a.lo, a.hi});
  def.domain = domain;
  def.support = a;
  def.evaluate = [](double) { return 1.0; };
  def.monotonicity = Monotonicity::decreasing;
  def.closed_form_tail = [measure](double z) { return z < 1.0 ? measure : 0.0; };
  def.closed_form_norm = [measure](double p) { return std::pow(measure, 1.0 / p); };
  RealFunction f(std::move(def));
  verify_closed_forms(f);
  return f;
}

RealFunction power_tail(double p0, double scale) {
  if (!(p0 > 1.0) || !(scale > 0.0) || !std::isfinite(p0) || !std::isfinite(scale)) {
    throw Error(Errc::bad_parameter, "power_tail needs p0 > 1 and scale > 0");
  }
  RealFunction::Definition def;
  def.label = format_label("power_tail", {p0, scale});
  def.domain = MeasureDomain::unit_interval();
  def.support = {0.0, 1.0};
  def.evaluate = [p0, scale](double x) { return scale * std::pow(x, -1.0 / p0); };
  def.monotonicity = Monotonicity::decreasing;
  def.pieces = {{{0.0, 1.0}, quad::Singularity::left}};
  def.closed_form_tail = [p0, scale](double z) { return std::min(1.0, std::pow(scale / z, p0)); };
  def.closed_form_norm = [p0, scale](double p) {
    return p < p0 ? scale * std::pow(1.0 - p / p0, -1.0 / p) : kInf;
  };
  RealFunction f(std::move(def));
  verify_closed_forms(f);
  return f;
}

RealFunction zero(MeasureDomain domain) {
  RealFunction::Definition def;
  def.label = "zero";
  def.domain = domain;
  def.support = {0.0, 0.0};
  def.evaluate = [](double) { return 0.0; };
  def.monotonicity = Monotonicity::decreasing;
  def.closed_form_tail = [](double) { return 0.0; };
  def.closed_form_norm = [](double) { return 0.0; };
  return RealFunction(std::move(def));
}

RealFunction scale_translate(const RealFunction& f, double c, double a, double width) {
  if (!f.support().within({0.0, 1.0})) {
    throw Error(Errc::bad_parameter, "scale_translate needs f supported in (0,1)");
  }
  if (!(width > 0.0) || !(a >= 0.0) || !std::isfinite(width) || !std::isfinite(a) || !std::isfinite(c)) {
    throw Error(Errc::bad_parameter, "scale_translate needs width > 0, a >= 0 and finite c");
  }
  const MeasureDomain domain =
      a + width <= 1.0 ? MeasureDomain::unit_interval() : MeasureDomain::positive_halfline();
  if (c == 0.0) return zero(domain);

  const Interval& inner = f.support();
  RealFunction::Definition def;
  def.label = format_label("scale_translate", {c, a, width}) + "[" + f.label() + "]";
  def.domain = domain;
  def.support = {a + width * inner.lo, a + width * inner.hi};
  def.evaluate = [f, c, a, width](double x) { return c * f((x - a) / width); };
  def.monotonicity = f.monotonicity();
  for (const Piece& piece : f.pieces()) {
    def.pieces.push_back({{a + width * piece.span.lo, a + width * piece.span.hi}, piece.singularity});
  }
  def.affine_image = std::make_shared<const AffineImage>(AffineImage{f, c, a, width});
  const double abs_c = std::abs(c);
  if (f.has_closed_form_tail()) {
    def.closed_form_tail = [f, abs_c, width](double z) { return width * *f.closed_form_tail(z / abs_c); };
  }
  if (f.has_closed_form_norm()) {
    def.closed_form_norm = [f, abs_c, width](double p) {
      return abs_c * std::pow(width, 1.0 / p) * *f.closed_form_norm(p);
    };
  }
  return RealFunction(std::move(def));
}

RealFunction scaled(const RealFunction& f, double c) {
  if (!std::isfinite(c)) throw Error(Errc::bad_parameter, "scale factor must be finite");
  if (c == 0.0) return zero(f.domain());
  RealFunction::Definition def = f.definition();
  def.label = format_label("scaled", {c}) + "[" + f.label() + "]";
  def.evaluate = [f, c](double x) { return c * f(x); };
  if (def.affine_image) {
    AffineImage image = *def.affine_image;
    image.c *= c;
    def.affine_image = std::make_shared<const AffineImage>(std::move(image));
  }
  const double abs_c = std::abs(c);
  if (f.has_closed_form_tail()) {
    def.closed_form_tail = [f, abs_c](double z) { return *f.closed_form_tail(z / abs_c); };
  }
  if (f.has_closed_form_norm()) {
    def.closed_form_norm = [f, abs_c](double p) { return abs_c * *f.closed_form_norm(p); };
  }
  return RealFunction(std::move(def));
}

RealFunction disjoint_sum(std::span<const RealFunction> family) {
  if (family.empty()) return zero();
  const MeasureDomain domain = family.front().domain();
  std::vector<RealFunction> members(family.begin(), family.end());
  std::sort(members.begin(), members.end(),
            [](const RealFunction& l, const RealFunction& r) { return l.support().lo < r.support().lo; });
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (!(members[i].domain() == domain)) {
      throw Error(Errc::domain_mismatch, "disjoint_sum members must share a domain");
    }
    if (i > 0 && members[i].support().lo < members[i - 1].support().hi) {
      throw Error(Errc::bad_parameter, "disjoint_sum members have overlapping supports");
    }
  }
  std::vector<double> starts;
  starts.reserve(members.size());
  for (const auto& m : members) starts.push_back(m.support().lo);

  RealFunction::Definition def;
  def.label = "disjoint_sum[" + std::to_string(members.size()) + "]";
  def.domain = domain;
  def.support = {members.front().support().lo, members.back().support().hi};
  def.monotonicity = members.size() == 1 ? members.front().monotonicity() : Monotonicity::none;
  for (const auto& m : members) {
    def.pieces.insert(def.pieces.end(), m.pieces().begin(), m.pieces().end());
  }
  const bool tails = std::all_of(members.begin(), members.end(),
                                 [](const RealFunction& m) { return m.has_closed_form_tail(); });
  const bool norms = std::all_of(members.begin(), members.end(),
                                 [](const RealFunction& m) { return m.has_closed_form_norm(); });
  auto shared = std::make_shared<const std::vector<RealFunction>>(std::move(members));
  def.evaluate = [shared, starts = std::move(starts)](double x) {
    const auto it = std::upper_bound(starts.begin(), starts.end(), x);
    if (it == starts.begin()) return 0.0;
    return (*shared)[static_cast<std::size_t>(it - starts.begin()) - 1](x);
  };
  if (tails) {
    def.closed_form_tail = [shared](double z) {
      quad::CompensatedSum sum;
      for (const auto& m : *shared) sum += *m.closed_form_tail(z);
      return sum.value();
    };
  }
  if (norms) {
    def.closed_form_norm = [shared](double p) {
      quad::CompensatedSum sum;
      for (const auto& m : *shared) sum += std::pow(*m.closed_form_norm(p), p);
      return std::pow(sum.value(), 1.0 / p);
    };
  }
  return RealFunction(std::move(def));
}

double tail(const RealFunction& f, double z, double tol) {
  if (!(z > 0.0)) throw Error(Errc::bad_parameter, "tail needs z > 0");
  if (auto closed = f.closed_form_tail(z)) return *closed;
  const Interval& s = f.support();
  if (s.length() == 0.0) return 0.0;
  if (f.monotonicity() == Monotonicity::none) {
    throw Error(Errc::unsupported, "tail of non-monotone " + f.label() + " without a closed form");
  }
  if (!std::isfinite(s.length())) throw Error(Errc::unsupported, "tail over an unbounded support");
  const bool decreasing = f.monotonicity() == Monotonicity::decreasing;
  // Distance from the large end of |f| to the level crossing.
  auto above = [&](double d) {
    const double x = decreasing ? s.lo + d : s.hi - d;
    return std::abs(f(x)) > z;
  };
  double lo = 0.0;
  double hi = s.length();
  if (above(std::nextafter(hi, 0.0))) return s.length();
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    (above(mid) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

Table::Table(std::vector<double> knots, std::vector<double> values)
    : knots_(std::move(knots)), values_(std::move(values)) {
  if (knots_.size() != values_.size() || knots_.size() < 2) {
    throw Error(Errc::bad_parameter, "table needs matching knots and values, at least 2");
  }
  cumulative_.resize(knots_.size());
  quad::CompensatedSum sum;
  sum += knots_[0] * values_[0];
  cumulative_[0] = sum.value();
  for (std::size_t i = 1; i < knots_.size(); ++i) {
    if (!(knots_[i] > knots_[i - 1])) throw Error(Errc::bad_parameter, "table knots must ascend");
    sum += 0.5 * (values_[i] + values_[i - 1]) * (knots_[i] - knots_[i - 1]);
    cumulative_[i] = sum.value();
  }
}

double Table::operator()(double t) const {
  if (t >= knots_.back()) return 0.0;
  if (t <= knots_.front()) return values_.front();
  const auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
  const std::size_t i = static_cast<std::size_t>(it - knots_.begin());
  const double w = (t - knots_[i - 1]) / (knots_[i] - knots_[i - 1]);
  return values_[i - 1] + w * (values_[i] - values_[i - 1]);
}

double Table::integral_to(double s) const {
  if (s <= 0.0) return 0.0;
  if (s >= knots_.back()) return cumulative_.back();
  if (s <= knots_.front()) return s * values_.front();
  const auto it = std::upper_bound(knots_.begin(), knots_.end(), s);
  const std::size_t i = static_cast<std::size_t>(it - knots_.begin());
  const double at_s = (*this)(s);
  return cumulative_[i - 1] + 0.5 * (values_[i - 1] + at_s) * (s - knots_[i - 1]);
}

Table rearrangement_table(const RealFunction& f, std::size_t grid) {
  if (grid < 4) throw Error(Errc::bad_parameter, "rearrangement grid needs at least 4 knots");
  const double measure = f.support().length();
  if (!std::isfinite(measure)) throw Error(Errc::unsupported, "rearrangement of an unbounded support");
  if (measure == 0.0) return Table({0.5, 1.0}, {0.0, 0.0});

  // Log-spaced from measure*1e-30 up to measure/2, then mirrored toward the
  // right end down to a gap of measure*1e-12.
  const std::size_t left = grid / 2;
  const std::size_t right = grid - left;
  std::vector<double> knots;
  knots.reserve(grid);
  const double l0 = -30.0;
  const double l1 = std::log10(0.5);
  for (std::size_t i = 0; i < left; ++i) {
    knots.push_back(measure * std::pow(10.0, l0 + (l1 - l0) * static_cast<double>(i) /
                                                     static_cast<double>(left - 1)));
  }
  const double r1 = -12.0;
  for (std::size_t i = 1; i < right; ++i) {
    knots.push_back(measure * (1.0 - std::pow(10.0, l1 + (r1 - l1) * static_cast<double>(i) /
                                                            static_cast<double>(right - 1))));
  }
  knots.push_back(measure);

  std::function<double(double)> star;
  const Interval s = f.support();
  if (f.monotonicity() == Monotonicity::decreasing) {
    star = [&f, s](double t) {
      double x = s.lo + t;
      if (!(x > s.lo)) x = std::nextafter(s.lo, s.hi);
      return std::abs(f(x));
    };
  } else if (f.monotonicity() == Monotonicity::increasing) {
    star = [&f, s](double t) {
      double x = s.hi - t;
      if (!(x < s.hi)) x = std::nextafter(s.hi, s.lo);
      return std::abs(f(x));
    };
  } else if (f.has_closed_form_tail()) {
    star = [&f](double t) {
      double hi = 1.0;
      while (*f.closed_form_tail(hi) > t) {
        hi *= 2.0;
        if (hi > 1e300) return kInf;
      }
      double lo = 0.0;
      for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (!(mid > lo && mid < hi)) break;
        (*f.closed_form_tail(mid) > t ? lo : hi) = mid;
      }
      return hi;
    };
  } else {
    throw Error(Errc::unsupported, "rearrangement of non-monotone " + f.label() + " without a tail");
  }

  std::vector<double> values(knots.size());
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) values[i] = star(knots[i]);
  values.back() = values[values.size() - 2];
  for (std::size_t i = 1; i < values.size(); ++i) values[i] = std::min(values[i], values[i - 1]);
  return Table(std::move(knots), std::move(values));
}

RealFunction rearrangement(const RealFunction& f, std::size_t grid) {
  auto table = std::make_shared<const Table>(rearrangement_table(f, grid));
  const auto knots = table->knots();
  RealFunction::Definition def;
  def.label = "rearrangement[" + f.label() + "]";
  def.domain = f.domain();
  def.support = {0.0, knots.back()};
  def.evaluate = [table](double t) { return (*table)(t); };
  def.monotonicity = Monotonicity::decreasing;
  def.pieces.push_back({{0.0, knots.front()}});
  for (std::size_t i = 1; i < knots.size(); ++i) def.pieces.push_back({{knots[i - 1], knots[i]}});
  return RealFunction(std::move(def));
}

}  // namespace orlicz::space

namespace orlicz::space {

RealFunction sum(const RealFunction& f, const RealFunction& g) {
  if (!(f.domain() == g.domain())) throw Error(Errc::domain_mismatch, "sum needs a common domain");
  if (f.support().length() == 0.0) return g;
  if (g.support().length() == 0.0) return f;

  std::vector<double> cuts;
  for (const RealFunction* h : {&f, &g}) {
    for (const Piece& piece : h->pieces()) {
      cuts.push_back(piece.span.lo);
      cuts.push_back(piece.span.hi);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  auto singular_end = [&](double x, quad::Singularity side) {
    for (const RealFunction* h : {&f, &g}) {
      for (const Piece& piece : h->pieces()) {
        if (piece.singularity != side) continue;
        if ((side == quad::Singularity::left && piece.span.lo == x) ||
            (side == quad::Singularity::right && piece.span.hi == x)) {
          return true;
        }
      }
    }
    return false;
  };

  RealFunction::Definition def;
  def.label = "sum[" + f.label() + ", " + g.label() + "]";
  def.domain = f.domain();
  def.support = {std::min(f.support().lo, g.support().lo), std::max(f.support().hi, g.support().hi)};
  def.evaluate = [f, g](double x) { return f(x) + g(x); };
  for (std::size_t i = 1; i < cuts.size(); ++i) {
    const Interval span{cuts[i - 1], cuts[i]};
    const double mid = 0.5 * (span.lo + span.hi);
    const bool covered = std::any_of(f.pieces().begin(), f.pieces().end(),
                                     [&](const Piece& p) { return p.span.contains(mid); }) ||
                         std::any_of(g.pieces().begin(), g.pieces().end(),
                                     [&](const Piece& p) { return p.span.contains(mid); });
    if (!covered) continue;
    quad::Singularity side = quad::Singularity::none;
    if (singular_end(span.lo, quad::Singularity::left)) {
      side = quad::Singularity::left;
    } else if (singular_end(span.hi, quad::Singularity::right)) {
      side = quad::Singularity::right;
    }
    def.pieces.push_back({span, side});
  }

  const Interval& s = f.support();
  bool nonnegative = true;
  for (int i = 1; i <= 64 && nonnegative; ++i) {
    const double x = s.lo + s.length() * i / 65.0;
    nonnegative = f(x) >= 0.0 && g(x) >= 0.0;
  }
  if (f.monotonicity() == g.monotonicity() && s.lo == g.support().lo && s.hi == g.support().hi &&
      std::isfinite(s.length()) && nonnegative) {
    def.monotonicity = f.monotonicity();
  }
  return RealFunction(std::move(def));
}

}  // namespace orlicz::space
