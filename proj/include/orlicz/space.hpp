#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "orlicz/quad.hpp"

namespace orlicz::space {

enum class DomainKind { unit_interval, positive_halfline };

/// Lebesgue measure on (0,1) or on R+.
struct MeasureDomain {
  DomainKind kind = DomainKind::unit_interval;

  static MeasureDomain unit_interval() { return {DomainKind::unit_interval}; }
  static MeasureDomain positive_halfline() { return {DomainKind::positive_halfline}; }

  double total_mass() const noexcept {
    return kind == DomainKind::unit_interval ? 1.0 : std::numeric_limits<double>::infinity();
  }
  double upper() const noexcept { return total_mass(); }
  friend bool operator==(MeasureDomain, MeasureDomain) = default;
};

/// Open interval (lo, hi).
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const noexcept { return hi - lo; }
  bool contains(double x) const noexcept { return x > lo && x < hi; }
  bool within(const Interval& outer) const noexcept { return lo >= outer.lo && hi <= outer.hi; }
};

/// Monotonicity of |f| on its support.
enum class Monotonicity { none, decreasing, increasing };

/// A stretch of the support on which the integrand is smooth apart from a
/// possible singularity at one end.
struct Piece {
  Interval span;
  quad::Singularity singularity = quad::Singularity::none;
};

struct AffineImage;

/// Immutable real function on a measure domain: zero outside `support`,
/// optional closed forms for the tail measure and the Lp norm.
class RealFunction {
 public:
  struct Definition {
    std::string label;
    MeasureDomain domain;
    Interval support;
    std::function<double(double)> evaluate;
    Monotonicity monotonicity = Monotonicity::none;
    /// Quadrature partition of the support; defaults to the support itself.
    std::vector<Piece> pieces;
    /// z -> measure{ |f| > z }
    std::function<double(double)> closed_form_tail;
    /// p -> |f|_p (may be +inf)
    std::function<double(double)> closed_form_norm;
    /// Set when f is c * base((x - a) / width); quadrature then runs in the
    /// coordinates of `base`, which keeps full resolution on narrow supports.
    std::shared_ptr<const AffineImage> affine_image;
  };

  explicit RealFunction(Definition def);

  double operator()(double x) const;

  const std::string& label() const noexcept { return def_->label; }
  MeasureDomain domain() const noexcept { return def_->domain; }
  const Interval& support() const noexcept { return def_->support; }
  Monotonicity monotonicity() const noexcept { return def_->monotonicity; }
  std::span<const Piece> pieces() const noexcept { return def_->pieces; }

  bool has_closed_form_tail() const noexcept { return static_cast<bool>(def_->closed_form_tail); }
  bool has_closed_form_norm() const noexcept { return static_cast<bool>(def_->closed_form_norm); }
  std::optional<double> closed_form_tail(double z) const;
  std::optional<double> closed_form_norm(double p) const;

  const Definition& definition() const noexcept { return *def_; }

 private:
  std::shared_ptr<const Definition> def_;
};

struct AffineImage {
  RealFunction base;
  double c = 1.0;
  double a = 0.0;
  double width = 1.0;
};

/// Integral of `outer(|f(x)|)` over the support of f, piece by piece, with
/// the declared endpoint substitutions. `outer` must vanish at 0 when the
/// domain is unbounded.
quad::QuadResult integrate_composed(const RealFunction& f, const std::function<double(double)>& outer,
                                    const quad::QuadOptions& options = {});

/// Integral of f over `where`; throws DomainMismatch when `where` leaves the
/// domain of f.
quad::QuadResult integrate(const RealFunction& f, Interval where, const quad::QuadOptions& options = {});

/// Cross-checks closed-form norms against quadrature at p in {1,2,4,8}
/// (where finite) to 1e-8 relative; throws ClosedFormMismatch otherwise.
const RealFunction& verify_closed_forms(const RealFunction& f);

/// sqrt(-log x) on (0,1), with f(0) = 0.
RealFunction f_half();

/// Indicator of `a` on `domain`.
RealFunction indicator(Interval a, MeasureDomain domain = MeasureDomain::unit_interval());

/// scale * x^(-1/p0) on (0,1).
RealFunction power_tail(double p0, double scale = 1.0);

/// x -> c * f((x - a) / width) on (a, a + width), for f supported on (0,1).
RealFunction scale_translate(const RealFunction& f, double c, double a, double width);

/// x -> c * f(x).
RealFunction scaled(const RealFunction& f, double c);

/// Zero function on `domain`.
RealFunction zero(MeasureDomain domain = MeasureDomain::unit_interval());

/// Sum of functions with pairwise disjoint supports on a common domain.
RealFunction disjoint_sum(std::span<const RealFunction> family);

/// Pointwise f + g on a common domain. The quadrature partition is the
/// common refinement of both partitions. The sum inherits a shared
/// monotonicity when both summands have the same support and are
/// nonnegative at 64 sampled points.
RealFunction sum(const RealFunction& f, const RealFunction& g);

/// measure{ |f| > z }. Closed form when present; for monotone f the
/// superlevel set is an end segment of the support found by bisection to
/// `tol`. Throws Unsupported otherwise.
double tail(const RealFunction& f, double z, double tol = 1e-14);

/// Tabulated non-increasing function on (0, measure(support)) built from
/// knots and values; linear between knots, constant left of the first knot.
class Table {
 public:
  Table(std::vector<double> knots, std::vector<double> values);

  double operator()(double t) const;
  /// Exact integral of the piecewise-linear interpolant over (0, s).
  double integral_to(double s) const;
  std::span<const double> knots() const noexcept { return knots_; }
  std::span<const double> values() const noexcept { return values_; }

 private:
  std::vector<double> knots_;
  std::vector<double> values_;
  std::vector<double> cumulative_;
};

/// Decreasing rearrangement f*(t) = inf{ z : tail(f, z) <= t } tabulated on
/// `grid` knots over (0, measure(support)); dense near both ends.
Table rearrangement_table(const RealFunction& f, std::size_t grid = 1u << 14);

/// The tabulated rearrangement as a decreasing RealFunction on the same
/// domain, supported on (0, measure(support)).
RealFunction rearrangement(const RealFunction& f, std::size_t grid = 1u << 14);

}  // namespace orlicz::space
