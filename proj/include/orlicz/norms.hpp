#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>

#include "orlicz/space.hpp"
#include "orlicz/young.hpp"

namespace orlicz::norms {

/// Value of a norm computation. An infinite norm is an ordinary outcome:
/// `infinite` is set, `value` is +inf and `witness` says why.
struct NormResult {
  double value = 0.0;
  bool infinite = false;
  /// Maximizer or minimizer in the searched domain: p for grand Lebesgue,
  /// s for Lorentz, z for the tail quasinorm, k for Luxemburg.
  std::optional<double> attained_at;
  double error_estimate = 0.0;
  /// Grid-trend verdict for sup-type norms; always true for Lp and Luxemburg.
  bool bounded = true;
  std::string witness;
};

enum class Method { automatic, quadrature };

/// (integral of |f|^p)^(1/p). `automatic` uses the closed form when f
/// carries one.
NormResult lp_norm(const space::RealFunction& f, double p, double rel_tol = 1e-12,
                   Method method = Method::automatic);

/// inf{ k > 0 : integral of Phi(|f| / k) <= 1 } by geometric bisection on k.
/// A modular that fails to converge counts as exceeding 1. If it exceeds 1
/// for every k up to 2^64 the result is infinite.
NormResult luxemburg_norm(const space::RealFunction& f, const young::YoungFunction& phi,
                          double tol = 1e-12);

/// p -> |f|_p, possibly +inf.
using LpOracle = std::function<double(double)>;

/// sup over `p_grid` of |f|_p / psi(p). The grid needs at least 8 ascending
/// points in the domain of psi and, for finite b, a last point within 1e-3
/// of b. `bounded` is false when the ratio rises strictly over the last half
/// of the grid without its increments shrinking below half.
NormResult gls_norm(const LpOracle& lp, const young::PsiGenerator& psi, std::span<const double> p_grid);
NormResult gls_norm(const space::RealFunction& f, const young::PsiGenerator& psi,
                    std::span<const double> p_grid);

/// sup over `s_grid` of (1/v(s)) * integral_0^s f*(u) du. Unit interval only.
NormResult lorentz_norm(const space::RealFunction& f, const std::function<double(double)>& v,
                        std::span<const double> s_grid);

/// Direct sup over unions of cells: (0,1) is cut into `cells` equal cells,
/// and for each k the best union of k cells is the k cells with the largest
/// integrals of |f|. Returns the sup over k of that mass / v(k / cells), with
/// attained_at = k / cells.
NormResult lorentz_brute_force(const space::RealFunction& f, const std::function<double(double)>& v,
                               std::size_t cells);

/// sup over `z_grid` of tail(f, z) / h(z), with the same trend flag as
/// gls_norm.
NormResult tail_quasinorm(const space::RealFunction& f, const std::function<double(double)>& h,
                          std::span<const double> z_grid);

}  // namespace orlicz::norms
