#include "orlicz/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "orlicz/error.hpp"

namespace orlicz::norms {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLuxemburgCap = 18446744073709551616.0;  // 2^64

NormResult infinite_result(std::string witness) {
  NormResult out;
  out.value = kInf;
  out.infinite = true;
  out.bounded = false;
  out.witness = std::move(witness);
  return out;
}

void require_ascending(std::span<const double> grid, std::size_t min_size, const char* what) {
  if (grid.size() < min_size) {
    throw Error(Errc::too_few_points, std::string(what) + " needs at least " + std::to_string(min_size) +
                                          " points");
  }
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw Error(Errc::bad_parameter, std::string(what) + " must ascend");
  }
}

// Unbounded when the ratio rises strictly over the last half and its final
// increment is still at least half of the first one there.
bool trend_bounded(std::span<const double> ratios) {
  if (ratios.size() < 3) return true;
  const std::size_t start = (ratios.size() - 1) / 2;
  for (std::size_t i = start + 1; i < ratios.size(); ++i) {
    if (!(ratios[i] > ratios[i - 1])) return true;
  }
  const double first = ratios[start + 1] - ratios[start];
  const double last = ratios.back() - ratios[ratios.size() - 2];
  return last < 0.5 * first;
}

NormResult grid_sup(std::span<const double> grid, std::span<const double> ratios) {
  NormResult out;
  const auto best = std::max_element(ratios.begin(), ratios.end());
  out.value = *best;
  out.attained_at = grid[static_cast<std::size_t>(best - ratios.begin())];
  out.bounded = trend_bounded(ratios);
  std::ostringstream w;
  w.precision(10);
  w << "max ratio " << out.value << " at " << *out.attained_at << " over " << grid.size() << " points";
  if (!out.bounded) w << "; ratio still rising at the end of the grid";
  out.witness = w.str();
  return out;
}

}  // namespace

NormResult lp_norm(const space::RealFunction& f, double p, double rel_tol, Method method) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw Error(Errc::bad_parameter, "lp_norm needs finite p >= 1");
  if (method == Method::automatic && f.has_closed_form_norm()) {
    const double closed = *f.closed_form_norm(p);
    if (std::isinf(closed)) return infinite_result("closed-form moment is infinite at p");
    NormResult out;
    out.value = closed;
    out.witness = "closed form";
    return out;
  }
  quad::QuadOptions opt;
  opt.abs_tol = 0.0;
  opt.rel_tol = rel_tol;
  opt.max_evaluations = 4'000'000;
  const auto r = space::integrate_composed(f, [p](double u) { return std::pow(u, p); }, opt);
  NormResult out;
  out.value = std::pow(r.value, 1.0 / p);
  out.error_estimate = r.value > 0.0 ? out.value * r.abs_error_estimate / (p * r.value) : 0.0;
  out.witness = "quadrature";
  return out;
}

NormResult luxemburg_norm(const space::RealFunction& f, const young::YoungFunction& phi, double tol) {
  if (f.support().length() == 0.0) {
    NormResult out;
    out.witness = "zero function";
    return out;
  }
  quad::QuadOptions opt;
  opt.abs_tol = 0.0;
  opt.rel_tol = tol;
  opt.max_evaluations = 4'000'000;
  auto exceeds_one = [&](double k) {
    try {
      return space::integrate_composed(f, [&phi, k](double u) { return phi(u / k); }, opt).value > 1.0;
    } catch (const Error& e) {
      if (e.code() == Errc::non_convergence) return true;
      throw;
    }
  };

  double start = 1.0;
  if (const auto hint = phi.growth_hint()) {
    try {
      const double proxy = lp_norm(f, *hint).value;
      if (proxy > 0.0 && std::isfinite(proxy)) start = proxy;
    } catch (const Error&) {
    }
  }

  double lo = start;
  double hi = start;
  if (exceeds_one(start)) {
    do {
      lo = hi;
      hi *= 2.0;
      if (hi > kLuxemburgCap) {
        auto out = infinite_result("modular exceeds 1 for every tested k up to 2^64");
        out.attained_at = lo;
        return out;
      }
    } while (exceeds_one(hi));
  } else {
    do {
      hi = lo;
      lo *= 0.5;
      if (lo < 1e-300) throw Error(Errc::non_convergence, "modular stays below 1 as k -> 0");
    } while (!exceeds_one(lo));
  }

  for (int iter = 0; iter < 200 && hi / lo - 1.0 > 1e-15; ++iter) {
    const double mid = std::sqrt(lo * hi);
    if (!(mid > lo && mid < hi)) break;
    (exceeds_one(mid) ? lo : hi) = mid;
  }
  NormResult out;
  out.value = hi;
  out.attained_at = hi;
  out.error_estimate = hi - lo;
  out.witness = "bisection on k";
  return out;
}

NormResult gls_norm(const LpOracle& lp, const young::PsiGenerator& psi, std::span<const double> p_grid) {
  require_ascending(p_grid, 8, "GLS p grid");
  for (const double p : p_grid) {
    if (!psi.in_domain(p)) {
      throw Error(Errc::domain_mismatch, "p grid leaves the domain of " + psi.label());
    }
  }
  if (std::isfinite(psi.upper_limit()) && psi.upper_limit() - p_grid.back() > 1e-3) {
    throw Error(Errc::bad_parameter, "p grid must approach b within 1e-3");
  }
  std::vector<double> ratios;
  ratios.reserve(p_grid.size());
  for (const double p : p_grid) {
    const double norm = lp(p);
    if (std::isinf(norm)) {
      auto out = infinite_result("|f|_p is infinite on the grid");
      out.attained_at = p;
      return out;
    }
    ratios.push_back(norm / psi(p));
  }
  return grid_sup(p_grid, ratios);
}

NormResult gls_norm(const space::RealFunction& f, const young::PsiGenerator& psi,
                    std::span<const double> p_grid) {
  const auto lp = [&f](double p) { return lp_norm(f, p).value; };
  return gls_norm(lp, psi, p_grid);
}

NormResult lorentz_norm(const space::RealFunction& f, const std::function<double(double)>& v,
                        std::span<const double> s_grid) {
  if (f.domain().kind != space::DomainKind::unit_interval) {
    throw Error(Errc::unsupported, "Lorentz norm is defined on the unit interval");
  }
  require_ascending(s_grid, 1, "Lorentz s grid");
  if (!(s_grid.front() > 0.0) || s_grid.back() > 1.0) {
    throw Error(Errc::bad_parameter, "Lorentz s grid must lie in (0,1]");
  }
  if (f.support().length() == 0.0) {
    NormResult out;
    out.attained_at = s_grid.front();
    out.witness = "zero function";
    return out;
  }
  const space::Table table = space::rearrangement_table(f);
  std::vector<double> ratios;
  ratios.reserve(s_grid.size());
  for (const double s : s_grid) ratios.push_back(table.integral_to(s) / v(s));
  auto out = grid_sup(s_grid, ratios);
  out.bounded = true;
  return out;
}

NormResult lorentz_brute_force(const space::RealFunction& f, const std::function<double(double)>& v,
                               std::size_t cells) {
  if (f.domain().kind != space::DomainKind::unit_interval) {
    throw Error(Errc::unsupported, "Lorentz norm is defined on the unit interval");
  }
  if (cells < 1) throw Error(Errc::bad_parameter, "brute-force Lorentz oracle needs at least one cell");
  const space::RealFunction magnitude = [&f] {
    space::RealFunction::Definition def = f.definition();
    def.evaluate = [f](double x) { return std::abs(f(x)); };
    def.affine_image = nullptr;
    return space::RealFunction(std::move(def));
  }();
  quad::QuadOptions opt;
  opt.abs_tol = 1e-14;
  opt.rel_tol = 1e-12;
  std::vector<double> mass(cells);
  const double h = 1.0 / static_cast<double>(cells);
  for (std::size_t i = 0; i < cells; ++i) {
    const double lo = h * static_cast<double>(i);
    const double hi = i + 1 == cells ? 1.0 : h * static_cast<double>(i + 1);
    mass[i] = space::integrate(magnitude, {lo, hi}, opt).value;
  }
  std::sort(mass.begin(), mass.end(), std::greater<>());
  std::vector<double> grid(cells);
  std::vector<double> ratios(cells);
  quad::CompensatedSum running;
  for (std::size_t k = 0; k < cells; ++k) {
    running += mass[k];
    grid[k] = h * static_cast<double>(k + 1);
    ratios[k] = running.value() / v(grid[k]);
  }
  auto out = grid_sup(grid, ratios);
  out.bounded = true;
  return out;
}

NormResult tail_quasinorm(const space::RealFunction& f, const std::function<double(double)>& h,
                          std::span<const double> z_grid) {
  require_ascending(z_grid, 1, "tail z grid");
  if (!(z_grid.front() > 0.0)) throw Error(Errc::bad_parameter, "tail z grid must be positive");
  std::vector<double> ratios;
  ratios.reserve(z_grid.size());
  for (const double z : z_grid) ratios.push_back(space::tail(f, z) / h(z));
  return grid_sup(z_grid, ratios);
}

}  // namespace orlicz::norms
