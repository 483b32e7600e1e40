#pragma once

#include <array>
#include <string_view>

namespace orlicz {

/// The relations a check can be anchored to. Every report entry carries
/// one of these strings.
enum class Anchor {
  distance,
  block_norm,
  block_disjointness,
  partial_sum_divergence,
  sup_norm_blowup,
  gls_exactness,
  sup_tail_power_law,
  modular_divergence,
  borel_cantelli,
  continuity,
  domination,
  delta2,
  luxemburg_indicator,
  lorentz_reduction,
  gamma_moment,
  exact_tail,
  mc_tail,
  symmetrization,
  heavy_moment,
};

inline constexpr std::array<std::string_view, 19> kAnchorTable = {
    "d(i,j) = |1/i - 1/j|, d(i,inf) = 1/i",
    "|g_n|_p = c(n) Gamma(p/2+1)^(1/p) width(n)^(1/p)",
    "sup_n g_n(x) = sum_n g_n(x) = g(x)",
    "sum_n c(n)^p |f_half|_p^p = inf",
    "|g|_p ~ C (p0 - p)^(-1/p0) as p -> p0",
    "sup_p (p0 - p)^(1/p0) |g|_p < inf, sharp",
    "G_g(z) ~ C z^(-p0)",
    "int_0^(1/2) x^(-1) |log x|^(-1/2) dx = inf",
    "sum_n P(|g_n| > eps) < inf",
    "|g_n - g_inf| -> 0",
    "Psi(lambda u) / Phi(u) -> 0 for every lambda > 0",
    "sup_u Y(2u) / Y(u) < inf",
    "|I_A|_Phi = 1 / Phi^(-1)(1 / P(A))",
    "sup_A (1/v(P(A))) int_A |f| = sup_s (1/v(s)) int_0^s f*",
    "|f_half|_p = Gamma(p/2+1)^(1/p)",
    "P(f_half > u) = exp(-u^2)",
    "P(g > z) = G_g(z)",
    "|eps_n g_n| = |g_n|, E eps_n g_n = 0",
    "E g^p0 = inf, E g < inf",
};

constexpr std::string_view anchor_text(Anchor a) { return kAnchorTable[static_cast<std::size_t>(a)]; }

}  // namespace orlicz
