#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "orlicz/check.hpp"
#include "orlicz/counterexample.hpp"

namespace orlicz::mc {

/// splitmix64 finalizer; the mixing step of the sign stream and the seed
/// derivation.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Random-access sequence of independent fair signs, a pure function of
/// (seed, n).
class RademacherSigns {
 public:
  explicit RademacherSigns(std::uint64_t seed) noexcept : seed_(seed) {}

  int sign(std::uint64_t n) const noexcept;
  /// Block index carried as a double (see counterexample::Located).
  int sign(double n) const noexcept;
  std::uint64_t seed() const noexcept { return seed_; }

 private:
  std::uint64_t seed_;
};

/// N realizations of g(x) = sup_t |theta(t, x)| and of the symmetrized block
/// eps(n(x)) g_{n(x)}(x), each with its own sign sequence.
struct SampleBatch {
  std::uint64_t seed = 0;
  std::size_t count = 0;
  std::vector<double> values;
  std::vector<double> signed_values;
};

/// Samples per sub-batch; each sub-batch has its own derived seed and the
/// result does not depend on how sub-batches are scheduled.
inline constexpr std::size_t kSubBatch = 65536;

/// x uniform on (0,1), drawn as y = 1 - x on a 2^-53 grid so that blocks near
/// x = 1 stay resolvable. Where a block is narrower than 2^23 grid steps the
/// position inside it is drawn from a second independent uniform, which has
/// the same law. Probability case only.
SampleBatch sample_sup(const counterexample::DisjointSystem& sys, std::uint64_t seed, std::size_t count);

struct TailFraction {
  double fraction = 0.0;
  double standard_error = 0.0;
};

/// Fraction of values above z with its binomial standard error. Throws
/// EmptyBatch on no values.
TailFraction empirical_tail(std::span<const double> values, double z);
TailFraction empirical_tail(const SampleBatch& batch, double z);

/// Batch fraction above z against sup_tail(z), within 3 binomial standard
/// errors computed from the oracle.
CheckResult verify_mc_tail(const counterexample::DisjointSystem& sys, const SampleBatch& batch, double z);

/// Batch mean of g against |g|_1, within 3 standard errors.
CheckResult verify_mc_mean(const counterexample::DisjointSystem& sys, const SampleBatch& batch);

/// Block n sampled conditionally on its support: (a) mean of eps g_n within
/// 3 standard errors of 0; (b) |eps g_n| = g_n at every point; (c) width *
/// mean |eps g_n|^p within 3 standard errors of |g_n|_p^p for p in {1, 2}.
/// `computed` is the largest standardized deviation of (a) and (c).
CheckResult symmetrization_check(const counterexample::DisjointSystem& sys, std::uint64_t n,
                                 std::uint64_t seed, std::size_t count);

/// Mean of |value|^p over the first k values, for each k in `checkpoints`.
std::vector<double> running_moment(std::span<const double> values, double p,
                                   std::span<const std::size_t> checkpoints);

/// Heavy-tail witness: the running p0-th moment rises by at least 1% between
/// consecutive checkpoints, while the running first moment moves by at most
/// 1% between the last two.
CheckResult verify_heavy_moment(const SampleBatch& batch, double p0, std::span<const std::size_t> checkpoints);

}  // namespace orlicz::mc
