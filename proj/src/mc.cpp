#include "orlicz/mc.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <random>
#include <sstream>
#include <thread>

#include "orlicz/anchors.hpp"
#include "orlicz/error.hpp"
#include "orlicz/quad.hpp"

namespace orlicz::mc {

namespace {

constexpr double kGrid = 1.0 / 9007199254740992.0;  // 2^-53

// Uniform on (0, 1] with 53 random bits.
double unit_open_closed(std::mt19937_64& rng) { return static_cast<double>((rng() >> 11) + 1) * kGrid; }

std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) { return mix64(seed ^ mix64(stream + 1)); }

double f_half_at(double local) { return local > 0.0 ? std::sqrt(-std::log(local)) : 0.0; }

struct Moments {
  quad::CompensatedSum sum;
  quad::CompensatedSum sum_sq;
  std::size_t n = 0;

  void add(double x) {
    sum += x;
    sum_sq += x * x;
    ++n;
  }
  double mean() const { return sum.value() / static_cast<double>(n); }
  double standard_error() const {
    const double m = mean();
    const double var = std::max(0.0, sum_sq.value() / static_cast<double>(n) - m * m);
    return std::sqrt(var * static_cast<double>(n) / static_cast<double>(n - 1) / static_cast<double>(n));
  }
};

std::string fmt(double x) {
  std::ostringstream out;
  out.precision(8);
  out << x;
  return out.str();
}

}  // namespace

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

int RademacherSigns::sign(std::uint64_t n) const noexcept {
  return (mix64(seed_ ^ mix64(n)) >> 63) != 0 ? 1 : -1;
}

int RademacherSigns::sign(double n) const noexcept {
  constexpr double kTwo64 = 18446744073709551616.0;
  const std::uint64_t key = n < kTwo64 ? static_cast<std::uint64_t>(n) : std::bit_cast<std::uint64_t>(n);
  return sign(key);
}

SampleBatch sample_sup(const counterexample::DisjointSystem& sys, std::uint64_t seed, std::size_t count) {
  if (!sys.is_probability()) throw Error(Errc::unsupported, "sample_sup needs the probability case");
  if (count == 0) throw Error(Errc::bad_parameter, "sample_sup needs at least one sample");
  SampleBatch batch;
  batch.seed = seed;
  batch.count = count;
  batch.values.resize(count);
  batch.signed_values.resize(count);

  const std::size_t batches = (count + kSubBatch - 1) / kSubBatch;
  auto run = [&](std::size_t b) {
    std::mt19937_64 rng(derive(seed, b));
    const std::size_t begin = b * kSubBatch;
    const std::size_t end = std::min(count, begin + kSubBatch);
    for (std::size_t i = begin; i < end; ++i) {
      const double y = unit_open_closed(rng);
      const double spare = unit_open_closed(rng);
      double value = 0.0;
      double n = 0.0;
      if (y < 0.5) {
        const auto where = sys.locate_upper(y);
        n = where.n;
        const bool resolved = where.resolved && sys.width(n) >= 8388608.0 * kGrid;  // 2^23 steps
        value = sys.c(n) * f_half_at(resolved ? where.local : spare);
      }
      batch.values[i] = value;
      batch.signed_values[i] = value == 0.0 ? 0.0 : RademacherSigns(derive(seed, i)).sign(n) * value;
    }
  };

  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(batches, std::thread::hardware_concurrency()));
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t b = w; b < batches; b += workers) run(b);
      });
    }
  }
  return batch;
}

TailFraction empirical_tail(std::span<const double> values, double z) {
  if (values.empty()) throw Error(Errc::empty_batch, "empirical_tail on an empty batch");
  if (!(z > 0.0)) throw Error(Errc::bad_parameter, "empirical_tail needs z > 0");
  const auto above = std::count_if(values.begin(), values.end(), [z](double v) { return v > z; });
  const double n = static_cast<double>(values.size());
  TailFraction out;
  out.fraction = static_cast<double>(above) / n;
  out.standard_error = std::sqrt(out.fraction * (1.0 - out.fraction) / n);
  return out;
}

TailFraction empirical_tail(const SampleBatch& batch, double z) { return empirical_tail(batch.values, z); }

CheckResult verify_mc_tail(const counterexample::DisjointSystem& sys, const SampleBatch& batch, double z) {
  CheckResult out;
  out.check_id = "mc_tail:z=" + fmt(z);
  out.anchor = std::string(anchor_text(Anchor::mc_tail));
  const auto empirical = empirical_tail(batch, z);
  const double oracle = counterexample::sup_tail(sys, z);
  out.computed = empirical.fraction;
  out.oracle = oracle;
  out.tolerance = 3.0 * std::sqrt(oracle * (1.0 - oracle) / static_cast<double>(batch.values.size()));
  out.verdict = verdict_of(std::abs(out.computed - out.oracle) <= out.tolerance);
  out.detail = std::to_string(batch.values.size()) + " samples, seed " + std::to_string(batch.seed);
  return out;
}

CheckResult verify_mc_mean(const counterexample::DisjointSystem& sys, const SampleBatch& batch) {
  if (batch.values.size() < 2) throw Error(Errc::empty_batch, "mean check needs at least 2 samples");
  CheckResult out;
  out.check_id = "mc_mean";
  out.anchor = std::string(anchor_text(Anchor::heavy_moment));
  Moments m;
  for (const double v : batch.values) m.add(v);
  out.computed = m.mean();
  out.oracle = counterexample::sup_lp(sys, 1.0).value;
  out.tolerance = 3.0 * m.standard_error();
  out.verdict = verdict_of(std::abs(out.computed - out.oracle) <= out.tolerance);
  out.detail = "standard error " + fmt(m.standard_error());
  return out;
}

CheckResult symmetrization_check(const counterexample::DisjointSystem& sys, std::uint64_t n,
                                 std::uint64_t seed, std::size_t count) {
  if (count < 2) throw Error(Errc::bad_parameter, "symmetrization_check needs at least 2 samples");
  const auto block = sys.block(n);
  const auto span = sys.support(n);
  const double width = sys.width(static_cast<double>(n));
  std::mt19937_64 rng(derive(seed, n));

  Moments centered;
  Moments first;
  Moments second;
  std::size_t mismatches = 0;
  for (std::size_t i = 0; i < count; ++i) {
    const double x = span.lo + width * unit_open_closed(rng);
    const double g = block(x);
    const double theta = RademacherSigns(derive(seed, i)).sign(n) * g;
    mismatches += std::abs(theta) != std::abs(g);
    centered.add(theta);
    first.add(std::abs(theta));
    second.add(theta * theta);
  }

  CheckResult out;
  out.check_id = "symmetrization:n=" + std::to_string(n);
  out.anchor = std::string(anchor_text(Anchor::symmetrization));
  const double z_mean = std::abs(centered.mean()) / centered.standard_error();
  double worst = z_mean;
  std::ostringstream detail;
  detail.precision(6);
  detail << "(a) mean " << centered.mean() << " +- " << centered.standard_error();
  detail << "; (b) " << mismatches << " sign mismatches";
  const std::array<const Moments*, 2> moments{&first, &second};
  for (int p = 1; p <= 2; ++p) {
    const Moments& m = *moments[static_cast<std::size_t>(p - 1)];
    const double exact = std::pow(counterexample::block_lp_exact(sys, n, p), p);
    const double z = std::abs(width * m.mean() - exact) / (width * m.standard_error());
    worst = std::max(worst, z);
    detail << "; (c) p=" << p << " " << width * m.mean() << " vs " << exact;
  }
  out.computed = worst;
  out.oracle = 0.0;
  out.tolerance = 3.0;
  out.verdict = verdict_of(worst <= 3.0 && mismatches == 0);
  out.detail = detail.str();
  return out;
}

std::vector<double> running_moment(std::span<const double> values, double p,
                                   std::span<const std::size_t> checkpoints) {
  if (values.empty()) throw Error(Errc::empty_batch, "running_moment on an empty batch");
  std::vector<double> out;
  quad::CompensatedSum sum;
  std::size_t k = 0;
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    if (checkpoints[i] == 0 || checkpoints[i] > values.size() || (i > 0 && checkpoints[i] <= checkpoints[i - 1])) {
      throw Error(Errc::bad_parameter, "moment checkpoints must ascend within the batch size");
    }
    for (; k < checkpoints[i]; ++k) sum += std::pow(std::abs(values[k]), p);
    out.push_back(sum.value() / static_cast<double>(checkpoints[i]));
  }
  return out;
}

CheckResult verify_heavy_moment(const SampleBatch& batch, double p0, std::span<const std::size_t> checkpoints) {
  if (checkpoints.size() < 2) throw Error(Errc::too_few_points, "moment check needs at least 2 checkpoints");
  const auto heavy = running_moment(batch.values, p0, checkpoints);
  const auto light = running_moment(batch.values, 1.0, checkpoints);
  bool rising = true;
  for (std::size_t i = 1; i < heavy.size(); ++i) rising = rising && heavy[i] >= 1.01 * heavy[i - 1];
  const double drift = std::abs(light.back() / light[light.size() - 2] - 1.0);

  CheckResult out;
  out.check_id = "heavy_moment";
  out.anchor = std::string(anchor_text(Anchor::heavy_moment));
  out.computed = drift;
  out.oracle = 0.0;
  out.tolerance = 0.01;
  out.verdict = verdict_of(rising && drift <= 0.01);
  std::ostringstream detail;
  detail.precision(6);
  detail << "p0-th moment:";
  for (const double h : heavy) detail << " " << h;
  detail << "; first moment:";
  for (const double l : light) detail << " " << l;
  if (!rising) detail << "; p0-th moment plateaus";
  out.detail = detail.str();
  return out;
}

}  // namespace orlicz::mc
