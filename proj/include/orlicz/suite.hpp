#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "orlicz/check.hpp"

namespace orlicz::suite {

enum class Format { json, csv };

Format parse_format(std::string_view name);
std::string to_string(Format f);

/// Parameters of a suite run. Defaults reproduce the acceptance run.
struct SuiteConfig {
  double alpha = 0.5;
  double p0 = 2.0;
  /// Check families to run; empty means all of known_checks().
  std::vector<std::string> checks;
  /// Last partial-sum checkpoint; checkpoints are the powers of ten from
  /// 10^3 up to it.
  std::uint64_t n_max = 1'000'000;
  /// Approach schedule p for the blow-up and exactness checks, ascending
  /// towards p0. Empty means p0 - 10^(-1 - 3i/9), i = 0..9.
  std::vector<double> p_schedule;
  /// z schedule of the tail power-law fit. Empty means 9 log-spaced points
  /// on [10^2, 10^4].
  std::vector<double> z_schedule;
  /// eps schedule of the modular divergence check. Empty means 10^-k,
  /// k = 2..12.
  std::vector<double> eps_schedule;
  std::uint64_t seed = 20240601;
  std::size_t mc_samples = 1'000'000;
  /// Per-family tolerance overrides. An override can only tighten: the entry
  /// passes when it passed and |computed - oracle| <= override.
  std::map<std::string, double> tolerances;
  Format format = Format::json;

  bool operator==(const SuiteConfig&) const = default;
};

/// The check families run_suite understands, in report order.
const std::vector<std::string>& known_checks();

/// Schedules with defaults filled in.
std::vector<double> effective_p_schedule(const SuiteConfig& config);
std::vector<double> effective_z_schedule(const SuiteConfig& config);
std::vector<double> effective_eps_schedule(const SuiteConfig& config);

/// Throws ConfigError on any invalid field.
void validate(const SuiteConfig& config);

/// Reads a JSON config object; absent keys keep their defaults. Throws
/// ConfigError on malformed input or unknown keys.
SuiteConfig parse_config(std::string_view json_text);

struct ReportEntry {
  std::string check_id;
  std::string paper_ref;
  double computed = 0.0;
  double oracle = 0.0;
  double tolerance = 0.0;
  Verdict verdict = Verdict::fail;

  bool operator==(const ReportEntry&) const = default;
};

struct Summary {
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t total = 0;

  bool operator==(const Summary&) const = default;
};

struct Report {
  std::vector<ReportEntry> entries;
  Summary summary;
  SuiteConfig config;
  /// Human-readable context per check_id; not serialized.
  std::map<std::string, std::string> details;

  bool operator==(const Report& other) const {
    return entries == other.entries && summary == other.summary && config == other.config;
  }
};

/// Runs the configured check families in parallel. A failing check becomes a
/// fail entry; an exception inside a check becomes a fail entry with the
/// message in its detail. Entries are sorted by check_id. Throws ConfigError
/// before running anything when the config is invalid.
Report run_suite(const SuiteConfig& config);

/// 0 when every entry passed, 1 otherwise.
int exit_status(const Report& report);

std::string to_json(const Report& report);
std::string to_csv(const Report& report);
/// Inverse of to_json. Throws ConfigError on malformed input.
Report parse_report(std::string_view json_text);

/// Writes the report to `path`. Throws IoError.
void emit(const Report& report, Format format, const std::filesystem::path& path);

enum class Curve { sup_tail, sup_lp, modular_integral };

/// Throws ConfigError on an unknown name.
Curve parse_curve(std::string_view name);

/// (abscissa, value) rows over the configured schedule: sup_tail over z =
/// 10^(1 + i/10), i = 0..30; sup_lp over the p schedule; modular_integral
/// over the eps schedule.
std::string curve_csv(Curve curve, const SuiteConfig& config);
void emit_curve(Curve curve, const SuiteConfig& config, const std::filesystem::path& path);

}  // namespace orlicz::suite
