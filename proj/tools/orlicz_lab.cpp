// Batch harness: runs verification checks and writes a JSON or CSV report,
// or writes one plot-ready curve.
//
//   orlicz_lab [config.json] [--alpha A] [--p0 P] [--seed S] [--nmax N]
//              [--tol id=value ...] [--checks a,b,...] [--format json|csv]
//              [--out path] [--curve sup_tail|sup_lp|modular_integral]
//
// Exit status: 0 all checks pass, 1 some check failed, 2 bad configuration
// or unwritable output.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "orlicz/error.hpp"
#include "orlicz/suite.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw orlicz::Error(orlicz::Errc::config_error, "cannot read config " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

double parse_tolerance(const std::string& text) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw orlicz::Error(orlicz::Errc::config_error, "bad tolerance value '" + text + "'");
  }
  return value;
}

}  // namespace

int main(int argc, char** argv) {
  namespace suite = orlicz::suite;

  CLI::App app{"Verification harness for the disjoint-block Orlicz counterexamples"};
  std::string config_path;
  std::optional<double> alpha;
  std::optional<double> p0;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> n_max;
  std::vector<std::string> tols;
  std::vector<std::string> checks;
  std::optional<std::string> format;
  std::string out = "-";
  std::optional<std::string> curve;
  bool list = false;

  app.add_option("config", config_path, "JSON config file");
  app.add_option("--alpha", alpha, "block decay exponent in (0,1)");
  app.add_option("--p0", p0, "critical exponent > 1");
  app.add_option("--seed", seed, "Monte Carlo seed");
  app.add_option("--nmax", n_max, "last partial-sum checkpoint");
  app.add_option("--tol", tols, "tolerance override, check=value (repeatable)");
  app.add_option("--checks", checks, "check families to run")->delimiter(',');
  app.add_option("--format", format, "json or csv");
  app.add_option("--out", out, "output path, - for stdout");
  app.add_option("--curve", curve, "write a curve instead of a report");
  app.add_flag("--list-checks", list, "print the check families and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (list) {
    for (const auto& name : suite::known_checks()) std::cout << name << "\n";
    return 0;
  }

  try {
    suite::SuiteConfig config = config_path.empty() ? suite::SuiteConfig{} : suite::parse_config(read_file(config_path));
    if (alpha) config.alpha = *alpha;
    if (p0) config.p0 = *p0;
    if (seed) config.seed = *seed;
    if (n_max) config.n_max = *n_max;
    if (!checks.empty()) config.checks = checks;
    if (format) config.format = suite::parse_format(*format);
    for (const auto& t : tols) {
      const auto eq = t.find('=');
      if (eq == std::string::npos || eq == 0) {
        throw orlicz::Error(orlicz::Errc::config_error, "--tol expects check=value, got '" + t + "'");
      }
      config.tolerances[t.substr(0, eq)] = parse_tolerance(t.substr(eq + 1));
    }

    if (curve) {
      const auto which = suite::parse_curve(*curve);
      if (out == "-") {
        std::cout << suite::curve_csv(which, config);
      } else {
        suite::emit_curve(which, config, out);
      }
      return 0;
    }

    const auto report = suite::run_suite(config);
    if (out == "-") {
      std::cout << (config.format == suite::Format::json ? suite::to_json(report) : suite::to_csv(report));
    } else {
      suite::emit(report, config.format, out);
    }
    for (const auto& e : report.entries) {
      if (e.verdict == orlicz::Verdict::fail) {
        std::cerr << "FAIL " << e.check_id << ": " << report.details.at(e.check_id) << "\n";
      }
    }
    std::cerr << report.summary.passed << "/" << report.summary.total << " checks passed\n";
    return suite::exit_status(report);
  } catch (const orlicz::Error& e) {
    std::cerr << "orlicz_lab: " << e.what() << "\n";
    return 2;
  }
}
