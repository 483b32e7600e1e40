#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "orlicz/error.hpp"
#include "orlicz/suite.hpp"

using namespace orlicz;
namespace suite = orlicz::suite;

namespace {

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

suite::ReportEntry entry(std::string id, std::string ref, double computed, Verdict v) {
  return {std::move(id), std::move(ref), computed, 0.0, 1e-8, v};
}

}  // namespace

TEST_CASE("a single trivial check") {
  suite::SuiteConfig c;
  c.checks = {"distance_axioms"};
  const auto r = suite::run_suite(c);
  REQUIRE(r.entries.size() == 1);
  CHECK(r.entries[0].check_id == "distance_axioms");
  CHECK(r.entries[0].verdict == Verdict::pass);
  CHECK(r.summary.total == 1);
  CHECK(suite::exit_status(r) == 0);
}

TEST_CASE("unknown ids and bad schedules are config errors") {
  suite::SuiteConfig c;
  c.checks = {"no_such_check"};
  CHECK_THROWS_AS(suite::run_suite(c), Error);
  suite::SuiteConfig p;
  p.p_schedule = {1.0, 1.5, 1.2};
  CHECK_THROWS_AS(suite::validate(p), Error);
  suite::SuiteConfig z;
  z.z_schedule = {-1.0, 1.0, 2.0};
  CHECK_THROWS_AS(suite::validate(z), Error);
  suite::SuiteConfig t;
  t.tolerances["nope"] = 1.0;
  CHECK_THROWS_AS(suite::validate(t), Error);
  try {
    suite::validate(c);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::config_error);
  }
  CHECK_THROWS_AS(suite::parse_config("{\"alpha\": 0.5, \"colour\": 1}"), Error);
  CHECK_THROWS_AS(suite::parse_config("not json"), Error);
}

TEST_CASE("an impossible tolerance turns the entry into a failure") {
  suite::SuiteConfig c;
  c.checks = {"sup_tail_power_law"};
  c.tolerances["sup_tail_power_law"] = 0.0;
  const auto r = suite::run_suite(c);
  CHECK(r.summary.failed == 1);
  CHECK(suite::exit_status(r) == 1);
}

TEST_CASE("csv layout") {
  suite::Report empty;
  CHECK(suite::to_csv(empty) == "check_id,paper_ref,computed,oracle,tolerance,verdict\r\n");
  suite::Report two;
  two.entries = {entry("a", "x, y", 0.1, Verdict::pass), entry("b", "say \"hi\"", -1.0 / 3, Verdict::fail)};
  const auto csv = suite::to_csv(two);
  CHECK(count_lines(csv) == 3);
  CHECK(csv.find("a,\"x, y\",0.10000000000000001,0,1e-08,pass") != std::string::npos);
  CHECK(csv.find("\"say \"\"hi\"\"\",-0.33333333333333331") != std::string::npos);
}

TEST_CASE("json round trip, including non-finite numbers") {
  suite::Report r;
  r.entries = {entry("a", "ref", 1.0 / 3, Verdict::pass), entry("b", "ref", std::numeric_limits<double>::infinity(), Verdict::fail)};
  r.summary = {1, 1, 2};
  r.config.checks = {"distance_axioms"};
  r.config.tolerances["gamma_moment"] = 1e-9;
  const auto back = suite::parse_report(suite::to_json(r));
  CHECK(back == r);
  CHECK(suite::to_json(back) == suite::to_json(r));
}

TEST_CASE("config file parsing keeps defaults for absent keys") {
  const auto c = suite::parse_config(R"({"p0": 4, "alpha": 0.25, "checks": ["gamma_moment"], "format": "csv"})");
  CHECK(c.p0 == 4.0);
  CHECK(c.alpha == 0.25);
  CHECK(c.seed == suite::SuiteConfig{}.seed);
  CHECK(c.format == suite::Format::csv);
}

TEST_CASE("curves have one row per schedule point") {
  suite::SuiteConfig c;
  CHECK(count_lines(suite::curve_csv(suite::Curve::sup_tail, c)) == 32);
  CHECK(count_lines(suite::curve_csv(suite::Curve::modular_integral, c)) == 12);
  c.p_schedule = {1.0, 1.2, 1.4, 1.6, 1.8, 1.9, 1.95, 1.99};
  CHECK(count_lines(suite::curve_csv(suite::Curve::sup_lp, c)) == 9);
  CHECK_THROWS_AS(suite::parse_curve("no_such_curve"), Error);
}

TEST_CASE("emit writes files and reports unwritable paths") {
  const auto dir = std::filesystem::temp_directory_path();
  suite::Report r;
  r.entries = {entry("a", "ref", 1.0, Verdict::pass)};
  const auto path = dir / "orlicz_suite_test.csv";
  suite::emit(r, suite::Format::csv, path);
  std::ifstream in(path);
  std::stringstream text;
  text << in.rdbuf();
  CHECK(text.str() == suite::to_csv(r));
  std::filesystem::remove(path);
  try {
    suite::emit(r, suite::Format::json, "/nonexistent-dir/report.json");
    FAIL("expected IoError");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::io_error);
  }
}

TEST_CASE("same config, same report bytes") {
  suite::SuiteConfig c;
  c.checks = {"disjointness", "monte_carlo"};
  c.mc_samples = 100'000;
  CHECK(suite::to_json(suite::run_suite(c)) == suite::to_json(suite::run_suite(c)));
}
