#include "orlicz/suite.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <future>
#include <limits>
#include <sstream>

#include "json.hpp"

#include "orlicz/anchors.hpp"
#include "orlicz/counterexample.hpp"
#include "orlicz/error.hpp"
#include "orlicz/mc.hpp"
#include "orlicz/norms.hpp"
#include "orlicz/space.hpp"
#include "orlicz/young.hpp"

namespace orlicz::suite {

namespace ce = counterexample;
using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void config_error(const std::string& what) { throw Error(Errc::config_error, what); }

CheckResult make_entry(std::string id, Anchor anchor) {
  CheckResult out;
  out.check_id = std::move(id);
  out.anchor = std::string(anchor_text(anchor));
  return out;
}

std::string fmt(double x) {
  std::ostringstream out;
  out.precision(10);
  out << x;
  return out.str();
}

std::vector<double> log_spaced(double lo_exp, double hi_exp, std::size_t count) {
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(count - 1);
    out[i] = std::pow(10.0, lo_exp + t * (hi_exp - lo_exp));
  }
  return out;
}

std::vector<std::uint64_t> decade_checkpoints(std::uint64_t n_max) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 1000; n <= n_max; n *= 10) {
    out.push_back(n);
    if (n > n_max / 10) break;
  }
  if (out.back() != n_max) out.push_back(n_max);
  return out;
}

// Checks without a home in the counterexample or mc modules.

std::vector<CheckResult> check_dominance(double p0) {
  const std::vector<double> lambdas{1.0, 10.0, 100.0};
  const auto u = log_spaced(2.0, 12.0, 11);
  const auto power = young::power(p0);
  const auto tempered = young::log_tempered_power(p0);

  auto decay = [](const young::DominanceProfile& prof) {
    double worst = 0.0;
    for (const auto& row : prof.ratios) worst = std::max(worst, row.back() / row.front());
    return worst;
  };

  auto dominated = make_entry("dominance:dominated", Anchor::domination);
  const auto d = young::dominance_profile(tempered, power, lambdas, u);
  dominated.computed = decay(d);
  dominated.oracle = 0.0;
  dominated.tolerance = 0.6;
  dominated.verdict = verdict_of(d.verdict == young::Dominance::dominated);
  dominated.detail = tempered.label() + " vs " + power.label() + ": " + young::to_string(d.verdict);

  auto control = make_entry("dominance:control", Anchor::domination);
  const auto c = young::dominance_profile(power, power, lambdas, u);
  control.computed = decay(c);
  control.oracle = 1.0;
  control.tolerance = 0.4;
  control.verdict = verdict_of(c.verdict == young::Dominance::not_dominated);
  control.detail = power.label() + " vs itself: " + young::to_string(c.verdict);
  return {dominated, control};
}

std::vector<CheckResult> check_delta2() {
  std::vector<double> u;
  for (int k = 0; k <= 40; ++k) u.push_back(std::ldexp(1.0, k));

  auto tempered = make_entry("delta2:log_tempered_power", Anchor::delta2);
  const auto t = young::delta2_profile(young::log_tempered_power(2.0), u);
  tempered.computed = t.sup_ratio;
  tempered.oracle = 4.0;
  tempered.tolerance = 0.0;
  tempered.verdict = verdict_of(t.bounded && t.sup_ratio <= 4.0);
  tempered.detail = std::string(t.bounded ? "bounded" : "unbounded") + ", sup ratio " + fmt(t.sup_ratio);

  auto gauss = make_entry("delta2:exp_square", Anchor::delta2);
  const auto g = young::delta2_profile(young::exp_square(), u);
  gauss.computed = g.sup_ratio;
  gauss.oracle = std::numeric_limits<double>::infinity();
  gauss.tolerance = 0.0;
  gauss.verdict = verdict_of(!g.bounded);
  gauss.detail = g.bounded ? "bounded" : "unbounded";
  return {tempered, gauss};
}

std::vector<CheckResult> check_luxemburg() {
  const std::vector<young::YoungFunction> phis{young::power(2.0), young::power(4.0), young::exp_square()};

  auto identity = make_entry("luxemburg_indicator", Anchor::luxemburg_indicator);
  double worst = 0.0;
  for (const double a : {0.01, 0.25, 0.5}) {
    const auto f = space::indicator({0.0, a});
    for (const auto& phi : phis) {
      const double exact = 1.0 / young::inverse_young(phi, 1.0 / a);
      worst = std::max(worst, std::abs(norms::luxemburg_norm(f, phi).value - exact));
    }
  }
  identity.computed = worst;
  identity.oracle = 0.0;
  identity.tolerance = 1e-10;
  identity.verdict = verdict_of(worst <= 1e-10);
  identity.detail = "max |N(1_A) - 1/Phi^-1(1/|A|)| over 9 cases";

  auto homogeneity = make_entry("luxemburg_homogeneity", Anchor::luxemburg_indicator);
  const std::vector<space::RealFunction> battery{space::indicator({0.0, 0.25}), space::f_half()};
  worst = 0.0;
  for (const auto& f : battery) {
    for (const auto& phi : phis) {
      const double base = norms::luxemburg_norm(f, phi).value;
      for (const double c : {-3.0, 0.5, 2.0}) {
        const double scaled = norms::luxemburg_norm(space::scaled(f, c), phi).value;
        worst = std::max(worst, std::abs(scaled - std::abs(c) * base) / (std::abs(c) * base));
      }
    }
  }
  homogeneity.computed = worst;
  homogeneity.oracle = 0.0;
  homogeneity.tolerance = 1e-8;
  homogeneity.verdict = verdict_of(worst <= 1e-8);
  homogeneity.detail = "max relative |N(cf) - |c| N(f)|";
  return {identity, homogeneity};
}

CheckResult check_lorentz() {
  constexpr std::size_t kCells = 1000;
  const auto v = [](double s) { return std::sqrt(s); };
  std::vector<double> s_grid(kCells);
  for (std::size_t k = 0; k < kCells; ++k) s_grid[k] = static_cast<double>(k + 1) / kCells;

  auto out = make_entry("lorentz_reduction", Anchor::lorentz_reduction);
  std::ostringstream detail;
  detail.precision(10);
  double worst = 0.0;
  for (const auto& f : {space::indicator({0.0, 0.25}), space::f_half()}) {
    const double reduced = norms::lorentz_norm(f, v, s_grid).value;
    const double direct = norms::lorentz_brute_force(f, v, kCells).value;
    worst = std::max(worst, std::abs(reduced - direct));
    detail << f.label() << ": " << reduced << " vs " << direct << "; ";
  }
  out.computed = worst;
  out.oracle = 0.0;
  out.tolerance = 1e-3;
  out.verdict = verdict_of(worst <= 1e-3);
  out.detail = detail.str();
  return out;
}

CheckResult check_gamma_moment() {
  auto out = make_entry("gamma_moment", Anchor::gamma_moment);
  const auto f = space::f_half();
  double worst = 0.0;
  for (int p = 1; p <= 20; ++p) {
    const double exact = std::pow(std::tgamma(p / 2.0 + 1.0), 1.0 / p);
    const double got = norms::lp_norm(f, p, 1e-12, norms::Method::quadrature).value;
    worst = std::max(worst, std::abs(got - exact) / exact);
  }
  out.computed = worst;
  out.oracle = 0.0;
  out.tolerance = 1e-8;
  out.verdict = verdict_of(worst <= 1e-8);
  out.detail = "max relative deviation of quadrature from Gamma(p/2+1)^(1/p), p = 1..20";
  return out;
}

CheckResult check_exact_tail() {
  auto out = make_entry("exact_tail", Anchor::exact_tail);
  auto def = space::f_half().definition();
  def.closed_form_tail = nullptr;
  const space::RealFunction numeric(std::move(def));
  double worst = 0.0;
  for (const double u : {0.5, 1.0, 2.0, 3.0}) {
    worst = std::max(worst, std::abs(space::tail(numeric, u) - std::exp(-u * u)));
  }
  out.computed = worst;
  out.oracle = 0.0;
  out.tolerance = 1e-12;
  out.verdict = verdict_of(worst <= 1e-12);
  out.detail = "distribution function by bisection against exp(-u^2)";
  return out;
}

CheckResult check_borel_cantelli() {
  constexpr double kExpected = 8.24e-4;
  auto out = make_entry("borel_cantelli", Anchor::borel_cantelli);
  const auto sys = ce::build_system(ce::Params::infinite_measure());
  const auto r = ce::borel_cantelli_sum(sys, 1.0);
  out.computed = r.partial_sum + 0.5 * r.tail_bound;
  out.oracle = kExpected;
  out.tolerance = 0.005 * kExpected;
  const bool convergent = r.verdict == quad::SeriesVerdict::convergent && r.tail_bound < 1e-10;
  out.verdict = verdict_of(convergent && std::abs(out.computed - out.oracle) <= out.tolerance);
  out.detail = quad::to_string(r.verdict) + ", tail bound " + fmt(r.tail_bound) + ", " +
               std::to_string(r.n_terms) + " terms";
  return out;
}

std::vector<CheckResult> check_monte_carlo(const SuiteConfig& config) {
  const auto sys = ce::build_system(ce::Params::probability(config.alpha, config.p0));
  const auto batch = mc::sample_sup(sys, config.seed, config.mc_samples);
  const std::size_t n = config.mc_samples;
  const std::vector<std::size_t> checkpoints{n / 100, n / 10, n};
  return {mc::verify_mc_tail(sys, batch, 10.0), mc::verify_mc_mean(sys, batch),
          mc::symmetrization_check(sys, 1, config.seed, 100'000),
          mc::verify_heavy_moment(batch, config.p0, checkpoints)};
}

using Runner = std::function<std::vector<CheckResult>(const SuiteConfig&)>;

const std::vector<std::pair<std::string, Runner>>& catalog() {
  static const std::vector<std::pair<std::string, Runner>> table{
      {"distance_axioms", [](const SuiteConfig&) { return std::vector{ce::verify_distance_axioms()}; }},
      {"block_norms",
       [](const SuiteConfig& c) {
         return std::vector{ce::verify_block_norms(ce::build_system(ce::Params::probability(c.alpha, c.p0))),
                            ce::verify_block_norms(ce::build_system(ce::Params::infinite_measure()))};
       }},
      {"disjointness",
       [](const SuiteConfig& c) {
         return std::vector{
             ce::verify_disjointness(ce::build_system(ce::Params::probability(c.alpha, c.p0)), 10'000, c.seed),
             ce::verify_disjointness(ce::build_system(ce::Params::infinite_measure()), 10'000, c.seed)};
       }},
      {"partial_sum_growth",
       [](const SuiteConfig& c) {
         const auto sys = ce::build_system(ce::Params::infinite_measure());
         const auto checkpoints = decade_checkpoints(c.n_max);
         return std::vector{ce::verify_partial_sum_growth(sys, 1.0, checkpoints),
                            ce::verify_partial_sum_growth(sys, 2.0, checkpoints)};
       }},
      {"sup_norm_blowup",
       [](const SuiteConfig& c) {
         const auto sys = ce::build_system(ce::Params::probability(c.alpha, c.p0));
         return std::vector{ce::verify_sup_norm_blowup(sys, effective_p_schedule(c))};
       }},
      {"gls_exactness",
       [](const SuiteConfig& c) {
         const auto sys = ce::build_system(ce::Params::probability(c.alpha, c.p0));
         return std::vector{ce::verify_gls_exactness(sys, effective_p_schedule(c))};
       }},
      {"sup_tail_power_law",
       [](const SuiteConfig& c) {
         const auto sys = ce::build_system(ce::Params::probability(c.alpha, c.p0));
         return std::vector{ce::verify_sup_tail_power_law(sys, effective_z_schedule(c))};
       }},
      {"modular_divergence",
       [](const SuiteConfig& c) {
         return std::vector{ce::verify_modular_divergence(c.p0, effective_eps_schedule(c))};
       }},
      {"borel_cantelli", [](const SuiteConfig&) { return std::vector{check_borel_cantelli()}; }},
      {"continuity",
       [](const SuiteConfig& c) {
         return std::vector{
             ce::verify_continuity(ce::build_system(ce::Params::probability(c.alpha, c.p0)), 1e-2),
             ce::verify_continuity(ce::build_system(ce::Params::infinite_measure()), 1e-3)};
       }},
      {"dominance", [](const SuiteConfig& c) { return check_dominance(c.p0); }},
      {"delta2", [](const SuiteConfig&) { return check_delta2(); }},
      {"luxemburg", [](const SuiteConfig&) { return check_luxemburg(); }},
      {"lorentz_reduction", [](const SuiteConfig&) { return std::vector{check_lorentz()}; }},
      {"gamma_moment", [](const SuiteConfig&) { return std::vector{check_gamma_moment()}; }},
      {"exact_tail", [](const SuiteConfig&) { return std::vector{check_exact_tail()}; }},
      {"monte_carlo", check_monte_carlo},
  };
  return table;
}

// Stems of entry ids that a tolerance override may name besides the families.
const std::vector<std::string>& entry_stems() {
  static const std::vector<std::string> stems{"mc_tail", "mc_mean", "symmetrization", "heavy_moment",
                                              "luxemburg_indicator", "luxemburg_homogeneity"};
  return stems;
}

bool is_known(const std::vector<std::string>& names, const std::string& name) {
  return std::find(names.begin(), names.end(), name) != names.end();
}

void tighten(CheckResult& r, double tol) {
  r.tolerance = tol;
  if (!(std::abs(r.computed - r.oracle) <= tol)) r.verdict = Verdict::fail;
}

std::string number_text(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json number_json(double x) {
  if (std::isfinite(x)) return x;
  return number_text(x);
}

double number_from(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  config_error("expected a number, got " + j.dump());
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

json config_json(const SuiteConfig& c) {
  json j;
  j["alpha"] = c.alpha;
  j["p0"] = c.p0;
  j["checks"] = c.checks;
  j["n_max"] = c.n_max;
  j["p_schedule"] = c.p_schedule;
  j["z_schedule"] = c.z_schedule;
  j["eps_schedule"] = c.eps_schedule;
  j["seed"] = c.seed;
  j["mc_samples"] = c.mc_samples;
  j["tolerances"] = json::object();
  for (const auto& [k, v] : c.tolerances) j["tolerances"][k] = v;
  j["format"] = to_string(c.format);
  return j;
}

SuiteConfig config_from(const json& j) {
  if (!j.is_object()) config_error("config must be a JSON object");
  SuiteConfig c;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "alpha") c.alpha = value.get<double>();
      else if (key == "p0") c.p0 = value.get<double>();
      else if (key == "checks") c.checks = value.get<std::vector<std::string>>();
      else if (key == "n_max") c.n_max = value.get<std::uint64_t>();
      else if (key == "p_schedule") c.p_schedule = value.get<std::vector<double>>();
      else if (key == "z_schedule") c.z_schedule = value.get<std::vector<double>>();
      else if (key == "eps_schedule") c.eps_schedule = value.get<std::vector<double>>();
      else if (key == "seed") c.seed = value.get<std::uint64_t>();
      else if (key == "mc_samples") c.mc_samples = value.get<std::size_t>();
      else if (key == "tolerances") c.tolerances = value.get<std::map<std::string, double>>();
      else if (key == "format") c.format = parse_format(value.get<std::string>());
      else config_error("unknown config key '" + key + "'");
    }
  } catch (const json::exception& e) {
    config_error(std::string("bad config value: ") + e.what());
  }
  return c;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::io_error, "cannot open " + path.string());
  out << text;
  out.flush();
  if (!out) throw Error(Errc::io_error, "cannot write " + path.string());
}

}  // namespace

Format parse_format(std::string_view name) {
  if (name == "json") return Format::json;
  if (name == "csv") return Format::csv;
  config_error("unknown format '" + std::string(name) + "'");
}

std::string to_string(Format f) { return f == Format::json ? "json" : "csv"; }

const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& entry : catalog()) out.push_back(entry.first);
    return out;
  }();
  return names;
}

std::vector<double> effective_p_schedule(const SuiteConfig& c) {
  if (!c.p_schedule.empty()) return c.p_schedule;
  std::vector<double> out;
  for (int i = 0; i < 10; ++i) out.push_back(c.p0 - std::pow(10.0, -1.0 - 3.0 * i / 9.0));
  return out;
}

std::vector<double> effective_z_schedule(const SuiteConfig& c) {
  return c.z_schedule.empty() ? log_spaced(2.0, 4.0, 9) : c.z_schedule;
}

std::vector<double> effective_eps_schedule(const SuiteConfig& c) {
  if (!c.eps_schedule.empty()) return c.eps_schedule;
  std::vector<double> out;
  for (int k = 2; k <= 12; ++k) out.push_back(std::pow(10.0, -k));
  return out;
}

void validate(const SuiteConfig& c) {
  if (!(c.alpha > 0.0 && c.alpha < 1.0)) config_error("alpha must lie in (0,1)");
  if (!(c.p0 > 1.0) || !std::isfinite(c.p0)) config_error("p0 must be finite and > 1");
  for (const auto& name : c.checks) {
    if (!is_known(known_checks(), name)) config_error("unknown check id '" + name + "'");
  }
  for (const auto& [name, tol] : c.tolerances) {
    if (!is_known(known_checks(), name) && !is_known(entry_stems(), name)) {
      config_error("tolerance for unknown check id '" + name + "'");
    }
    if (!(tol >= 0.0) || !std::isfinite(tol)) config_error("tolerance for '" + name + "' must be finite and >= 0");
  }
  if (c.n_max < 10'000) config_error("n_max must be at least 10^4");
  if (c.mc_samples < 10'000) config_error("mc_samples must be at least 10^4");

  const auto p = effective_p_schedule(c);
  if (p.size() < 8) config_error("p schedule needs at least 8 points");
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!(p[i] >= 1.0 && p[i] < c.p0)) config_error("p schedule must lie in [1, p0)");
    if (i > 0 && !(p[i] > p[i - 1])) config_error("p schedule must ascend");
  }
  const auto z = effective_z_schedule(c);
  if (z.size() < 3) config_error("z schedule needs at least 3 points");
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (!(z[i] > 0.0) || !std::isfinite(z[i])) config_error("z schedule must be positive");
    if (i > 0 && !(z[i] > z[i - 1])) config_error("z schedule must ascend");
  }
  const auto eps = effective_eps_schedule(c);
  if (eps.size() < 3) config_error("eps schedule needs at least 3 points");
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (!(eps[i] > 0.0 && eps[i] < 0.5)) config_error("eps schedule must lie in (0, 1/2)");
    if (i > 0 && !(eps[i] < eps[i - 1])) config_error("eps schedule must descend");
  }
}

SuiteConfig parse_config(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    config_error(std::string("malformed config: ") + e.what());
  }
  return config_from(j);
}

Report run_suite(const SuiteConfig& config) {
  validate(config);
  std::vector<std::pair<std::string, Runner>> selected;
  for (const auto& entry : catalog()) {
    if (config.checks.empty() || is_known(config.checks, entry.first)) selected.push_back(entry);
  }

  std::vector<std::future<std::vector<CheckResult>>> jobs;
  for (const auto& [name, runner] : selected) {
    jobs.push_back(std::async(std::launch::async, [&config, name = name, runner = runner] {
      try {
        return runner(config);
      } catch (const std::exception& e) {
        CheckResult failed;
        failed.check_id = name;
        failed.computed = std::numeric_limits<double>::quiet_NaN();
        failed.oracle = std::numeric_limits<double>::quiet_NaN();
        failed.detail = e.what();
        return std::vector{failed};
      }
    }));
  }

  Report report;
  report.config = config;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const auto& family = selected[i].first;
    for (auto& r : jobs[i].get()) {
      if (const auto it = config.tolerances.find(family); it != config.tolerances.end()) tighten(r, it->second);
      const std::string stem = r.check_id.substr(0, r.check_id.find(':'));
      if (stem != family) {
        if (const auto it = config.tolerances.find(stem); it != config.tolerances.end()) tighten(r, it->second);
      }
      report.details[r.check_id] = r.detail;
      report.entries.push_back({r.check_id, r.anchor, r.computed, r.oracle, r.tolerance, r.verdict});
    }
  }
  std::sort(report.entries.begin(), report.entries.end(),
            [](const ReportEntry& a, const ReportEntry& b) { return a.check_id < b.check_id; });
  for (const auto& e : report.entries) (e.verdict == Verdict::pass ? report.summary.passed : report.summary.failed)++;
  report.summary.total = report.entries.size();
  return report;
}

int exit_status(const Report& report) { return report.summary.failed == 0 ? 0 : 1; }

std::string to_json(const Report& report) {
  json j;
  j["entries"] = json::array();
  for (const auto& e : report.entries) {
    json row;
    row["check_id"] = e.check_id;
    row["paper_ref"] = e.paper_ref;
    row["computed"] = number_json(e.computed);
    row["oracle"] = number_json(e.oracle);
    row["tolerance"] = number_json(e.tolerance);
    row["verdict"] = to_string(e.verdict);
    j["entries"].push_back(std::move(row));
  }
  j["summary"] = {{"passed", report.summary.passed},
                  {"failed", report.summary.failed},
                  {"total", report.summary.total}};
  j["config"] = config_json(report.config);
  return j.dump(2) + "\n";
}

std::string to_csv(const Report& report) {
  std::string out = "check_id,paper_ref,computed,oracle,tolerance,verdict\r\n";
  for (const auto& e : report.entries) {
    out += csv_field(e.check_id) + "," + csv_field(e.paper_ref) + "," + number_text(e.computed) + "," +
           number_text(e.oracle) + "," + number_text(e.tolerance) + "," + to_string(e.verdict) + "\r\n";
  }
  return out;
}

Report parse_report(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    config_error(std::string("malformed report: ") + e.what());
  }
  Report r;
  try {
    for (const auto& row : j.at("entries")) {
      ReportEntry e;
      e.check_id = row.at("check_id").get<std::string>();
      e.paper_ref = row.at("paper_ref").get<std::string>();
      e.computed = number_from(row.at("computed"));
      e.oracle = number_from(row.at("oracle"));
      e.tolerance = number_from(row.at("tolerance"));
      const auto verdict = row.at("verdict").get<std::string>();
      if (verdict != "pass" && verdict != "fail") config_error("bad verdict '" + verdict + "'");
      e.verdict = verdict == "pass" ? Verdict::pass : Verdict::fail;
      r.entries.push_back(std::move(e));
    }
    const auto& s = j.at("summary");
    r.summary = {s.at("passed").get<std::size_t>(), s.at("failed").get<std::size_t>(),
                 s.at("total").get<std::size_t>()};
    r.config = config_from(j.at("config"));
  } catch (const json::exception& e) {
    config_error(std::string("malformed report: ") + e.what());
  }
  return r;
}

void emit(const Report& report, Format format, const std::filesystem::path& path) {
  write_file(path, format == Format::json ? to_json(report) : to_csv(report));
}

Curve parse_curve(std::string_view name) {
  if (name == "sup_tail") return Curve::sup_tail;
  if (name == "sup_lp") return Curve::sup_lp;
  if (name == "modular_integral") return Curve::modular_integral;
  config_error("unknown curve '" + std::string(name) + "'");
}

std::string curve_csv(Curve curve, const SuiteConfig& config) {
  validate(config);
  std::vector<std::pair<double, double>> rows;
  switch (curve) {
    case Curve::sup_tail: {
      const auto sys = ce::build_system(ce::Params::probability(config.alpha, config.p0));
      for (int i = 0; i <= 30; ++i) {
        const double z = std::pow(10.0, 1.0 + i / 10.0);
        rows.emplace_back(z, ce::sup_tail(sys, z));
      }
      break;
    }
    case Curve::sup_lp: {
      const auto sys = ce::build_system(ce::Params::probability(config.alpha, config.p0));
      for (const double p : effective_p_schedule(config)) rows.emplace_back(p, ce::sup_lp(sys, p).value);
      break;
    }
    case Curve::modular_integral:
      for (const double eps : effective_eps_schedule(config)) {
        rows.emplace_back(eps, ce::modular_integral(config.p0, eps));
      }
      break;
  }
  std::string out = "abscissa,value\r\n";
  for (const auto& [x, y] : rows) out += number_text(x) + "," + number_text(y) + "\r\n";
  return out;
}

void emit_curve(Curve curve, const SuiteConfig& config, const std::filesystem::path& path) {
  write_file(path, curve_csv(curve, config));
}

}  // namespace orlicz::suite
