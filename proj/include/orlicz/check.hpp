#pragma once

#include <optional>
#include <string>

#include "orlicz/quad.hpp"

namespace orlicz {

enum class Verdict { pass, fail };

inline const char* to_string(Verdict v) { return v == Verdict::pass ? "pass" : "fail"; }

/// Outcome of one verification: a computed statistic set against its
/// oracle. `anchor` names the mathematical relation being checked.
struct CheckResult {
  std::string check_id;
  std::string anchor;
  double computed = 0.0;
  double oracle = 0.0;
  double tolerance = 0.0;
  Verdict verdict = Verdict::fail;
  std::string detail;
  std::optional<quad::FitResult> fit;

  bool passed() const { return verdict == Verdict::pass; }
};

inline Verdict verdict_of(bool ok) { return ok ? Verdict::pass : Verdict::fail; }

}  // namespace orlicz
