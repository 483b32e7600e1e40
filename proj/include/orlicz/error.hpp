#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace orlicz {

enum class Errc {
  non_convergence,
  domain_mismatch,
  monotonicity_violation,
  too_few_points,
  non_positive_coordinate,
  bad_parameter,
  unsupported,
  division_by_zero,
  empty_batch,
  closed_form_mismatch,
  config_error,
  io_error,
};

std::string_view to_string(Errc code) noexcept;

/// Exception carrying a machine-checkable error code.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace orlicz
