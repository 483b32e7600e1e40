#include "orlicz/error.hpp"

namespace orlicz {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::non_convergence: return "NonConvergence";
    case Errc::domain_mismatch: return "DomainMismatch";
    case Errc::monotonicity_violation: return "MonotonicityViolation";
    case Errc::too_few_points: return "TooFewPoints";
    case Errc::non_positive_coordinate: return "NonPositiveCoordinate";
    case Errc::bad_parameter: return "BadParameter";
    case Errc::unsupported: return "Unsupported";
    case Errc::division_by_zero: return "DivisionByZero";
    case Errc::empty_batch: return "EmptyBatch";
    case Errc::closed_form_mismatch: return "ClosedFormMismatch";
    case Errc::config_error: return "ConfigError";
    case Errc::io_error: return "IoError";
  }
  return "Unknown";
}

}  // namespace orlicz
