#include "cms/error.hpp"

namespace cms {

std::string_view qualified_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ZeroRowOrColumn: return "shift.ZeroRowOrColumn";
    case ErrorCode::NoWitnessFound: return "shift.NoWitnessFound";
    case ErrorCode::InvalidShift: return "shift.InvalidShift";
    case ErrorCode::InadmissibleWord: return "potential.InadmissibleWord";
    case ErrorCode::InvalidPotential: return "potential.InvalidPotential";
    case ErrorCode::AlphabetTooLargeForEnumeration:
      return "potential.AlphabetTooLargeForEnumeration";
    case ErrorCode::InvalidModel: return "gibbs.InvalidModel";
    case ErrorCode::InadmissibleAnchor: return "pressure.InadmissibleAnchor";
    case ErrorCode::DivergedInterpolation: return "pressure.DivergedInterpolation";
    case ErrorCode::NonconvexSamples: return "ldp.NonconvexSamples";
    case ErrorCode::AlphaOutsideDomain: return "ldp.AlphaOutsideDomain";
    case ErrorCode::BudgetExceeded: return "ldp.BudgetExceeded";
    case ErrorCode::ThetaOutOfRange: return "tightness.ThetaOutOfRange";
    case ErrorCode::UnsupportedModel: return "tightness.UnsupportedModel";
    case ErrorCode::PrecisionExhausted: return "gauss.PrecisionExhausted";
    case ErrorCode::InvalidDigits: return "gauss.InvalidDigits";
    case ErrorCode::ConfigInvalid: return "cli.ConfigInvalid";
  }
  return "unknown";
}

bool is_resource_error(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::AlphabetTooLargeForEnumeration:
    case ErrorCode::BudgetExceeded:
    case ErrorCode::PrecisionExhausted:
    case ErrorCode::DivergedInterpolation:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(qualified_name(code)) + ": " + message), code_(code) {}

}  // namespace cms
