#ifndef CMS_ERROR_HPP
#define CMS_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace cms {

/// Failure categories shared by all modules. Each code belongs to exactly one
/// module; `qualified_name` renders it as "module.Code".
enum class ErrorCode {
  // shift
  ZeroRowOrColumn,
  NoWitnessFound,
  InvalidShift,
  // potential
  InadmissibleWord,
  InvalidPotential,
  AlphabetTooLargeForEnumeration,
  // gibbs
  InvalidModel,
  // pressure
  InadmissibleAnchor,
  DivergedInterpolation,
  // ldp
  NonconvexSamples,
  AlphaOutsideDomain,
  BudgetExceeded,
  // tightness
  ThetaOutOfRange,
  UnsupportedModel,
  // gauss
  PrecisionExhausted,
  InvalidDigits,
  // cli
  ConfigInvalid,
};

std::string_view qualified_name(ErrorCode code) noexcept;

/// True for errors caused by exhausted budgets or precision rather than bad
/// input. The CLI maps these to exit status 3.
bool is_resource_error(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cms

#endif  // CMS_ERROR_HPP
