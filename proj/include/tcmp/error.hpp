#ifndef TCMP_ERROR_HPP
#define TCMP_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace tcmp {

enum class ErrorCode {
  MissingMoment,
  AsymmetricData,
  DegreeOverflow,
  NotHermitian,
  DimensionMismatch,
  NotARelation,
  ZeroLeadingCoefficient,
  OutsideCone,
  InfiniteVarietySuspected,
  SingularSystem,
  NoAnalyticCubic,
  PatternMismatch,
  DegenerateParams,
  DegenerateTransform,
  IllConditioned,
  NegativeDensity,
  VerificationFailed,
  InvalidArgument,
  ParseError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tcmp

#endif  // TCMP_ERROR_HPP
