#ifndef ASTAR_ERROR_HPP
#define ASTAR_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace astar {

enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  NotHermitian,
  NotPsd,
  NotInvertible,
  NotPositiveDefinite,
  NoConvergence,
  NotUnitVector,
  LambdaOutOfRange,
  NotAPositive,
  NotParallel,
  DimensionTooLarge,
  ZeroDirection,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotPsd: return "NotPsd";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NotUnitVector: return "NotUnitVector";
    case ErrorCode::LambdaOutOfRange: return "LambdaOutOfRange";
    case ErrorCode::NotAPositive: return "NotAPositive";
    case ErrorCode::NotParallel: return "NotParallel";
    case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::ZeroDirection: return "ZeroDirection";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace astar

#endif  // ASTAR_ERROR_HPP
