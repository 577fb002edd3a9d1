#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace stochord {

enum class ErrorCode {
  InvalidSpec,
  InvalidArgument,
  UnsupportedPair,
  UnsupportedFamily,
  InfiniteSupport,
  UnboundedProfile,
  LengthMismatch,
  ConditionsViolated,
  InvalidOccupancy,
  ParameterOrder,
};

std::string_view to_string(ErrorCode code);

/// Library error. The code lets callers (and the CLI exit-code mapping)
/// distinguish input problems from unsupported requests.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace stochord
