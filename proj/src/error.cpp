#include "stochord/error.hpp"

namespace stochord {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidSpec: return "invalid_spec";
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::UnsupportedPair: return "unsupported_pair";
    case ErrorCode::UnsupportedFamily: return "unsupported_family";
    case ErrorCode::InfiniteSupport: return "infinite_support";
    case ErrorCode::UnboundedProfile: return "unbounded_profile";
    case ErrorCode::LengthMismatch: return "length_mismatch";
    case ErrorCode::ConditionsViolated: return "conditions_violated";
    case ErrorCode::InvalidOccupancy: return "invalid_occupancy";
    case ErrorCode::ParameterOrder: return "parameter_order";
  }
  return "unknown";
}

}  // namespace stochord
