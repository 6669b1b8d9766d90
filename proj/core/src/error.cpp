#include "gamekg/error.hpp"

namespace gamekg {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::validation: return "validation";
    case ErrorCode::not_found: return "not_found";
    case ErrorCode::integrity: return "integrity";
    case ErrorCode::parse: return "parse";
    case ErrorCode::io: return "io";
    case ErrorCode::pool_exhausted: return "pool_exhausted";
    case ErrorCode::no_case: return "no_case";
    case ErrorCode::expired: return "expired";
    case ErrorCode::unauthorized: return "unauthorized";
  }
  return "unknown";
}

}  // namespace gamekg
