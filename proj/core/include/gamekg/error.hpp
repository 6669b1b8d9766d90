#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gamekg {

enum class ErrorCode {
  validation,      // malformed input or precondition violation
  not_found,       // unknown entity, edge, case or token
  integrity,       // referential-integrity or identity violation
  parse,           // malformed persisted data (JSONL, config)
  io,              // filesystem failure
  pool_exhausted,  // pseudonym pool too small for the subgraph
  no_case,         // graph cannot yield a case
  expired,         // case past its TTL
  unauthorized,    // operator endpoint without a valid token
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace gamekg
