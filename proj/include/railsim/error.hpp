#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace railsim {

enum class ErrorCode {
  PastTime,
  BadParameter,
  ParseError,
  DanglingReference,
  InvariantViolation,
  EmptyNetwork,
  Unreachable,
  EventEnded,
  InfeasibleDegree,
  BadConfig,
  DuplicatePresence,
  UnknownToken,
  UnknownStation,
  InvalidMove,
  IoError,
};

std::string_view to_string(ErrorCode code);

/// Single exception type for the library; `code()` identifies the failure.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace railsim
