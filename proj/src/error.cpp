#include "railsim/error.hpp"

namespace railsim {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::PastTime: return "PastTime";
    case ErrorCode::BadParameter: return "BadParameter";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DanglingReference: return "DanglingReference";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    case ErrorCode::EmptyNetwork: return "EmptyNetwork";
    case ErrorCode::Unreachable: return "Unreachable";
    case ErrorCode::EventEnded: return "EventEnded";
    case ErrorCode::InfeasibleDegree: return "InfeasibleDegree";
    case ErrorCode::BadConfig: return "BadConfig";
    case ErrorCode::DuplicatePresence: return "DuplicatePresence";
    case ErrorCode::UnknownToken: return "UnknownToken";
    case ErrorCode::UnknownStation: return "UnknownStation";
    case ErrorCode::InvalidMove: return "InvalidMove";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace railsim
