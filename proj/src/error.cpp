#include "ciprng/error.hpp"

namespace ciprng {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::AllZeroSeed: return "AllZeroSeed";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::SequenceTooShort: return "SequenceTooShort";
    case ErrorCode::BadBlockLength: return "BadBlockLength";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::TooFewSequences: return "TooFewSequences";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::MalformedFile: return "MalformedFile";
  }
  return "Unknown";
}

}  // namespace ciprng
