#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace urdet {

enum class ErrorKind {
  EmptyAfterPreprocess,
  InvalidConfig,
  EmptySplit,
  NoWords,
  TooShort,
  DegenerateSample,
  EmptySample,
  NoFeatures,
  Diverged,
  MissingFeature,
  LengthMismatch,
  MalformedInput,
  Io,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::EmptyAfterPreprocess: return "EmptyAfterPreprocess";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::EmptySplit: return "EmptySplit";
    case ErrorKind::NoWords: return "NoWords";
    case ErrorKind::TooShort: return "TooShort";
    case ErrorKind::DegenerateSample: return "DegenerateSample";
    case ErrorKind::EmptySample: return "EmptySample";
    case ErrorKind::NoFeatures: return "NoFeatures";
    case ErrorKind::Diverged: return "Diverged";
    case ErrorKind::MissingFeature: return "MissingFeature";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::MalformedInput: return "MalformedInput";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a kind so callers (the CLI in
/// particular) can map it to an exit status without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace urdet
