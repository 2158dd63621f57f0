#pragma once

#include <stdexcept>
#include <string>

namespace skylink {

enum class ErrorCode {
  Domain,
  InvalidArgument,
  NullPlane,
  NotTimelike,
  CommonNullGeodesic,
  AmbiguousPreimage,
  NonGenericCurve,
  DegenerateResolution,
  DegenerateTangency,
  StepRefinement,
  Unsupported,
  Config,
  Io,
};

const char* to_string(ErrorCode code);

// Single exception type for the library; callers switch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Domain: return "DomainError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NullPlane: return "NullPlane";
    case ErrorCode::NotTimelike: return "NotTimelike";
    case ErrorCode::CommonNullGeodesic: return "CommonNullGeodesic";
    case ErrorCode::AmbiguousPreimage: return "AmbiguousPreimage";
    case ErrorCode::NonGenericCurve: return "NonGenericCurve";
    case ErrorCode::DegenerateResolution: return "DegenerateResolution";
    case ErrorCode::DegenerateTangency: return "DegenerateTangency";
    case ErrorCode::StepRefinement: return "StepRefinement";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::Config: return "ConfigError";
    case ErrorCode::Io: return "IoError";
  }
  return "Unknown";
}

}  // namespace skylink
