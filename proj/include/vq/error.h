#pragma once

#include <stdexcept>
#include <string>

namespace vq {

/// Failure classes surfaced by the library. The CLI maps each one to its own
/// exit status (see exit_code()).
enum class ErrorCode {
  kIo,
  kUnsupportedFormat,
  kSilentInput,
  kTooShort,
  kInsufficientVoicing,
  kTooFewVectors,
  kDegenerateFeature,
  kMalformedStats,
  kMalformedTable,
  kEmptyQuality,
  kMissingFeature,
  kBadManifest,
  kNoPositives,
  kNoNegatives,
  kInvalidArgument,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Process exit status for an error class. 0 and 1 are reserved for success
/// and usage errors.
int exit_code(ErrorCode code) noexcept;

/// Stable short name, e.g. "silent-input".
const char* error_name(ErrorCode code) noexcept;

}  // namespace vq
