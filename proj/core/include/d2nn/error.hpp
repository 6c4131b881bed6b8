#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace d2nn {

enum class ErrorCode {
  kInvalidGeometry,
  kInvalidLayer,
  kInvalidInput,
  kInvalidArgument,
  kUnsupported,
  kCostGuard,
  kDegenerateOutput,
  kFormat,
  kConsistency,
  kIo,
  kEmptySplit,
  kConfig,
};

std::string_view to_string(ErrorCode code);

/// The single exception type thrown by the library. The code lets callers
/// (the CLI in particular) map failures onto exit statuses without parsing
/// message text.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        message_(message) {}

  ErrorCode code() const noexcept { return code_; }
  /// what() without the category prefix; handy when re-wrapping with context.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
};

}  // namespace d2nn
