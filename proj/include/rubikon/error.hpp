#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rubikon {

enum class ErrorCode : std::uint8_t {
  BadLength,
  BadSymbol,
  BadColorCount,
  CenterConflict,
  IllegalState,
  NotOneMove,
  PatternMismatch,
  BadLevel,
  NoActiveSkill,
  UnsatisfiableContext,
  OpenAttempt,
  SchemaError,
  EmptyLog,
  CorruptLog,
  UndefinedMetric,
  InvalidArgument,
  Io,
};

std::string_view to_string(ErrorCode code);

// Single exception type for the library; the C API maps `code()` onto status
// values. `detail()` carries an integer payload where one exists (CorruptLog:
// first bad seq).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::int64_t detail = -1)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        detail_(detail) {}

  ErrorCode code() const noexcept { return code_; }
  std::int64_t detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::int64_t detail_;
};

}  // namespace rubikon
