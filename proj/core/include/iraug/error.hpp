#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace iraug {

enum class ErrorCode {
  InvalidArgument,
  EmptyFile,
  MalformedHeader,
  MissingTarget,
  MissingValue,
  UnparseableCell,
  RaggedRow,
  UndeclaredCategory,
  UnsupportedFormat,
  NoRareRegion,
  EmptyRarePartition,
  ZeroRelevanceMass,
  LengthMismatch,
  EmptyInput,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Library-wide exception. Carries a machine-readable code next to the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace iraug
