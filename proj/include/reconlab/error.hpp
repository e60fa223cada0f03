#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace reconlab {

enum class ErrorKind {
  DegenerateOrder,
  NotSymmetric,
  DimensionMismatch,
  InvalidPermutation,
  SearchTooLarge,
  ParseError,
  NotPositiveSemidefinite,
  NotPositiveDefinite,
  BadPosition,
  NonSimplicialCone,
  NotNested,
  PreconditionViolated,
  NotHypomorphic,
  LambdaTooSmall,
  IntervalCollapsed,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries a kind so callers (the CLI,
// the Python bindings) can map it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::optional<long> offset = std::nullopt)
      : std::runtime_error(message), kind_(kind), offset_(offset) {}

  ErrorKind kind() const noexcept { return kind_; }
  // Byte offset for ParseError, line number when raised by file readers.
  std::optional<long> offset() const noexcept { return offset_; }

 private:
  ErrorKind kind_;
  std::optional<long> offset_;
};

}  // namespace reconlab
