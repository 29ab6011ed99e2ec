#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace zdirac {

enum class ErrorKind {
  DivisionNearZero,
  BranchCut,
  OrderExceeded,
  JetMismatch,
  SyntaxError,
  UnknownIdentifier,
  NonConstantExponent,
  PoleAtC,
  NoConvergence,
  DomainError,
  PoleAtNonpositiveInteger,
  NodeEncountered,
  NegativeRadicand,
  ZeroNorm,
  QuadratureFailure,
  InvalidSpec,
  ConfigError,
};

std::string_view to_string(ErrorKind kind);

// Single exception type for the library. `where()` carries the coordinate of
// the failing evaluation when one is known; `span()` carries the source range
// of an expression node (parse offset for syntax errors).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }
  const std::optional<double>& where() const noexcept { return where_; }
  std::size_t offset() const noexcept { return offset_; }
  std::size_t length() const noexcept { return length_; }

  Error with_location(double x) const;
  Error with_span(std::size_t offset, std::size_t length) const;

 private:
  ErrorKind kind_;
  std::optional<double> where_;
  std::size_t offset_ = 0;
  std::size_t length_ = 0;
};

}  // namespace zdirac
