#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fmr {

enum class ErrorKind {
  UnreadableFile,
  UnsupportedFormat,
  NegativeVariance,
  DegenerateGrid,
  DomainError,
  ParamError,
  StabilityError,
  UnderResolved,
  GridMismatch,
  IncompleteMomentSet,
  FractionalPowerOfNegative,
  TruncationNotConverged,
  ConstraintViolated,
  NearZeroFactor,
  LayoutMismatch,
  EmptyTrainingSet,
  DimMismatch,
  TooSmall,
  EmptyDataset,
  BadLength,
  LengthMismatch,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so
/// callers (and the CLI) can dispatch on it without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace fmr
