#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace heegrank {

enum class ErrorCode {
  ZeroInput,
  FactorizationIncomplete,
  FieldMismatch,
  BadReductionPrime,
  MissingPrime,
  NonNegativeF,
  SquareF,
  SearchExhausted,
  CheckFailed,
  BadDiscriminant,
  RatioMismatch,
  NoSquareRoot,
  PrecisionUnreachable,
  RecognitionFailed,
  ClassNumberNotOne,
  NotInert,
  ZeroSeed,
  HasseViolation,
  CMConditionFailed,
  InvalidArgument,
  CatalogError,
  IoError,
};

std::string_view to_string(ErrorCode code);

// True for failures of a mathematical check or an exhausted search, as
// opposed to bad input or configuration. Drives CLI exit codes 1 vs 2.
bool is_check_failure(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace heegrank
