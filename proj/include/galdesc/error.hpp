#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

namespace gdesc {

enum class ErrorCode : int {
  // mathematical failures: the input is well formed but the asserted identity fails
  Reducible = 1,
  UnverifiableIrreducibility,
  HintNotRoot,
  NotClosed,
  NotFixed,
  NotConstant,
  NoSolution,
  NotCocycle,
  Singular,
  DescentFailed,
  NotEquivariant,
  NotSheafMorphism,
  NotFixedRestriction,
  NotChainMap,
  NotStrict,
  RelationViolated,
  InvalidGluingMorphism,
  NotGalois,
  // usage and shape errors
  SchemaError = 100,
  DimensionMismatch,
  NotSquare,
  FieldMismatch,
  NotPrime,
  TowerTooDeep,
  NotPartialOrder,
  NotMonotone,
  NotUpSet,
  NotLocallyClosed,
  NotPathIndependent,
  ParseError,
  Internal = 200,
};

std::string_view error_name(ErrorCode code) noexcept;

// True for codes that report a failed mathematical identity rather than bad input.
constexpr bool is_mathematical(ErrorCode code) noexcept {
  return static_cast<int>(code) < static_cast<int>(ErrorCode::SchemaError);
}

/// Exception carrying a code and named integer witnesses (group indices,
/// poset points, degrees) so callers can report exactly which identity failed.
class Error : public std::runtime_error {
 public:
  using Witness = std::map<std::string, std::int64_t>;

  Error(ErrorCode code, const std::string& message, Witness witness = {})
      : std::runtime_error(message), code_(code), witness_(std::move(witness)) {}

  ErrorCode code() const noexcept { return code_; }
  const Witness& witness() const noexcept { return witness_; }

 private:
  ErrorCode code_;
  Witness witness_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message, Error::Witness witness = {});

// Guards an internal invariant; violation raises ErrorCode::Internal.
void ensure(bool condition, const char* what);

}  // namespace gdesc
