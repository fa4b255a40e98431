#include "galdesc/error.hpp"

namespace gdesc {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Reducible: return "Reducible";
    case ErrorCode::UnverifiableIrreducibility: return "UnverifiableIrreducibility";
    case ErrorCode::HintNotRoot: return "HintNotRoot";
    case ErrorCode::NotClosed: return "NotClosed";
    case ErrorCode::NotFixed: return "NotFixed";
    case ErrorCode::NotConstant: return "NotConstant";
    case ErrorCode::NoSolution: return "NoSolution";
    case ErrorCode::NotCocycle: return "NotCocycle";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::DescentFailed: return "DescentFailed";
    case ErrorCode::NotEquivariant: return "NotEquivariant";
    case ErrorCode::NotSheafMorphism: return "NotSheafMorphism";
    case ErrorCode::NotFixedRestriction: return "NotFixedRestriction";
    case ErrorCode::NotChainMap: return "NotChainMap";
    case ErrorCode::NotStrict: return "NotStrict";
    case ErrorCode::RelationViolated: return "RelationViolated";
    case ErrorCode::InvalidGluingMorphism: return "InvalidGluingMorphism";
    case ErrorCode::NotGalois: return "NotGalois";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::TowerTooDeep: return "TowerTooDeep";
    case ErrorCode::NotPartialOrder: return "NotPartialOrder";
    case ErrorCode::NotMonotone: return "NotMonotone";
    case ErrorCode::NotUpSet: return "NotUpSet";
    case ErrorCode::NotLocallyClosed: return "NotLocallyClosed";
    case ErrorCode::NotPathIndependent: return "NotPathIndependent";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

void fail(ErrorCode code, const std::string& message, Error::Witness witness) {
  throw Error(code, message, std::move(witness));
}

void ensure(bool condition, const char* what) {
  if (!condition) throw Error(ErrorCode::Internal, std::string("internal invariant violated: ") + what);
}

}  // namespace gdesc
