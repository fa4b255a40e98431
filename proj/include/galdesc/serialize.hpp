#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "galdesc/complexes.hpp"
#include "galdesc/gluing.hpp"

namespace gdesc {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// Read position inside a document, reported as a JSON pointer in SchemaError.
class JsonPath {
 public:
  JsonPath() = default;
  JsonPath operator/(const std::string& key) const;
  JsonPath operator/(std::size_t index) const;
  const std::string& str() const noexcept { return ptr_; }

  [[noreturn]] void error(const std::string& what) const;

 private:
  std::string ptr_;
};

/// Checked accessors: each raises SchemaError at `path` on a missing key or wrong type.
const Json& member(const Json& j, const std::string& key, const JsonPath& path);
std::size_t get_size(const Json& j, const JsonPath& path);
std::int64_t get_int(const Json& j, const JsonPath& path);
std::string get_string(const Json& j, const JsonPath& path);
const Json& get_array(const Json& j, const JsonPath& path);

/// Rejects documents whose schema_version is missing or unknown.
void require_schema_version(const Json& doc, const JsonPath& path = {});

/// Field plus its verified automorphism group (extensions only).
struct FieldSpec {
  Field field;
  std::vector<FieldElem> hints;
};

Json field_to_json(const Field& f, const std::vector<FieldElem>& hints = {});
FieldSpec field_from_json(const Json& j, const JsonPath& path, bool assert_irreducible);
/// Images of the generator under each group element, in index order.
Json group_to_json(const GaloisGroup& group);

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j, const Field& f, const JsonPath& path);
Json vector_to_json(const Field& f, const Vector& v);

/// Cocycle as [{"aut": image, "matrix": A}] in group order. On input the
/// identity may be omitted (it defaults to I) and entries may come in any order.
Json cocycle_to_json(const GStructure& gs, const GaloisGroup& group);
GStructure cocycle_from_json(const Json& j, std::size_t dim, const GaloisGroup& group, const JsonPath& path);
Json gstructure_to_json(const GStructure& gs, const GaloisGroup& group);
GStructure gstructure_from_json(const Json& j, const GaloisGroup& group, const JsonPath& path);

Json poset_to_json(const FinPoset& p);
PosetPtr poset_from_json(const Json& j, const JsonPath& path);
Json monotone_map_to_json(const MonotoneMap& f);
MonotoneMap monotone_map_from_json(const Json& j, const JsonPath& path);

Json sheaf_to_json(const PosetSheaf& f);
PosetSheaf sheaf_from_json(const Json& j, const Field& field, const JsonPath& path);
Json morphism_to_json(const SheafMorphism& m);
/// Components per point, as a list of matrices.
SheafMorphism morphism_from_json(const Json& j, const PosetSheaf& source, const PosetSheaf& target, const JsonPath& path);
/// Per-point cocycles, one entry per point.
Json sheaf_structure_to_json(const SheafGStructure& s, const GaloisGroup& group);
SheafGStructure sheaf_structure_from_json(const Json& j, const PosetSheaf& sheaf, const GaloisGroup& group,
                                          const JsonPath& path);

Json complex_to_json(const BoundedComplex& c);
BoundedComplex complex_from_json(const Json& j, const Field& field, const JsonPath& path);
Json complex_structure_to_json(const StrictComplexGStructure& s, const GaloisGroup& group);
StrictComplexGStructure complex_structure_from_json(const Json& j, const BoundedComplex& c, const GaloisGroup& group,
                                                    const JsonPath& path);

Json gluing_to_json(const GluingData& g);
GluingData gluing_from_json(const Json& j, const Field& field, const JsonPath& path);
Json gluing_structure_to_json(const GluingGStructure& s, const GaloisGroup& group);
GluingGStructure gluing_structure_from_json(const Json& j, const GluingData& g, const GaloisGroup& group,
                                            const JsonPath& path);

Json report_to_json(const Report& r);

/// Canonical text of a document: sorted keys, two-space indent, trailing newline.
std::string canonical_dump(const Json& j);
/// 64-bit FNV-1a of a string, used for instance fingerprints.
std::uint64_t fnv1a(const std::string& s, std::uint64_t h = 0xcbf29ce484222325ULL);

}  // namespace gdesc
