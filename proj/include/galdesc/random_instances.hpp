#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "galdesc/complexes.hpp"
#include "galdesc/gluing.hpp"

namespace gdesc {

/// A Galois extension used by the randomized suites.
struct SuiteField {
  std::string name;
  Field ext;
  GaloisGroup group;
};

/// F_4/F_2, F_8/F_2, F_9/F_3, Q(i)/Q and Q[x]/(x^2+x+1)/Q, in that order.
std::vector<SuiteField> suite_fields();
/// Looks up one of the suite fields by name ("F4", "F8", "F9", "Qi", "Qw").
SuiteField suite_field(const std::string& name);

/// Seeded generator for random instances. Each instance should get its own
/// Random so suites stay reproducible under any scheduling.
class Random {
 public:
  explicit Random(std::uint64_t seed) : engine_(seed) {}

  std::size_t below(std::size_t n);
  std::size_t between(std::size_t lo, std::size_t hi);
  bool chance(double p);

  /// Uniform over finite fields, small integer coordinates in [-3, 3] over Q.
  FieldElem element(const Field& f);
  FieldElem nonzero_element(const Field& f);
  Matrix matrix(const Field& f, std::size_t rows, std::size_t cols);
  Matrix invertible(const Field& f, std::size_t n);

  /// B-twist of the natural structure on L^n.
  GStructure gstructure(const GaloisGroup& group, std::size_t n);
  /// Random partial order on 1..max_points points with shuffled labels.
  PosetPtr poset(std::size_t max_points);
  MonotoneMap monotone_map(const PosetPtr& source, const PosetPtr& target);
  /// Sum of a quotient-type and a sub-type sheaf of a constant sheaf,
  /// transported by random pointwise base changes; stalks of dim <= max_dim.
  PosetSheaf sheaf(const PosetPtr& poset, const Field& f, std::size_t max_dim = 3);
  /// Random K-linear combination of a basis of Hom(f, g).
  SheafMorphism morphism(const PosetSheaf& f, const PosetSheaf& g);
  /// Twist of the natural structure on a random base-changed sheaf.
  SheafGStructure sheaf_gstructure(const PosetPtr& poset, const GaloisGroup& group, std::size_t max_dim = 3);
  /// Two or three terms: a random morphism, optionally followed by its cokernel.
  BoundedComplex complex(const PosetPtr& poset, const Field& f, std::size_t max_dim = 2);
  /// Random monodromy with a nontrivial unipotent part, plus u, v solving the relation.
  GluingData gluing(const Field& f, std::size_t max_dim = 3);

 private:
  std::mt19937_64 engine_;
};

/// Transports a strict structure along termwise pointwise isomorphisms b[deg][x].
ExtendedComplex twist_complex(const ExtendedComplex& c, const std::vector<std::vector<Matrix>>& b,
                              const GaloisGroup& group);
/// Transports a gluing structure along isomorphisms bv of V and bphi of phi.
ExtendedGluing twist_gluing(const ExtendedGluing& g, const Matrix& bv, const Matrix& bphi, const GaloisGroup& group);

}  // namespace gdesc
