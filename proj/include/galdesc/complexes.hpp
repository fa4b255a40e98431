#pragma once

#include <vector>

#include "galdesc/sheaf_descent.hpp"

namespace gdesc {

/// Complex of sheaves F^min -> ... -> F^max with d∘d = 0. Terms outside the
/// stored range are zero sheaves on the same poset.
class BoundedComplex {
 public:
  /// diff[i] maps terms[i] to terms[i+1]. Throws NotChainMap (witness deg, x)
  /// when d∘d is nonzero.
  BoundedComplex(int min_deg, std::vector<PosetSheaf> terms, std::vector<SheafMorphism> diff);
  static BoundedComplex concentrated(int deg, const PosetSheaf& f);

  int min_deg() const noexcept { return min_deg_; }
  int max_deg() const noexcept { return min_deg_ + static_cast<int>(terms_.size()) - 1; }
  const PosetPtr& poset() const { return terms_.front().poset(); }
  const Field& field() const { return terms_.front().field(); }
  PosetSheaf term(int deg) const;
  /// d^deg : term(deg) -> term(deg + 1).
  SheafMorphism diff(int deg) const;

 private:
  bool in_range(int deg) const { return deg >= min_deg() && deg <= max_deg(); }
  int min_deg_;
  std::vector<PosetSheaf> terms_;
  std::vector<SheafMorphism> diff_;
};

/// Degreewise morphisms commuting with the differentials.
class ChainMap {
 public:
  /// comp[i] is the component in degree min_deg + i; missing degrees are zero.
  /// Throws NotChainMap (witness deg, x).
  ChainMap(BoundedComplex source, BoundedComplex target, int min_deg, std::vector<SheafMorphism> comp);
  static ChainMap identity(const BoundedComplex& c);

  const BoundedComplex& source() const noexcept { return source_; }
  const BoundedComplex& target() const noexcept { return target_; }
  SheafMorphism at(int deg) const;

 private:
  BoundedComplex source_, target_;
  int min_deg_;
  std::vector<SheafMorphism> comp_;
};

/// H^i as ker d^i / im d^{i-1}, classes represented by complements of the image.
Subquotient cohomology(const BoundedComplex& c, int deg);
PosetSheaf cohomology_sheaf(const BoundedComplex& c, int deg);
/// H^i(f) in the representative bases of both cohomology sheaves.
SheafMorphism induced_on_cohomology(const ChainMap& f, int deg);
/// Every H^i(f) is a pointwise isomorphism.
Report quasi_iso_check(const ChainMap& f);

struct Truncation {
  BoundedComplex complex;
  /// tau_{<=a} C -> C for truncate_le, C -> tau_{>=a} C for truncate_ge.
  ChainMap map;
};
Truncation truncate_le(const BoundedComplex& c, int a);
Truncation truncate_ge(const BoundedComplex& c, int a);

/// One sheaf structure per degree of the complex range, commuting with d.
struct StrictComplexGStructure {
  int min_deg = 0;
  std::vector<SheafGStructure> terms;
};

/// Errors: NotStrict (witness deg plus the failing identity's witnesses) when
/// a degree's cocycle identity or the commutation with d fails on the chain
/// level; shape errors as for sheaf structures.
void check_complex_gstructure(const BoundedComplex& c, const StrictComplexGStructure& s, const GaloisGroup& group);

struct ExtendedComplex {
  BoundedComplex complex;
  StrictComplexGStructure structure;
};
ExtendedComplex extend_complex(const BoundedComplex& c, const GaloisGroup& group);
BoundedComplex base_change(const BoundedComplex& c, const Field& ext);

struct ComplexKForm {
  BoundedComplex kcomplex;
  std::vector<SheafKForm> termwise;
  /// L ⊗ kcomplex -> original complex, degreewise the sheaf descent isos.
  ChainMap iso;
};
/// Termwise sheaf descent with morphism descent for the differentials.
ComplexKForm descend_complex_strict(const BoundedComplex& c, const StrictComplexGStructure& s, const GaloisGroup& group);

/// Structure induced on H^i by a strict structure on the complex.
SheafGStructure cohomology_structure(const BoundedComplex& c, const StrictComplexGStructure& s, int deg,
                                     const GaloisGroup& group);

/// Cross-check for a complex in two consecutive degrees: the cohomology of
/// the termwise descent against the descent of each cohomology sheaf. Check
/// names carry the route that produced them.
Report two_term_descent_via_cohomology(const BoundedComplex& c, const StrictComplexGStructure& s,
                                       const GaloisGroup& group);

}  // namespace gdesc
