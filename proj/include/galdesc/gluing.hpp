#pragma once

#include "galdesc/report.hpp"
#include "galdesc/semilinear.hpp"

namespace gdesc {

/// Local system on the punctured disc: a space with the monodromy T of the
/// fixed loop generator.
class LocalSystemDisc {
 public:
  /// Throws NotSquare or Singular.
  explicit LocalSystemDisc(Matrix monodromy);

  const Matrix& monodromy() const noexcept { return t_; }
  const Field& field() const noexcept { return t_.field(); }
  std::size_t dim() const noexcept { return t_.rows(); }

 private:
  Matrix t_;
};

/// Unipotent nearby cycles: the generalized 1-eigenspace of T with the
/// monodromy written in its RREF basis.
struct NearbyCycles {
  Subspace psi;
  Matrix t_action;
};
NearbyCycles nearby_unipotent(const LocalSystemDisc& ls);

/// Gluing tuple: u : psi -> phi and v : phi -> psi in psi's RREF coordinates,
/// subject to v u = I - t on psi. No condition is placed on u v.
struct GluingData {
  LocalSystemDisc ls;
  std::size_t phi_dim = 0;
  Matrix u;
  Matrix v;
};

/// Both sides of the relation, as checked.
struct GluingCertificate {
  Matrix vu;
  Matrix one_minus_t;
};
/// Errors: DimensionMismatch on shapes, RelationViolated (witness row, col of
/// the first nonzero entry of v u - (I - t)).
GluingCertificate check_gluing(const GluingData& gd);

/// Morphism of gluing tuples: `a` on the local systems, `b` on phi.
class GluingMorphism {
 public:
  /// Throws InvalidGluingMorphism (witness "condition": 0 for a T = T' a,
  /// 1 for a(psi) ⊆ psi', 2 for b u = u' a, 3 for v' b = a v).
  GluingMorphism(GluingData source, GluingData target, Matrix a, Matrix b);

  const GluingData& source() const noexcept { return source_; }
  const GluingData& target() const noexcept { return target_; }
  const Matrix& a() const noexcept { return a_; }
  const Matrix& b() const noexcept { return b_; }
  /// a restricted to the nearby cycles, in RREF coordinates on both sides.
  const Matrix& a_on_psi() const noexcept { return a_psi_; }

 private:
  GluingData source_, target_;
  Matrix a_, b_, a_psi_;
};

struct GluingKernel {
  GluingData kernel;
  GluingMorphism inclusion;
};
GluingKernel kernel_gluing(const GluingMorphism& m);

/// Semilinear structures on V and phi. Validity asks A_g g(T) = T A_g, that
/// the induced action preserves psi, and that u, v are equivariant.
struct GluingGStructure {
  GStructure v;
  GStructure phi;
};

/// Induced structure on psi (in its RREF coordinates). Errors as for
/// check_gluing_gstructure.
GStructure psi_structure(const GluingData& gd, const GluingGStructure& s, const GaloisGroup& group);
/// Errors: NotCocycle / Singular (with "component": 0 for V, 1 for phi),
/// NotEquivariant (witness g and "map": 0 for T, 1 for psi, 2 for u, 3 for v).
void check_gluing_gstructure(const GluingData& gd, const GluingGStructure& s, const GaloisGroup& group);

struct ExtendedGluing {
  GluingData data;
  GluingGStructure structure;
};
/// Base change with the natural structure; asserts that nearby cycles and
/// their monodromy commute with the base change.
ExtendedGluing extend_gluing(const GluingData& gd, const GaloisGroup& group);

/// g applied entrywise to T, u and v; asserts psi(g(T)) = g(psi(T)).
GluingData conjugate_gluing(const GluingData& gd, const FieldAut& g);

struct GluingKForm {
  GluingData kdata;
  KForm v_form;
  KForm phi_form;
};
/// Errors: NotGalois, DescentFailed, NotEquivariant and the structure check errors.
GluingKForm descend_gluing(const GluingData& gd, const GluingGStructure& s, const GaloisGroup& group);
/// Base change of the descended tuple maps isomorphically onto gd through
/// the K-form bases, and that iso intertwines the natural and given structures.
Report verify_gluing_descent(const GluingData& gd, const GluingGStructure& s, const GluingKForm& form,
                             const GaloisGroup& group);

}  // namespace gdesc
