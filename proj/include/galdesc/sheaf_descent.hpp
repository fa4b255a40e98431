#pragma once

#include <vector>

#include "galdesc/poset_sheaf.hpp"
#include "galdesc/report.hpp"
#include "galdesc/semilinear.hpp"

namespace gdesc {

/// Sheaf over L with a semilinear structure at every stalk. The structure
/// maps must commute with restriction: R_xy * A_g(x) = A_g(y) * g(R_xy).
struct SheafGStructure {
  PosetSheaf sheaf;
  std::vector<GStructure> pointwise;
};

/// Descended sheaf over K together with the comparison iso L ⊗ ksheaf -> sheaf,
/// whose component at x is transpose(pointwise[x].kbasis).
struct SheafKForm {
  PosetSheaf ksheaf;
  std::vector<KForm> pointwise;
  SheafMorphism iso;
};

/// Entrywise base change of a sheaf over K to ext.
PosetSheaf base_change(const PosetSheaf& f, const Field& ext);
SheafMorphism base_change(const SheafMorphism& m, const Field& ext);

/// L ⊗ G with its natural structure A_g(x) = I.
SheafGStructure extend_sheaf(const PosetSheaf& g, const GaloisGroup& group);

/// Pointwise cocycle checks plus compatibility with every restriction.
/// Errors: NotCocycle (x, g, h), Singular (x, g), NotSheafMorphism (x, y, g).
std::vector<CheckedIdentity> check_sheaf_gstructure(const SheafGStructure& sgs, const GaloisGroup& group);

/// Errors: DescentFailed (x), NotGalois, and the check errors. Raises
/// NotFixedRestriction (x, y) only if an internal invariant breaks.
SheafKForm descend_sheaf(const SheafGStructure& sgs, const GaloisGroup& group);

/// Errors: NotEquivariant (x, g).
SheafMorphism descend_sheaf_morphism(const SheafMorphism& f, const SheafGStructure& src, const SheafKForm& src_form,
                                     const SheafGStructure& dst, const SheafKForm& dst_form, const GaloisGroup& group);
SheafMorphism descend_sheaf_morphism(const SheafMorphism& f, const SheafGStructure& src, const SheafGStructure& dst,
                                     const GaloisGroup& group);

/// Transports a structure along pointwise isomorphisms b[x]:
/// res' = b_y res b_x^{-1}, A'_g(x) = b_x A_g(x) g(b_x)^{-1}.
SheafGStructure twist_sheaf(const SheafGStructure& sgs, const std::vector<Matrix>& b, const GaloisGroup& group);

/// Re-checks a descent result: the iso intertwines the natural structure on
/// L ⊗ ksheaf with the given one (A_g(x) g(iso_x) = iso_x for all x, g), is
/// pointwise invertible and commutes with restrictions.
Report verify_sheaf_descent(const SheafGStructure& sgs, const SheafKForm& form, const GaloisGroup& group);

/// Comparison morphism L ⊗ f^{-1} G -> f^{-1}(L ⊗ G) (identity components).
/// Throws NotSheafMorphism or DimensionMismatch if the two sides disagree.
SheafMorphism pullback_comparison(const MonotoneMap& f, const PosetSheaf& g, const GaloisGroup& group);
/// Comparison L ⊗ f_* F -> f_*(L ⊗ F) sending each base-changed section to
/// its coordinates in the L-section basis.
SheafMorphism pushforward_comparison(const MonotoneMap& f, const PosetSheaf& sheaf, const GaloisGroup& group);
/// Comparison L ⊗ Hom(F, G) -> Hom(L ⊗ F, L ⊗ G) of internal Homs.
SheafMorphism hom_comparison(const PosetSheaf& f, const PosetSheaf& g, const GaloisGroup& group);

/// L ⊗ f^{-1} G against f^{-1}(L ⊗ G).
Report check_compat_pullback(const MonotoneMap& f, const PosetSheaf& g, const GaloisGroup& group);
/// L ⊗ f_* F against f_*(L ⊗ F) through the base-change map on sections.
Report check_compat_pushforward(const MonotoneMap& f, const PosetSheaf& sheaf, const GaloisGroup& group);
/// Global Hom and sheaf Hom against their base changes.
Report check_compat_hom(const PosetSheaf& f, const PosetSheaf& g, const GaloisGroup& group);
/// Local constancy of the sheaf and of its descended form agree.
Report check_locally_constant_descent(const SheafGStructure& sgs, const GaloisGroup& group);

/// K-dimension of the equivariant morphisms src -> dst, computed on
/// restricted scalars from the natural-map constraints and the induced
/// action phi -> A^dst_g g(phi) (A^src_g)^{-1}.
std::size_t equivariant_hom_kdim(const SheafGStructure& src, const SheafGStructure& dst, const GaloisGroup& group);

}  // namespace gdesc
