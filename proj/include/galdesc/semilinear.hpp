#pragma once

#include <string>
#include <utility>
#include <vector>

#include "galdesc/galois_group.hpp"
#include "galdesc/linalg.hpp"

namespace gdesc {

/// Finite-dimensional vector space over an extension L (of its base K).
struct LSpace {
  Field ext;
  std::size_t dim = 0;
};

/// Semilinear G-structure in coordinates: sigma_g(v) = A_g * g(v), with
/// cocycle[i] the matrix A_g of the i-th group element. Composition g∘h
/// applies h first, and the cocycle condition reads A_{g∘h} = A_g * g(A_h).
struct GStructure {
  LSpace space;
  std::vector<Matrix> cocycle;
};

/// One checked identity of a certificate, e.g. {"cocycle", g, h}.
struct CheckedIdentity {
  std::string kind;
  std::vector<std::size_t> indices;
};

struct GStructureCertificate {
  std::vector<CheckedIdentity> checked;
};

/// K-form of an L-space with G-structure. Rows of `kbasis` are the
/// L-coordinates of a K-basis of the invariant vectors; `kbasis_inverse` is
/// the witness that they are L-independent.
struct KForm {
  std::size_t kdim = 0;
  Matrix kbasis;
  Matrix kbasis_inverse;
  /// RREF basis of the invariants in restricted-scalar coordinates.
  Subspace invariants;
};

/// g applied to every entry.
Matrix conjugate_matrix(const FieldAut& g, const Matrix& m);

/// Verifies A_id = I, invertibility and the cocycle condition on all pairs.
/// Errors: NotCocycle (witness g, h), Singular (witness g), DimensionMismatch.
GStructureCertificate check_gstructure(const GStructure& gs, const GaloisGroup& group);

/// L ⊗_K K^n with its natural structure A_g = I.
GStructure extend_scalars(std::size_t n, const GaloisGroup& group);

struct RestrictedScalars {
  std::size_t kdim = 0;
  /// K-matrix of multiplication by the j-th power-basis element of L, in the
  /// ordered K-basis e_i ⊗ beta_j (vector index major, field index minor).
  std::vector<Matrix> l_action;
};

RestrictedScalars restrict_scalars(const LSpace& v);

/// K-coordinates of an L-vector: entry i*d + j is the coefficient of beta_j in v_i.
Vector to_restricted(const Field& ext, const Vector& v);
Vector from_restricted(const Field& ext, const Vector& w);

/// K-linear matrix of the semilinear map v -> A * g(v) on restricted scalars.
Matrix restricted_semilinear(const Matrix& a, const FieldAut& g);

/// Invariant-kernel descent: intersects ker(sigma_g - id) over the group in
/// restricted-scalar coordinates. Errors: NotGalois, DescentFailed (witnesses
/// found/expected), plus everything check_gstructure raises.
KForm descend(const GStructure& gs, const GaloisGroup& group);

/// Matrix over K of an equivariant L-linear map between spaces with
/// G-structures, written in the K-form bases. Errors: NotEquivariant (witness g).
Matrix descend_morphism_vect(const Matrix& f, const GStructure& src, const GStructure& dst, const GaloisGroup& group);
Matrix descend_morphism_vect(const Matrix& f, const GStructure& src, const KForm& src_form, const GStructure& dst,
                             const KForm& dst_form, const GaloisGroup& group);

/// Throws NotEquivariant unless A_g^dst * g(f) = f * A_g^src for every g.
void check_equivariant(const Matrix& f, const GStructure& src, const GStructure& dst, const GaloisGroup& group);

/// dim_L Hom_L(L⊗K^n, L⊗K^m) computed as the rank of the base-changed
/// elementary K-basis, against dim_K Hom_K(K^n, K^m).
std::pair<std::size_t, std::size_t> hom_dim_check(std::size_t n, std::size_t m, const Field& ext);

/// The structure transported along an L-isomorphism B: A'_g = B A_g g(B)^{-1}.
GStructure twist(const GStructure& gs, const Matrix& b, const GaloisGroup& group);

}  // namespace gdesc
