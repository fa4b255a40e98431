#include "galdesc/semilinear.hpp"

#include "galdesc/error.hpp"

namespace gdesc {

namespace {

std::int64_t idx(std::size_t i) { return static_cast<std::int64_t>(i); }

void require_extension_of(const GStructure& gs, const GaloisGroup& group) {
  if (!(gs.space.ext == group.field()))
    fail(ErrorCode::FieldMismatch, "G-structure and group live over different fields");
  if (gs.cocycle.size() != group.size())
    fail(ErrorCode::DimensionMismatch, "cocycle must have one matrix per group element");
  for (const auto& a : gs.cocycle) {
    if (a.rows() != gs.space.dim || a.cols() != gs.space.dim)
      fail(ErrorCode::DimensionMismatch, "cocycle matrix has the wrong shape");
    if (!(a.field() == gs.space.ext)) fail(ErrorCode::FieldMismatch, "cocycle matrix over the wrong field");
  }
}

}  // namespace

Matrix conjugate_matrix(const FieldAut& g, const Matrix& m) {
  return map_entries(m, m.field(), [&](const FieldElem& x) { return g.apply(x); });
}

GStructureCertificate check_gstructure(const GStructure& gs, const GaloisGroup& group) {
  require_extension_of(gs, group);
  const Field& L = gs.space.ext;
  GStructureCertificate cert;
  if (!(gs.cocycle[GaloisGroup::identity()] == Matrix::identity(L, gs.space.dim)))
    fail(ErrorCode::NotCocycle, "matrix of the identity automorphism is not the identity", {{"g", 0}, {"h", 0}});
  cert.checked.push_back({"identity", {0}});
  for (std::size_t g = 0; g < group.size(); ++g) {
    if (!is_invertible(gs.cocycle[g])) fail(ErrorCode::Singular, "cocycle matrix is singular", {{"g", idx(g)}});
    cert.checked.push_back({"invertible", {g}});
  }
  for (std::size_t g = 0; g < group.size(); ++g) {
    for (std::size_t h = 0; h < group.size(); ++h) {
      const Matrix lhs = gs.cocycle[group.compose(g, h)];
      const Matrix rhs = gs.cocycle[g] * conjugate_matrix(group[g], gs.cocycle[h]);
      if (!(lhs == rhs))
        fail(ErrorCode::NotCocycle, "cocycle condition A_{gh} = A_g g(A_h) fails", {{"g", idx(g)}, {"h", idx(h)}});
      cert.checked.push_back({"cocycle", {g, h}});
    }
  }
  return cert;
}

GStructure extend_scalars(std::size_t n, const GaloisGroup& group) {
  GStructure gs{LSpace{group.field(), n}, {}};
  for (std::size_t g = 0; g < group.size(); ++g) gs.cocycle.push_back(Matrix::identity(group.field(), n));
  return gs;
}

Vector to_restricted(const Field& ext, const Vector& v) {
  Vector out;
  out.reserve(v.size() * static_cast<std::size_t>(ext.degree()));
  for (const auto& x : v)
    for (auto& c : ext.base_coeffs(x)) out.push_back(std::move(c));
  return out;
}

Vector from_restricted(const Field& ext, const Vector& w) {
  const std::size_t d = static_cast<std::size_t>(ext.degree());
  if (w.size() % d != 0) fail(ErrorCode::DimensionMismatch, "restricted vector length not a multiple of the degree");
  Vector out;
  for (std::size_t i = 0; i < w.size() / d; ++i)
    out.push_back(ext.from_base_coeffs(std::span<const FieldElem>(w.data() + i * d, d)));
  return out;
}

RestrictedScalars restrict_scalars(const LSpace& v) {
  const Field& L = v.ext;
  const Field& K = L.base();
  const std::size_t d = static_cast<std::size_t>(L.degree());
  RestrictedScalars out;
  out.kdim = v.dim * d;
  for (std::size_t k = 0; k < d; ++k) {
    const FieldElem beta_k = L.pow(L.generator(), k);
    Matrix m(K, out.kdim, out.kdim);
    for (std::size_t i = 0; i < v.dim; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        auto coeffs = L.base_coeffs(L.mul(beta_k, L.pow(L.generator(), j)));
        for (std::size_t r = 0; r < d; ++r) m.set(i * d + r, i * d + j, coeffs[r]);
      }
    }
    out.l_action.push_back(std::move(m));
  }
  return out;
}

Matrix restricted_semilinear(const Matrix& a, const FieldAut& g) {
  const Field& L = a.field();
  const std::size_t n = a.cols();
  const std::size_t d = static_cast<std::size_t>(L.degree());
  Matrix out(L.base(), a.rows() * d, n * d);
  for (std::size_t j = 0; j < d; ++j) {
    const FieldElem image_beta = g.apply(L.pow(L.generator(), j));
    for (std::size_t i = 0; i < n; ++i) {
      Vector column = a.col(i);
      for (auto& x : column) x = L.mul(x, image_beta);
      Vector k_column = to_restricted(L, column);
      for (std::size_t r = 0; r < k_column.size(); ++r) out.set(r, i * d + j, k_column[r]);
    }
  }
  return out;
}

KForm descend(const GStructure& gs, const GaloisGroup& group) {
  check_gstructure(gs, group);
  if (!group.is_galois())
    fail(ErrorCode::NotGalois, "descent needs a Galois extension: |G| = " + std::to_string(group.size()) +
                                   " but the degree is " + std::to_string(group.field().degree()));
  const Field& L = gs.space.ext;
  const Field& K = L.base();
  const std::size_t n = gs.space.dim;
  const std::size_t kdim = n * static_cast<std::size_t>(L.degree());

  Matrix constraints(K, 0, kdim);
  const Matrix id = Matrix::identity(K, kdim);
  for (std::size_t g = 0; g < group.size(); ++g) {
    if (g == GaloisGroup::identity()) continue;
    constraints = vstack(constraints, restricted_semilinear(gs.cocycle[g], group[g]) - id);
  }
  Subspace invariants = kernel(constraints);
  if (invariants.dim() != n)
    fail(ErrorCode::DescentFailed, "invariant subspace has the wrong dimension",
         {{"found", idx(invariants.dim())}, {"expected", idx(n)}});

  std::vector<Vector> rows;
  for (std::size_t i = 0; i < n; ++i) rows.push_back(from_restricted(L, invariants.basis().row(i)));
  Matrix kbasis = Matrix::from_rows(L, n, rows);
  if (!is_invertible(kbasis))
    fail(ErrorCode::DescentFailed, "invariant basis is not L-independent", {{"found", idx(rank(kbasis))}, {"expected", idx(n)}});
  Matrix kinv = inverse(kbasis);
  return KForm{n, std::move(kbasis), std::move(kinv), std::move(invariants)};
}

void check_equivariant(const Matrix& f, const GStructure& src, const GStructure& dst, const GaloisGroup& group) {
  if (f.rows() != dst.space.dim || f.cols() != src.space.dim)
    fail(ErrorCode::DimensionMismatch, "morphism shape does not match the structures");
  for (std::size_t g = 0; g < group.size(); ++g) {
    if (!(dst.cocycle[g] * conjugate_matrix(group[g], f) == f * src.cocycle[g]))
      fail(ErrorCode::NotEquivariant, "map does not commute with the G-structures", {{"g", idx(g)}});
  }
}

Matrix descend_morphism_vect(const Matrix& f, const GStructure& src, const KForm& src_form, const GStructure& dst,
                             const KForm& dst_form, const GaloisGroup& group) {
  check_equivariant(f, src, dst, group);
  const Matrix in_bases = transpose(dst_form.kbasis_inverse) * f * transpose(src_form.kbasis);
  const Field& K = group.field().base();
  return map_entries(in_bases, K, [&](const FieldElem& x) { return coerce_down(group, x); });
}

Matrix descend_morphism_vect(const Matrix& f, const GStructure& src, const GStructure& dst, const GaloisGroup& group) {
  check_equivariant(f, src, dst, group);
  return descend_morphism_vect(f, src, descend(src, group), dst, descend(dst, group), group);
}

std::pair<std::size_t, std::size_t> hom_dim_check(std::size_t n, std::size_t m, const Field& ext) {
  const Field& K = ext.base();
  // elementary K-basis of Hom_K(K^n, K^m), flattened row-major
  Matrix k_basis(K, n * m, n * m);
  for (std::size_t i = 0; i < n * m; ++i) k_basis.set(i, i, K.one());
  const std::size_t rhs = rank(k_basis);
  const std::size_t lhs = rank(embed_matrix(k_basis, ext));
  return {lhs, rhs};
}

GStructure twist(const GStructure& gs, const Matrix& b, const GaloisGroup& group) {
  GStructure out{gs.space, {}};
  for (std::size_t g = 0; g < group.size(); ++g)
    out.cocycle.push_back(b * gs.cocycle[g] * inverse(conjugate_matrix(group[g], b)));
  return out;
}

}  // namespace gdesc
