#include "galdesc/gluing.hpp"

#include <string>

namespace gdesc {

namespace {

std::int64_t idx(std::size_t i) { return static_cast<std::int64_t>(i); }

Matrix conj(const FieldAut& g, const Matrix& m) { return conjugate_matrix(g, m); }

// Coordinates of `vectors` (as columns) in a subspace basis.
Matrix coordinates_of_columns(const Subspace& s, const Matrix& vectors) {
  Matrix out(vectors.field(), s.dim(), vectors.cols());
  for (std::size_t k = 0; k < vectors.cols(); ++k) {
    Vector c = s.coordinates(vectors.col(k));
    for (std::size_t r = 0; r < c.size(); ++r) out.set(r, k, c[r]);
  }
  return out;
}

Matrix coerce_matrix(const Matrix& m, const GaloisGroup& group) {
  return map_entries(m, group.field().base(), [&](const FieldElem& e) { return coerce_down(group, e); });
}

}  // namespace

LocalSystemDisc::LocalSystemDisc(Matrix monodromy) : t_(std::move(monodromy)) {
  if (!t_.is_square()) fail(ErrorCode::NotSquare, "monodromy must be square");
  if (!is_invertible(t_)) fail(ErrorCode::Singular, "monodromy must be invertible");
}

NearbyCycles nearby_unipotent(const LocalSystemDisc& ls) {
  const Matrix& t = ls.monodromy();
  Subspace psi = generalized_eigenspace(t, ls.field().one(), ls.dim());
  Matrix action = restrict_map(t, psi, psi);
  return NearbyCycles{std::move(psi), std::move(action)};
}

GluingCertificate check_gluing(const GluingData& gd) {
  const NearbyCycles nc = nearby_unipotent(gd.ls);
  const std::size_t m = nc.psi.dim();
  if (gd.u.rows() != gd.phi_dim || gd.u.cols() != m)
    fail(ErrorCode::DimensionMismatch, "u must map psi (dim " + std::to_string(m) + ") to phi");
  if (gd.v.rows() != m || gd.v.cols() != gd.phi_dim) fail(ErrorCode::DimensionMismatch, "v must map phi to psi");
  if (!(gd.u.field() == gd.ls.field()) || !(gd.v.field() == gd.ls.field()))
    fail(ErrorCode::FieldMismatch, "gluing maps over a different field");
  GluingCertificate cert{gd.v * gd.u, Matrix::identity(gd.ls.field(), m) - nc.t_action};
  const Matrix diff = cert.vu - cert.one_minus_t;
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < m; ++c)
      if (!gd.ls.field().is_zero(diff(r, c)))
        fail(ErrorCode::RelationViolated,
             "v u differs from I - t at (" + std::to_string(r) + "," + std::to_string(c) + ") by " +
                 gd.ls.field().format(diff(r, c)),
             {{"row", idx(r)}, {"col", idx(c)}});
  return cert;
}

GluingMorphism::GluingMorphism(GluingData source, GluingData target, Matrix a, Matrix b)
    : source_(std::move(source)), target_(std::move(target)), a_(std::move(a)), b_(std::move(b)), a_psi_(a_) {
  const auto bad = [](int condition, const std::string& what) {
    fail(ErrorCode::InvalidGluingMorphism, what, {{"condition", condition}});
  };
  if (a_.rows() != target_.ls.dim() || a_.cols() != source_.ls.dim() || b_.rows() != target_.phi_dim ||
      b_.cols() != source_.phi_dim)
    fail(ErrorCode::DimensionMismatch, "gluing morphism components have the wrong shape");
  if (!(a_ * source_.ls.monodromy() == target_.ls.monodromy() * a_)) bad(0, "a does not intertwine the monodromies");
  const NearbyCycles ps = nearby_unipotent(source_.ls), pt = nearby_unipotent(target_.ls);
  try {
    a_psi_ = restrict_map(a_, ps.psi, pt.psi);
  } catch (const Error&) {
    bad(1, "a does not map nearby cycles into nearby cycles");
  }
  if (!(b_ * source_.u == target_.u * a_psi_)) bad(2, "b u differs from u' a");
  if (!(target_.v * b_ == a_psi_ * source_.v)) bad(3, "v' b differs from a v");
}

GluingKernel kernel_gluing(const GluingMorphism& m) {
  const GluingData& src = m.source();
  const Subspace ker_a = kernel(m.a());
  const Subspace ker_b = kernel(m.b());
  const Matrix incl_v = ker_a.inclusion();
  const Matrix incl_phi = ker_b.inclusion();
  const LocalSystemDisc kls(restrict_map(src.ls.monodromy(), ker_a, ker_a));
  const NearbyCycles src_nc = nearby_unipotent(src.ls);
  const NearbyCycles ker_nc = nearby_unipotent(kls);

  // psi of the kernel, as vectors of V, then in the source psi coordinates
  const Matrix ker_psi_in_v = incl_v * ker_nc.psi.inclusion();
  const Matrix ker_psi_in_src_psi = coordinates_of_columns(src_nc.psi, ker_psi_in_v);
  Matrix u = coordinates_of_columns(ker_b, src.u * ker_psi_in_src_psi);

  const Matrix v_in_v = src_nc.psi.inclusion() * src.v * incl_phi;
  Matrix v = coordinates_of_columns(ker_nc.psi, coordinates_of_columns(ker_a, v_in_v));

  GluingData kernel_data{kls, ker_b.dim(), std::move(u), std::move(v)};
  try {
    check_gluing(kernel_data);
  } catch (const Error& e) {
    fail(ErrorCode::Internal, std::string("kernel tuple breaks the gluing relation: ") + e.what());
  }
  GluingMorphism inclusion(kernel_data, src, incl_v, incl_phi);
  return GluingKernel{std::move(kernel_data), std::move(inclusion)};
}

GStructure psi_structure(const GluingData& gd, const GluingGStructure& s, const GaloisGroup& group) {
  const NearbyCycles nc = nearby_unipotent(gd.ls);
  GStructure out{LSpace{group.field(), nc.psi.dim()}, {}};
  const Matrix basis = nc.psi.inclusion();
  for (std::size_t g = 0; g < group.size(); ++g) {
    try {
      out.cocycle.push_back(coordinates_of_columns(nc.psi, s.v.cocycle[g] * conj(group[g], basis)));
    } catch (const Error&) {
      fail(ErrorCode::NotEquivariant, "structure does not preserve the nearby cycles", {{"g", idx(g)}, {"map", 1}});
    }
  }
  return out;
}

void check_gluing_gstructure(const GluingData& gd, const GluingGStructure& s, const GaloisGroup& group) {
  if (s.v.space.dim != gd.ls.dim() || s.phi.space.dim != gd.phi_dim)
    fail(ErrorCode::DimensionMismatch, "structure dimensions do not match the gluing tuple");
  try {
    check_gstructure(s.v, group);
  } catch (const Error& e) {
    rethrow_with(e, {{"component", 0}});
  }
  try {
    check_gstructure(s.phi, group);
  } catch (const Error& e) {
    rethrow_with(e, {{"component", 1}});
  }
  const Matrix& t = gd.ls.monodromy();
  for (std::size_t g = 0; g < group.size(); ++g)
    if (!(s.v.cocycle[g] * conj(group[g], t) == t * s.v.cocycle[g]))
      fail(ErrorCode::NotEquivariant, "structure does not commute with the monodromy", {{"g", idx(g)}, {"map", 0}});
  const GStructure p = psi_structure(gd, s, group);
  for (std::size_t g = 0; g < group.size(); ++g) {
    if (!(s.phi.cocycle[g] * conj(group[g], gd.u) == gd.u * p.cocycle[g]))
      fail(ErrorCode::NotEquivariant, "u is not equivariant", {{"g", idx(g)}, {"map", 2}});
    if (!(p.cocycle[g] * conj(group[g], gd.v) == gd.v * s.phi.cocycle[g]))
      fail(ErrorCode::NotEquivariant, "v is not equivariant", {{"g", idx(g)}, {"map", 3}});
  }
}

ExtendedGluing extend_gluing(const GluingData& gd, const GaloisGroup& group) {
  const Field& L = group.field();
  GluingData out{LocalSystemDisc(embed_matrix(gd.ls.monodromy(), L)), gd.phi_dim, embed_matrix(gd.u, L),
                 embed_matrix(gd.v, L)};
  const NearbyCycles k_nc = nearby_unipotent(gd.ls);
  const NearbyCycles l_nc = nearby_unipotent(out.ls);
  ensure(Subspace::span_of_rows(embed_matrix(k_nc.psi.basis(), L)) == l_nc.psi,
         "nearby cycles do not commute with extension of scalars");
  ensure(embed_matrix(k_nc.t_action, L) == l_nc.t_action, "monodromy on nearby cycles changed under extension");
  GluingGStructure s{extend_scalars(gd.ls.dim(), group), extend_scalars(gd.phi_dim, group)};
  return ExtendedGluing{std::move(out), std::move(s)};
}

GluingData conjugate_gluing(const GluingData& gd, const FieldAut& g) {
  GluingData out{LocalSystemDisc(conj(g, gd.ls.monodromy())), gd.phi_dim, conj(g, gd.u), conj(g, gd.v)};
  const NearbyCycles before = nearby_unipotent(gd.ls);
  const NearbyCycles after = nearby_unipotent(out.ls);
  ensure(Subspace::span_of_rows(conj(g, before.psi.basis())) == after.psi, "nearby cycles do not commute with conjugation");
  ensure(conj(g, before.t_action) == after.t_action, "monodromy on nearby cycles changed under conjugation");
  return out;
}

GluingKForm descend_gluing(const GluingData& gd, const GluingGStructure& s, const GaloisGroup& group) {
  check_gluing(gd);
  check_gluing_gstructure(gd, s, group);
  KForm v_form = descend(s.v, group);
  KForm phi_form = descend(s.phi, group);
  const Matrix t_k = descend_morphism_vect(gd.ls.monodromy(), s.v, v_form, s.v, v_form, group);
  const LocalSystemDisc kls(t_k);
  const NearbyCycles l_nc = nearby_unipotent(gd.ls);
  const NearbyCycles k_nc = nearby_unipotent(kls);

  // K-vectors of V become L-vectors through the K-form basis
  const Matrix bv = transpose(v_form.kbasis);
  const Matrix k_psi_in_l = embed_matrix(k_nc.psi.inclusion(), group.field());
  const Matrix u_l = gd.u * coordinates_of_columns(l_nc.psi, bv * k_psi_in_l);
  Matrix u_k = coerce_matrix(transpose(phi_form.kbasis_inverse) * u_l, group);

  const Matrix v_in_v = transpose(v_form.kbasis_inverse) * l_nc.psi.inclusion() * gd.v * transpose(phi_form.kbasis);
  Matrix v_k = coordinates_of_columns(k_nc.psi, coerce_matrix(v_in_v, group));

  GluingData kdata{kls, gd.phi_dim, std::move(u_k), std::move(v_k)};
  try {
    check_gluing(kdata);
  } catch (const Error& e) {
    fail(ErrorCode::Internal, std::string("descended tuple breaks the gluing relation: ") + e.what());
  }
  return GluingKForm{std::move(kdata), std::move(v_form), std::move(phi_form)};
}

Report verify_gluing_descent(const GluingData& gd, const GluingGStructure& s, const GluingKForm& form,
                             const GaloisGroup& group) {
  Report report{"gluing_descent", true, {}};
  report.add("relation_over_base", true);
  try {
    check_gluing(form.kdata);
  } catch (const Error& e) {
    report.add("relation_over_base", false, e.witness());
  }
  const ExtendedGluing ext = extend_gluing(form.kdata, group);
  const Matrix a = transpose(form.v_form.kbasis);
  const Matrix b = transpose(form.phi_form.kbasis);
  try {
    GluingMorphism iso(ext.data, gd, a, b);
    report.add("iso_is_gluing_morphism", true);
    report.add("iso_invertible", is_invertible(a) && is_invertible(b));
  } catch (const Error& e) {
    report.add("iso_is_gluing_morphism", false, e.witness());
  }
  for (std::size_t g = 0; g < group.size(); ++g) {
    report.add("square_v", s.v.cocycle[g] * conj(group[g], a) == a, {{"g", idx(g)}});
    report.add("square_phi", s.phi.cocycle[g] * conj(group[g], b) == b, {{"g", idx(g)}});
  }
  return report;
}

}  // namespace gdesc
