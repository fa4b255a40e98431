#include "galdesc/sheaf_descent.hpp"

#include <string>

namespace gdesc {

namespace {

std::int64_t idx(std::size_t i) { return static_cast<std::int64_t>(i); }

void require_structure_shape(const SheafGStructure& sgs, const GaloisGroup& group) {
  if (!(sgs.sheaf.field() == group.field())) fail(ErrorCode::FieldMismatch, "sheaf and group live over different fields");
  if (sgs.pointwise.size() != sgs.sheaf.size()) fail(ErrorCode::DimensionMismatch, "need one structure per point");
  for (std::size_t x = 0; x < sgs.sheaf.size(); ++x)
    if (sgs.pointwise[x].space.dim != sgs.sheaf.stalk_dim(x))
      fail(ErrorCode::DimensionMismatch, "structure at point " + std::to_string(x) + " does not match the stalk",
           {{"x", idx(x)}});
}

// Columns: coordinates of each K-section basis vector, embedded in L, in the L-section basis.
Matrix comparison_matrix(const Subspace& k_space, const Subspace& l_space, const Field& ext) {
  Matrix m(ext, l_space.dim(), k_space.dim());
  const Matrix embedded = embed_matrix(k_space.basis(), ext);
  for (std::size_t k = 0; k < k_space.dim(); ++k) {
    Vector c = l_space.coordinates(embedded.row(k));
    for (std::size_t r = 0; r < c.size(); ++r) m.set(r, k, c[r]);
  }
  return m;
}

}  // namespace

PosetSheaf base_change(const PosetSheaf& f, const Field& ext) {
  std::vector<Matrix> res;
  for (const auto& r : f.restrictions()) res.push_back(embed_matrix(r, ext));
  return PosetSheaf(f.poset(), ext, f.stalk_dims(), std::move(res));
}

SheafMorphism base_change(const SheafMorphism& m, const Field& ext) {
  std::vector<Matrix> comp;
  for (const auto& c : m.components()) comp.push_back(embed_matrix(c, ext));
  return SheafMorphism(base_change(m.source(), ext), base_change(m.target(), ext), std::move(comp));
}

SheafGStructure extend_sheaf(const PosetSheaf& g, const GaloisGroup& group) {
  SheafGStructure out{base_change(g, group.field()), {}};
  for (std::size_t x = 0; x < g.size(); ++x) out.pointwise.push_back(extend_scalars(g.stalk_dim(x), group));
  return out;
}

std::vector<CheckedIdentity> check_sheaf_gstructure(const SheafGStructure& sgs, const GaloisGroup& group) {
  require_structure_shape(sgs, group);
  std::vector<CheckedIdentity> checked;
  for (std::size_t x = 0; x < sgs.sheaf.size(); ++x) {
    try {
      for (auto& c : check_gstructure(sgs.pointwise[x], group).checked) {
        c.indices.insert(c.indices.begin(), x);
        checked.push_back(std::move(c));
      }
    } catch (const Error& e) {
      rethrow_with(e, {{"x", idx(x)}});
    }
  }
  const auto& covers = sgs.sheaf.poset()->covers();
  for (std::size_t i = 0; i < covers.size(); ++i) {
    auto [x, y] = covers[i];
    const Matrix& r = sgs.sheaf.res(i);
    for (std::size_t g = 0; g < group.size(); ++g) {
      if (!(r * sgs.pointwise[x].cocycle[g] == sgs.pointwise[y].cocycle[g] * conjugate_matrix(group[g], r)))
        fail(ErrorCode::NotSheafMorphism,
             "structure maps do not commute with restriction along (" + std::to_string(x) + "," + std::to_string(y) + ")",
             {{"x", idx(x)}, {"y", idx(y)}, {"g", idx(g)}});
      checked.push_back({"restriction", {x, y, g}});
    }
  }
  return checked;
}

SheafKForm descend_sheaf(const SheafGStructure& sgs, const GaloisGroup& group) {
  check_sheaf_gstructure(sgs, group);
  const Field& K = group.field().base();
  std::vector<KForm> forms;
  for (std::size_t x = 0; x < sgs.sheaf.size(); ++x) {
    try {
      forms.push_back(descend(sgs.pointwise[x], group));
    } catch (const Error& e) {
      rethrow_with(e, {{"x", idx(x)}});
    }
  }
  const auto& covers = sgs.sheaf.poset()->covers();
  std::vector<Matrix> res;
  for (std::size_t i = 0; i < covers.size(); ++i) {
    auto [x, y] = covers[i];
    const Matrix in_bases = transpose(forms[y].kbasis_inverse) * sgs.sheaf.res(i) * transpose(forms[x].kbasis);
    try {
      res.push_back(map_entries(in_bases, K, [&](const FieldElem& e) { return coerce_down(group, e); }));
    } catch (const Error& e) {
      fail(ErrorCode::NotFixedRestriction,
           std::string("internal invariant broken: descended restriction has a non-fixed entry (") + e.what() + ")",
           {{"x", idx(x)}, {"y", idx(y)}});
    }
  }
  PosetSheaf ksheaf(sgs.sheaf.poset(), K, sgs.sheaf.stalk_dims(), std::move(res));
  std::vector<Matrix> iso;
  for (const auto& f : forms) iso.push_back(transpose(f.kbasis));
  SheafMorphism comparison(base_change(ksheaf, group.field()), sgs.sheaf, std::move(iso));
  return SheafKForm{std::move(ksheaf), std::move(forms), std::move(comparison)};
}

SheafMorphism descend_sheaf_morphism(const SheafMorphism& f, const SheafGStructure& src, const SheafKForm& src_form,
                                     const SheafGStructure& dst, const SheafKForm& dst_form, const GaloisGroup& group) {
  if (!(f.source() == src.sheaf) || !(f.target() == dst.sheaf))
    fail(ErrorCode::DimensionMismatch, "morphism does not connect the given sheaves");
  std::vector<Matrix> comp;
  for (std::size_t x = 0; x < f.source().size(); ++x) {
    try {
      comp.push_back(descend_morphism_vect(f.at(x), src.pointwise[x], src_form.pointwise[x], dst.pointwise[x],
                                           dst_form.pointwise[x], group));
    } catch (const Error& e) {
      rethrow_with(e, {{"x", idx(x)}});
    }
  }
  return SheafMorphism(src_form.ksheaf, dst_form.ksheaf, std::move(comp));
}

SheafMorphism descend_sheaf_morphism(const SheafMorphism& f, const SheafGStructure& src, const SheafGStructure& dst,
                                     const GaloisGroup& group) {
  for (std::size_t x = 0; x < f.source().size(); ++x) {
    try {
      check_equivariant(f.at(x), src.pointwise[x], dst.pointwise[x], group);
    } catch (const Error& e) {
      rethrow_with(e, {{"x", idx(x)}});
    }
  }
  return descend_sheaf_morphism(f, src, descend_sheaf(src, group), dst, descend_sheaf(dst, group), group);
}

SheafGStructure twist_sheaf(const SheafGStructure& sgs, const std::vector<Matrix>& b, const GaloisGroup& group) {
  const PosetSheaf& f = sgs.sheaf;
  if (b.size() != f.size()) fail(ErrorCode::DimensionMismatch, "need one twisting matrix per point");
  std::vector<Matrix> b_inv;
  for (const auto& m : b) b_inv.push_back(inverse(m));
  const auto& covers = f.poset()->covers();
  std::vector<Matrix> res;
  for (std::size_t i = 0; i < covers.size(); ++i) res.push_back(b[covers[i].second] * f.res(i) * b_inv[covers[i].first]);
  SheafGStructure out{PosetSheaf(f.poset(), f.field(), f.stalk_dims(), std::move(res)), {}};
  for (std::size_t x = 0; x < f.size(); ++x) out.pointwise.push_back(twist(sgs.pointwise[x], b[x], group));
  return out;
}

Report verify_sheaf_descent(const SheafGStructure& sgs, const SheafKForm& form, const GaloisGroup& group) {
  Report report{"sheaf_descent_square", true, {}};
  for (std::size_t x = 0; x < sgs.sheaf.size(); ++x) {
    const Matrix& iso = form.iso.at(x);
    report.add("iso_invertible", is_invertible(iso), {{"x", idx(x)}});
    for (std::size_t g = 0; g < group.size(); ++g)
      report.add("square", sgs.pointwise[x].cocycle[g] * conjugate_matrix(group[g], iso) == iso, {{"x", idx(x)}, {"g", idx(g)}});
  }
  const PosetSheaf extended = base_change(form.ksheaf, group.field());
  const auto& covers = sgs.sheaf.poset()->covers();
  for (std::size_t i = 0; i < covers.size(); ++i) {
    auto [x, y] = covers[i];
    report.add("iso_commutes", sgs.sheaf.res(i) * form.iso.at(x) == form.iso.at(y) * extended.res(i),
               {{"x", idx(x)}, {"y", idx(y)}});
  }
  return report;
}

SheafMorphism pullback_comparison(const MonotoneMap& f, const PosetSheaf& g, const GaloisGroup& group) {
  const Field& L = group.field();
  const PosetSheaf lhs = base_change(pullback(f, g), L);
  const PosetSheaf rhs = pullback(f, base_change(g, L));
  if (lhs.stalk_dims() != rhs.stalk_dims()) fail(ErrorCode::DimensionMismatch, "pullback stalk dimensions differ");
  std::vector<Matrix> comp;
  for (std::size_t x = 0; x < lhs.size(); ++x) comp.push_back(Matrix::identity(L, lhs.stalk_dim(x)));
  return SheafMorphism(lhs, rhs, std::move(comp));
}

SheafMorphism pushforward_comparison(const MonotoneMap& f, const PosetSheaf& sheaf, const GaloisGroup& group) {
  const Field& L = group.field();
  const PosetSheaf lsheaf = base_change(sheaf, L);
  const auto& target = *f.target();
  std::vector<Matrix> comp;
  for (std::size_t y = 0; y < target.size(); ++y) {
    const PointSet pre = f.preimage(target.up_set(y));
    const Sections ks = sections(sheaf, pre);
    const Sections ls = sections(lsheaf, pre);
    if (ks.space.dim() != ls.space.dim())
      fail(ErrorCode::DimensionMismatch, "section dimensions differ over the preimage of point " + std::to_string(y),
           {{"y", idx(y)}});
    comp.push_back(comparison_matrix(ks.space, ls.space, L));
  }
  return SheafMorphism(base_change(pushforward(f, sheaf), L), pushforward(f, lsheaf), std::move(comp));
}

SheafMorphism hom_comparison(const PosetSheaf& f, const PosetSheaf& g, const GaloisGroup& group) {
  const Field& L = group.field();
  const PosetSheaf lf = base_change(f, L), lg = base_change(g, L);
  std::vector<Matrix> comp;
  for (std::size_t x = 0; x < f.size(); ++x) {
    const PointSet open = f.poset()->up_set(x);
    const Subspace ks = natural_maps(f, g, open).space;
    const Subspace ls = natural_maps(lf, lg, open).space;
    if (ks.dim() != ls.dim())
      fail(ErrorCode::DimensionMismatch, "Hom stalk dimensions differ at point " + std::to_string(x), {{"x", idx(x)}});
    comp.push_back(comparison_matrix(ks, ls, L));
  }
  return SheafMorphism(base_change(sheaf_hom(f, g), L), sheaf_hom(lf, lg), std::move(comp));
}

namespace {

template <typename Build>
void add_comparison(Report& report, Build build) {
  try {
    const SheafMorphism m = build();
    report.add("comparison_is_morphism", true);
    report.add("comparison_is_iso", m.is_isomorphism());
  } catch (const Error& e) {
    report.add("comparison_is_morphism", false, e.witness());
  }
}

}  // namespace

Report check_compat_pullback(const MonotoneMap& f, const PosetSheaf& g, const GaloisGroup& group) {
  Report report{"compat_pullback", true, {}};
  add_comparison(report, [&] { return pullback_comparison(f, g, group); });
  return report;
}

Report check_compat_pushforward(const MonotoneMap& f, const PosetSheaf& sheaf, const GaloisGroup& group) {
  Report report{"compat_pushforward", true, {}};
  add_comparison(report, [&] { return pushforward_comparison(f, sheaf, group); });
  return report;
}

Report check_compat_hom(const PosetSheaf& f, const PosetSheaf& g, const GaloisGroup& group) {
  Report report{"compat_hom", true, {}};
  const Field& L = group.field();
  const PosetSheaf lf = base_change(f, L), lg = base_change(g, L);

  const auto k_maps = natural_maps(f, g, f.poset()->all_points());
  const auto l_maps = natural_maps(lf, lg, lf.poset()->all_points());
  report.add("global_dims", k_maps.space.dim() == l_maps.space.dim(),
             {{"k_dim", idx(k_maps.space.dim())}, {"l_dim", idx(l_maps.space.dim())}});
  // base change of each K-basis morphism must be an L-morphism, and together a basis
  const Matrix embedded = embed_matrix(k_maps.space.basis(), L);
  bool all_morphisms = true;
  for (std::size_t k = 0; k < embedded.rows(); ++k) {
    try {
      morphism_from_vector(lf, lg, embedded.row(k));
    } catch (const Error&) {
      all_morphisms = false;
    }
  }
  report.add("base_changed_are_morphisms", all_morphisms);
  report.add("base_change_injective", rank(embedded) == embedded.rows());
  report.add("base_change_surjective", embedded.rows() == l_maps.space.dim());
  add_comparison(report, [&] { return hom_comparison(f, g, group); });
  return report;
}

Report check_locally_constant_descent(const SheafGStructure& sgs, const GaloisGroup& group) {
  Report report{"locally_constant_descent", true, {}};
  const SheafKForm form = descend_sheaf(sgs, group);
  const bool over_l = is_locally_constant(sgs.sheaf);
  const bool over_k = is_locally_constant(form.ksheaf);
  report.add("agree", over_l == over_k, {{"over_l", over_l}, {"over_k", over_k}});
  return report;
}

std::size_t equivariant_hom_kdim(const SheafGStructure& src, const SheafGStructure& dst, const GaloisGroup& group) {
  const PosetSheaf& f = src.sheaf;
  const PosetSheaf& g = dst.sheaf;
  const auto maps = natural_maps(f, g, f.poset()->all_points());
  const Matrix param = transpose(maps.space.basis());  // L-coefficients -> natural-map vectors
  const Matrix param_k = restricted_semilinear(param, group[GaloisGroup::identity()]);
  const Field& K = group.field().base();
  Matrix constraints(K, 0, param_k.cols());
  for (std::size_t e = 0; e < group.size(); ++e) {
    if (e == GaloisGroup::identity()) continue;
    Matrix action(group.field(), 0, 0);
    for (std::size_t x = 0; x < f.size(); ++x)
      action = direct_sum(action, kron(dst.pointwise[x].cocycle[e], transpose(inverse(src.pointwise[x].cocycle[e]))));
    constraints = vstack(constraints, restricted_semilinear(action, group[e]) * param_k - param_k);
  }
  return kernel(constraints).dim();
}

}  // namespace gdesc
