#include "galdesc/complexes.hpp"

#include <algorithm>
#include <string>

namespace gdesc {

namespace {

std::int64_t idx(std::size_t i) { return static_cast<std::int64_t>(i); }

BoundedComplex zero_complex(const PosetPtr& poset, const Field& field, int deg) {
  return BoundedComplex::concentrated(deg, PosetSheaf::zero(poset, field));
}

}  // namespace

BoundedComplex::BoundedComplex(int min_deg, std::vector<PosetSheaf> terms, std::vector<SheafMorphism> diff)
    : min_deg_(min_deg), terms_(std::move(terms)), diff_(std::move(diff)) {
  if (terms_.empty()) fail(ErrorCode::DimensionMismatch, "a complex needs at least one term");
  if (diff_.size() + 1 != terms_.size())
    fail(ErrorCode::DimensionMismatch, "need one differential between each pair of consecutive terms");
  for (std::size_t i = 0; i < diff_.size(); ++i) {
    if (!(diff_[i].source() == terms_[i]) || !(diff_[i].target() == terms_[i + 1]))
      fail(ErrorCode::DimensionMismatch, "differential " + std::to_string(min_deg_ + static_cast<int>(i)) +
                                             " does not connect consecutive terms");
  }
  for (std::size_t i = 0; i + 1 < diff_.size(); ++i)
    for (std::size_t x = 0; x < terms_[i].size(); ++x)
      if (!(diff_[i + 1].at(x) * diff_[i].at(x)).is_zero())
        fail(ErrorCode::NotChainMap, "d∘d is nonzero", {{"deg", min_deg_ + static_cast<int>(i)}, {"x", idx(x)}});
}

BoundedComplex BoundedComplex::concentrated(int deg, const PosetSheaf& f) { return BoundedComplex(deg, {f}, {}); }

PosetSheaf BoundedComplex::term(int deg) const {
  if (in_range(deg)) return terms_[static_cast<std::size_t>(deg - min_deg_)];
  return PosetSheaf::zero(poset(), field());
}

SheafMorphism BoundedComplex::diff(int deg) const {
  if (in_range(deg) && in_range(deg + 1)) return diff_[static_cast<std::size_t>(deg - min_deg_)];
  return SheafMorphism::zero(term(deg), term(deg + 1));
}

ChainMap::ChainMap(BoundedComplex source, BoundedComplex target, int min_deg, std::vector<SheafMorphism> comp)
    : source_(std::move(source)), target_(std::move(target)), min_deg_(min_deg), comp_(std::move(comp)) {
  if (!(*source_.poset() == *target_.poset())) fail(ErrorCode::DimensionMismatch, "complexes live on different posets");
  for (std::size_t i = 0; i < comp_.size(); ++i) {
    const int d = min_deg_ + static_cast<int>(i);
    if (!(comp_[i].source() == source_.term(d)) || !(comp_[i].target() == target_.term(d)))
      fail(ErrorCode::DimensionMismatch, "chain map component in degree " + std::to_string(d) + " has the wrong ends");
  }
  const int lo = std::min({source_.min_deg(), target_.min_deg(), min_deg_}) - 1;
  const int hi = std::max({source_.max_deg(), target_.max_deg(), min_deg_ + static_cast<int>(comp_.size()) - 1});
  for (int d = lo; d <= hi; ++d) {
    const SheafMorphism f0 = at(d), f1 = at(d + 1), ds = source_.diff(d), dt = target_.diff(d);
    for (std::size_t x = 0; x < source_.poset()->size(); ++x)
      if (!(dt.at(x) * f0.at(x) == f1.at(x) * ds.at(x)))
        fail(ErrorCode::NotChainMap, "map does not commute with the differentials", {{"deg", d}, {"x", idx(x)}});
  }
}

ChainMap ChainMap::identity(const BoundedComplex& c) {
  std::vector<SheafMorphism> comp;
  for (int d = c.min_deg(); d <= c.max_deg(); ++d) comp.push_back(SheafMorphism::identity(c.term(d)));
  return ChainMap(c, c, c.min_deg(), std::move(comp));
}

SheafMorphism ChainMap::at(int deg) const {
  if (deg >= min_deg_ && deg < min_deg_ + static_cast<int>(comp_.size()))
    return comp_[static_cast<std::size_t>(deg - min_deg_)];
  return SheafMorphism::zero(source_.term(deg), target_.term(deg));
}

Subquotient cohomology(const BoundedComplex& c, int deg) {
  const PosetSheaf f = c.term(deg);
  const SheafMorphism out = c.diff(deg), in = c.diff(deg - 1);
  std::vector<Subspace> num, den;
  for (std::size_t x = 0; x < f.size(); ++x) {
    num.push_back(kernel(out.at(x)));
    den.push_back(image(in.at(x)));
  }
  return subquotient(f, std::move(num), std::move(den));
}

PosetSheaf cohomology_sheaf(const BoundedComplex& c, int deg) { return cohomology(c, deg).sheaf; }

SheafMorphism induced_on_cohomology(const ChainMap& f, int deg) {
  const Subquotient hs = cohomology(f.source(), deg);
  const Subquotient ht = cohomology(f.target(), deg);
  const SheafMorphism fd = f.at(deg);
  std::vector<Matrix> comp;
  for (std::size_t x = 0; x < hs.sheaf.size(); ++x) {
    Matrix m(hs.sheaf.field(), ht.sheaf.stalk_dim(x), hs.sheaf.stalk_dim(x));
    for (std::size_t k = 0; k < hs.reps[x].rows(); ++k) {
      Vector c = ht.class_of(x, fd.at(x) * hs.reps[x].row(k));
      for (std::size_t r = 0; r < c.size(); ++r) m.set(r, k, c[r]);
    }
    comp.push_back(std::move(m));
  }
  return SheafMorphism(hs.sheaf, ht.sheaf, std::move(comp));
}

Report quasi_iso_check(const ChainMap& f) {
  Report report{"quasi_isomorphism", true, {}};
  const int lo = std::min(f.source().min_deg(), f.target().min_deg());
  const int hi = std::max(f.source().max_deg(), f.target().max_deg());
  for (int d = lo; d <= hi; ++d) report.add("cohomology_iso", induced_on_cohomology(f, d).is_isomorphism(), {{"deg", d}});
  return report;
}

Truncation truncate_le(const BoundedComplex& c, int a) {
  if (a >= c.max_deg()) return {c, ChainMap::identity(c)};
  if (a < c.min_deg()) {
    BoundedComplex z = zero_complex(c.poset(), c.field(), a);
    return {z, ChainMap(z, c, a, {SheafMorphism::zero(z.term(a), c.term(a))})};
  }
  const SubSheaf k = kernel_sheaf(c.diff(a));
  std::vector<PosetSheaf> terms;
  std::vector<SheafMorphism> diffs;
  for (int d = c.min_deg(); d < a; ++d) terms.push_back(c.term(d));
  terms.push_back(k.sheaf);
  for (int d = c.min_deg(); d + 1 < a; ++d) diffs.push_back(c.diff(d));
  if (a > c.min_deg()) {
    const PosetSheaf src = c.term(a - 1);
    const SheafMorphism d = c.diff(a - 1);
    std::vector<Matrix> comp;
    for (std::size_t x = 0; x < src.size(); ++x)
      comp.push_back(restrict_map(d.at(x), Subspace::full(src.field(), src.stalk_dim(x)), k.spaces[x]));
    diffs.emplace_back(src, k.sheaf, std::move(comp));
  }
  BoundedComplex t(c.min_deg(), std::move(terms), std::move(diffs));
  std::vector<SheafMorphism> maps;
  for (int d = c.min_deg(); d < a; ++d) maps.push_back(SheafMorphism::identity(c.term(d)));
  maps.push_back(k.inclusion);
  return {t, ChainMap(t, c, c.min_deg(), std::move(maps))};
}

Truncation truncate_ge(const BoundedComplex& c, int a) {
  if (a <= c.min_deg()) return {c, ChainMap::identity(c)};
  if (a > c.max_deg()) {
    BoundedComplex z = zero_complex(c.poset(), c.field(), a);
    return {z, ChainMap(c, z, a, {SheafMorphism::zero(c.term(a), z.term(a))})};
  }
  const PosetSheaf f = c.term(a);
  const SheafMorphism in = c.diff(a - 1), out = c.diff(a);
  std::vector<Subspace> num, den;
  for (std::size_t x = 0; x < f.size(); ++x) {
    num.push_back(Subspace::full(f.field(), f.stalk_dim(x)));
    den.push_back(image(in.at(x)));
  }
  const Subquotient q = subquotient(f, std::move(num), std::move(den));

  std::vector<PosetSheaf> terms{q.sheaf};
  std::vector<SheafMorphism> diffs;
  for (int d = a + 1; d <= c.max_deg(); ++d) terms.push_back(c.term(d));
  if (a < c.max_deg()) {
    std::vector<Matrix> comp;
    for (std::size_t x = 0; x < f.size(); ++x) comp.push_back(out.at(x) * transpose(q.reps[x]));
    diffs.emplace_back(q.sheaf, c.term(a + 1), std::move(comp));
  }
  for (int d = a + 1; d < c.max_deg(); ++d) diffs.push_back(c.diff(d));
  BoundedComplex t(a, std::move(terms), std::move(diffs));

  std::vector<Matrix> proj;
  for (std::size_t x = 0; x < f.size(); ++x) {
    const std::size_t n = f.stalk_dim(x);
    Matrix m(f.field(), q.sheaf.stalk_dim(x), n);
    for (std::size_t j = 0; j < n; ++j) {
      Vector e(n, f.field().zero());
      e[j] = f.field().one();
      Vector cls = q.class_of(x, e);
      for (std::size_t r = 0; r < cls.size(); ++r) m.set(r, j, cls[r]);
    }
    proj.push_back(std::move(m));
  }
  std::vector<SheafMorphism> maps;
  maps.emplace_back(f, q.sheaf, std::move(proj));
  for (int d = a + 1; d <= c.max_deg(); ++d) maps.push_back(SheafMorphism::identity(c.term(d)));
  return {t, ChainMap(c, t, a, std::move(maps))};
}

void check_complex_gstructure(const BoundedComplex& c, const StrictComplexGStructure& s, const GaloisGroup& group) {
  const std::size_t n_terms = static_cast<std::size_t>(c.max_deg() - c.min_deg() + 1);
  if (s.min_deg != c.min_deg() || s.terms.size() != n_terms)
    fail(ErrorCode::DimensionMismatch, "structure degrees do not match the complex");
  for (std::size_t i = 0; i < n_terms; ++i) {
    const int d = c.min_deg() + static_cast<int>(i);
    if (!(s.terms[i].sheaf == c.term(d)))
      fail(ErrorCode::DimensionMismatch, "structure in degree " + std::to_string(d) + " is on a different sheaf");
    try {
      check_sheaf_gstructure(s.terms[i], group);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotCocycle) rethrow_with(e, {{"deg", d}});
      Error::Witness w = e.witness();
      w["deg"] = d;
      fail(ErrorCode::NotStrict, std::string("cocycle identity fails on the chain level: ") + e.what(), std::move(w));
    }
  }
  for (int d = c.min_deg(); d < c.max_deg(); ++d) {
    const SheafMorphism diff = c.diff(d);
    const auto& lo = s.terms[static_cast<std::size_t>(d - c.min_deg())];
    const auto& hi = s.terms[static_cast<std::size_t>(d + 1 - c.min_deg())];
    for (std::size_t x = 0; x < diff.source().size(); ++x)
      for (std::size_t g = 0; g < group.size(); ++g)
        if (!(diff.at(x) * lo.pointwise[x].cocycle[g] == hi.pointwise[x].cocycle[g] * conjugate_matrix(group[g], diff.at(x))))
          fail(ErrorCode::NotStrict, "structure does not commute with the differential",
               {{"deg", d}, {"x", idx(x)}, {"g", idx(g)}});
  }
}

BoundedComplex base_change(const BoundedComplex& c, const Field& ext) {
  std::vector<PosetSheaf> terms;
  std::vector<SheafMorphism> diffs;
  for (int d = c.min_deg(); d <= c.max_deg(); ++d) {
    terms.push_back(base_change(c.term(d), ext));
    if (d < c.max_deg()) diffs.push_back(base_change(c.diff(d), ext));
  }
  return BoundedComplex(c.min_deg(), std::move(terms), std::move(diffs));
}

ExtendedComplex extend_complex(const BoundedComplex& c, const GaloisGroup& group) {
  StrictComplexGStructure s{c.min_deg(), {}};
  for (int d = c.min_deg(); d <= c.max_deg(); ++d) s.terms.push_back(extend_sheaf(c.term(d), group));
  return {base_change(c, group.field()), std::move(s)};
}

ComplexKForm descend_complex_strict(const BoundedComplex& c, const StrictComplexGStructure& s, const GaloisGroup& group) {
  check_complex_gstructure(c, s, group);
  std::vector<SheafKForm> forms;
  for (const auto& t : s.terms) forms.push_back(descend_sheaf(t, group));
  std::vector<PosetSheaf> kterms;
  std::vector<SheafMorphism> kdiffs;
  for (std::size_t i = 0; i < forms.size(); ++i) {
    kterms.push_back(forms[i].ksheaf);
    if (i + 1 < forms.size()) {
      const int d = c.min_deg() + static_cast<int>(i);
      kdiffs.push_back(descend_sheaf_morphism(c.diff(d), s.terms[i], forms[i], s.terms[i + 1], forms[i + 1], group));
    }
  }
  BoundedComplex kc(c.min_deg(), std::move(kterms), std::move(kdiffs));
  std::vector<SheafMorphism> isos;
  for (const auto& f : forms) isos.push_back(f.iso);
  ChainMap iso(base_change(kc, group.field()), c, c.min_deg(), std::move(isos));
  return ComplexKForm{std::move(kc), std::move(forms), std::move(iso)};
}

SheafGStructure cohomology_structure(const BoundedComplex& c, const StrictComplexGStructure& s, int deg,
                                     const GaloisGroup& group) {
  const Subquotient h = cohomology(c, deg);
  const bool in_range = deg >= c.min_deg() && deg <= c.max_deg();
  SheafGStructure out{h.sheaf, {}};
  for (std::size_t x = 0; x < h.sheaf.size(); ++x) {
    const std::size_t n = h.sheaf.stalk_dim(x);
    GStructure gs{LSpace{group.field(), n}, {}};
    for (std::size_t g = 0; g < group.size(); ++g) {
      Matrix m(group.field(), n, n);
      for (std::size_t k = 0; k < n; ++k) {
        const Matrix& a = s.terms[static_cast<std::size_t>(deg - c.min_deg())].pointwise[x].cocycle[g];
        Vector rep = h.reps[x].row(k);
        for (auto& e : rep) e = group[g].apply(e);
        Vector cls = h.class_of(x, a * rep);
        for (std::size_t r = 0; r < n; ++r) m.set(r, k, cls[r]);
      }
      gs.cocycle.push_back(std::move(m));
    }
    out.pointwise.push_back(std::move(gs));
  }
  ensure(in_range || h.sheaf.total_dim() == 0, "nonzero cohomology outside the complex range");
  return out;
}

Report two_term_descent_via_cohomology(const BoundedComplex& c, const StrictComplexGStructure& s,
                                       const GaloisGroup& group) {
  if (c.max_deg() != c.min_deg() + 1) fail(ErrorCode::DimensionMismatch, "expected a complex in two consecutive degrees");
  Report report{"two_term_descent", true, {}};
  const Field& L = group.field();
  const Field& K = L.base();
  const ComplexKForm termwise = descend_complex_strict(c, s, group);
  const BoundedComplex extended = base_change(termwise.kcomplex, L);
  for (int d = c.min_deg(); d <= c.max_deg(); ++d) {
    const Error::Witness at{{"deg", d}};
    const PosetSheaf h_termwise = cohomology_sheaf(termwise.kcomplex, d);
    report.add("termwise_route.cohomology_commutes_with_extension",
               cohomology_sheaf(extended, d) == base_change(h_termwise, L), at);

    const SheafGStructure hs = cohomology_structure(c, s, d, group);
    const SheafKForm via_cohomology = descend_sheaf(hs, group);
    report.add("cohomology_route.descent_square", verify_sheaf_descent(hs, via_cohomology, group).pass, at);

    const bool same_dims = h_termwise.stalk_dims() == via_cohomology.ksheaf.stalk_dims();
    report.add("agreement.stalk_dims", same_dims, at);
    if (!same_dims) continue;

    // psi^{-1} ∘ H(phi) is defined over L; it must have entries in K and be an iso
    const SheafMorphism h_phi = induced_on_cohomology(termwise.iso, d);
    std::vector<Matrix> comp;
    bool fixed = true;
    for (std::size_t x = 0; x < h_phi.source().size(); ++x) {
      const Matrix composite = inverse(via_cohomology.iso.at(x)) * h_phi.at(x);
      try {
        comp.push_back(map_entries(composite, K, [&](const FieldElem& e) { return coerce_down(group, e); }));
      } catch (const Error&) {
        fixed = false;
        report.add("agreement.comparison_defined_over_base", false, {{"deg", d}, {"x", idx(x)}});
        break;
      }
    }
    if (!fixed) continue;
    report.add("agreement.comparison_defined_over_base", true, at);
    try {
      SheafMorphism cmp(h_termwise, via_cohomology.ksheaf, std::move(comp));
      report.add("agreement.comparison_is_iso", cmp.is_isomorphism(), at);
    } catch (const Error& e) {
      Error::Witness w = e.witness();
      w["deg"] = d;
      report.add("agreement.comparison_is_iso", false, std::move(w));
    }
  }
  return report;
}

}  // namespace gdesc
