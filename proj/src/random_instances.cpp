#include "galdesc/random_instances.hpp"

#include <algorithm>
#include <numeric>

namespace gdesc {

namespace {

Field quotient(const Field& base, std::initializer_list<std::int64_t> coeffs, const std::string& symbol) {
  std::vector<FieldElem> modulus;
  for (auto c : coeffs) modulus.push_back(base.from_int(c));
  return Field::extension(base, std::move(modulus), symbol);
}

Matrix columns_in(const Subspace& s, const Matrix& vectors) {
  Matrix out(vectors.field(), s.dim(), vectors.cols());
  for (std::size_t k = 0; k < vectors.cols(); ++k) {
    Vector c = s.coordinates(vectors.col(k));
    for (std::size_t r = 0; r < c.size(); ++r) out.set(r, k, c[r]);
  }
  return out;
}

}  // namespace

std::vector<SuiteField> suite_fields() {
  std::vector<SuiteField> out;
  const Field f2 = Field::prime(2), f3 = Field::prime(3), q = Field::rationals();
  const Field f4 = quotient(f2, {1, 1, 1}, "w");
  out.push_back({"F4", f4, GaloisGroup::compute(f4)});
  const Field f8 = quotient(f2, {1, 1, 0, 1}, "b");
  out.push_back({"F8", f8, GaloisGroup::compute(f8)});
  const Field f9 = quotient(f3, {1, 0, 1}, "j");
  out.push_back({"F9", f9, GaloisGroup::compute(f9)});
  const Field qi = quotient(q, {1, 0, 1}, "i");
  const std::vector<FieldElem> conj_i{qi.neg(qi.generator())};
  out.push_back({"Qi", qi, GaloisGroup::compute(qi, conj_i)});
  const Field qw = quotient(q, {1, 1, 1}, "x");
  const std::vector<FieldElem> conj_w{qw.sub(qw.neg(qw.one()), qw.generator())};
  out.push_back({"Qw", qw, GaloisGroup::compute(qw, conj_w)});
  return out;
}

SuiteField suite_field(const std::string& name) {
  for (auto& f : suite_fields())
    if (f.name == name) return f;
  fail(ErrorCode::SchemaError, "unknown suite field " + name);
}

std::size_t Random::below(std::size_t n) {
  ensure(n > 0, "empty range");
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
}

std::size_t Random::between(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }

bool Random::chance(double p) { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_) < p; }

FieldElem Random::element(const Field& f) {
  std::vector<Rational> coords;
  const std::int64_t p = f.characteristic();
  for (int i = 0; i < f.absolute_degree(); ++i) {
    if (p != 0)
      coords.emplace_back(static_cast<long>(below(static_cast<std::size_t>(p))));
    else
      coords.emplace_back(static_cast<long>(below(7)) - 3);
  }
  return FieldElem(std::move(coords));
}

FieldElem Random::nonzero_element(const Field& f) {
  for (;;) {
    FieldElem x = element(f);
    if (!f.is_zero(x)) return x;
  }
}

Matrix Random::matrix(const Field& f, std::size_t rows, std::size_t cols) {
  std::vector<FieldElem> entries;
  for (std::size_t i = 0; i < rows * cols; ++i) entries.push_back(element(f));
  return Matrix(f, rows, cols, std::move(entries));
}

Matrix Random::invertible(const Field& f, std::size_t n) {
  for (;;) {
    Matrix m = matrix(f, n, n);
    if (is_invertible(m)) return m;
  }
}

GStructure Random::gstructure(const GaloisGroup& group, std::size_t n) {
  return twist(extend_scalars(n, group), invertible(group.field(), n), group);
}

PosetPtr Random::poset(std::size_t max_points) {
  const std::size_t n = between(1, max_points);
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), engine_);
  std::vector<std::pair<std::size_t, std::size_t>> rel;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (chance(0.4)) rel.emplace_back(perm[i], perm[j]);
  return FinPoset::from_relation(n, rel);
}

MonotoneMap Random::monotone_map(const PosetPtr& source, const PosetPtr& target) {
  for (int attempt = 0; attempt < 20; ++attempt) {
    std::vector<std::size_t> image(source->size(), 0);
    bool ok = true;
    for (std::size_t x : source->linear_extension()) {
      std::vector<std::size_t> candidates;
      for (std::size_t t = 0; t < target->size(); ++t) {
        bool above = true;
        for (auto [a, b] : source->covers())
          if (b == x && !target->leq(image[a], t)) above = false;
        if (above) candidates.push_back(t);
      }
      if (candidates.empty()) {
        ok = false;
        break;
      }
      image[x] = candidates[below(candidates.size())];
    }
    if (ok) return MonotoneMap(source, target, std::move(image));
  }
  return MonotoneMap(source, target, std::vector<std::size_t>(source->size(), below(target->size())));
}

PosetSheaf Random::sheaf(const PosetPtr& poset, const Field& f, std::size_t max_dim) {
  const std::size_t nq = between(0, std::min<std::size_t>(2, max_dim));
  const std::size_t ns = between(0, std::min<std::size_t>(2, max_dim - nq));
  const std::size_t n = poset->size();

  // generators attached to points, accumulated over down-sets
  auto subspaces = [&](std::size_t dim, double p) {
    std::vector<std::vector<Vector>> gens(n);
    for (std::size_t z = 0; z < n; ++z)
      if (dim > 0 && chance(p)) gens[z].push_back(matrix(f, 1, dim).row(0));
    std::vector<Subspace> out;
    for (std::size_t x = 0; x < n; ++x) {
      std::vector<Vector> rows;
      for (auto z : poset->down_set(x)) rows.insert(rows.end(), gens[z].begin(), gens[z].end());
      out.push_back(Subspace::span_of_rows(Matrix::from_rows(f, dim, rows)));
    }
    return out;
  };

  std::vector<Subspace> full_q, full_s;
  for (std::size_t x = 0; x < n; ++x) {
    full_q.push_back(Subspace::full(f, nq));
    full_s.push_back(Subspace::zero(f, ns));
  }
  const PosetSheaf quotient_part = subquotient(PosetSheaf::constant(poset, f, nq), full_q, subspaces(nq, 0.3)).sheaf;
  const PosetSheaf sub_part = subquotient(PosetSheaf::constant(poset, f, ns), subspaces(ns, 0.6), full_s).sheaf;
  const PosetSheaf sum = direct_sum(quotient_part, sub_part);

  std::vector<Matrix> b, b_inv;
  for (std::size_t x = 0; x < n; ++x) {
    b.push_back(invertible(f, sum.stalk_dim(x)));
    b_inv.push_back(inverse(b.back()));
  }
  std::vector<Matrix> res;
  const auto& covers = poset->covers();
  for (std::size_t i = 0; i < covers.size(); ++i) res.push_back(b[covers[i].second] * sum.res(i) * b_inv[covers[i].first]);
  return PosetSheaf(poset, f, sum.stalk_dims(), std::move(res));
}

SheafMorphism Random::morphism(const PosetSheaf& f, const PosetSheaf& g) {
  const NaturalMaps maps = natural_maps(f, g, f.poset()->all_points());
  const Field& k = f.field();
  Vector v(maps.space.ambient_dim(), k.zero());
  for (std::size_t j = 0; j < maps.space.dim(); ++j) {
    const FieldElem c = element(k);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = k.add(v[i], k.mul(c, maps.space.basis()(j, i)));
  }
  return morphism_from_vector(f, g, v);
}

SheafGStructure Random::sheaf_gstructure(const PosetPtr& poset, const GaloisGroup& group, std::size_t max_dim) {
  const SheafGStructure natural = extend_sheaf(sheaf(poset, group.field().base(), max_dim), group);
  std::vector<Matrix> b;
  for (std::size_t x = 0; x < poset->size(); ++x) b.push_back(invertible(group.field(), natural.sheaf.stalk_dim(x)));
  return twist_sheaf(natural, b, group);
}

BoundedComplex Random::complex(const PosetPtr& poset, const Field& f, std::size_t max_dim) {
  const int min_deg = static_cast<int>(below(3)) - 1;
  const PosetSheaf c0 = sheaf(poset, f, max_dim);
  const PosetSheaf c1 = sheaf(poset, f, max_dim);
  const SheafMorphism d0 = morphism(c0, c1);
  if (chance(0.5)) return BoundedComplex(min_deg, {c0, c1}, {d0});

  std::vector<Subspace> full, im;
  for (std::size_t x = 0; x < c1.size(); ++x) {
    full.push_back(Subspace::full(f, c1.stalk_dim(x)));
    im.push_back(image(d0.at(x)));
  }
  const Subquotient coker = subquotient(c1, full, im);
  std::vector<Matrix> proj;
  for (std::size_t x = 0; x < c1.size(); ++x) {
    const std::size_t n = c1.stalk_dim(x);
    Matrix m(f, coker.sheaf.stalk_dim(x), n);
    for (std::size_t j = 0; j < n; ++j) {
      Vector e(n, f.zero());
      e[j] = f.one();
      Vector cls = coker.class_of(x, e);
      for (std::size_t r = 0; r < cls.size(); ++r) m.set(r, j, cls[r]);
    }
    proj.push_back(std::move(m));
  }
  const SheafMorphism to_coker(c1, coker.sheaf, std::move(proj));
  const PosetSheaf c2 = sheaf(poset, f, max_dim);
  const SheafMorphism d1 = compose(morphism(coker.sheaf, c2), to_coker);
  return BoundedComplex(min_deg, {c0, c1, c2}, {d0, d1});
}

GluingData Random::gluing(const Field& f, std::size_t max_dim) {
  const std::size_t n = between(1, max_dim);
  Matrix j(f, n, n);
  for (std::size_t r = 0; r < n; ++r) {
    FieldElem diag = f.one();
    if (chance(0.4)) {
      for (int attempt = 0; attempt < 10; ++attempt) {
        FieldElem c = nonzero_element(f);
        if (!f.is_one(c)) {
          diag = c;
          break;
        }
      }
    }
    j.set(r, r, diag);
    for (std::size_t c = r + 1; c < n; ++c) j.set(r, c, element(f));
  }
  const Matrix p = invertible(f, n);
  const LocalSystemDisc ls(p * j * inverse(p));
  const NearbyCycles nc = nearby_unipotent(ls);
  const std::size_t m = nc.psi.dim();
  const std::size_t extra = below(2);
  const std::size_t phi = m + extra;
  Matrix u0(f, phi, m), v0(f, m, phi);
  const Matrix one_minus_t = Matrix::identity(f, m) - nc.t_action;
  for (std::size_t r = 0; r < m; ++r) {
    u0.set(r, r, f.one());
    for (std::size_t c = 0; c < m; ++c) v0.set(r, c, one_minus_t(r, c));
    for (std::size_t c = m; c < phi; ++c) v0.set(r, c, element(f));
  }
  const Matrix q = invertible(f, phi);
  return GluingData{ls, phi, q * u0, v0 * inverse(q)};
}

ExtendedComplex twist_complex(const ExtendedComplex& c, const std::vector<std::vector<Matrix>>& b,
                              const GaloisGroup& group) {
  const BoundedComplex& cx = c.complex;
  StrictComplexGStructure s{cx.min_deg(), {}};
  std::vector<PosetSheaf> terms;
  for (std::size_t i = 0; i < c.structure.terms.size(); ++i) {
    s.terms.push_back(twist_sheaf(c.structure.terms[i], b[i], group));
    terms.push_back(s.terms.back().sheaf);
  }
  std::vector<SheafMorphism> diffs;
  for (std::size_t i = 0; i + 1 < terms.size(); ++i) {
    const SheafMorphism d = cx.diff(cx.min_deg() + static_cast<int>(i));
    std::vector<Matrix> comp;
    for (std::size_t x = 0; x < d.source().size(); ++x) comp.push_back(b[i + 1][x] * d.at(x) * inverse(b[i][x]));
    diffs.emplace_back(terms[i], terms[i + 1], std::move(comp));
  }
  return ExtendedComplex{BoundedComplex(cx.min_deg(), std::move(terms), std::move(diffs)), std::move(s)};
}

ExtendedGluing twist_gluing(const ExtendedGluing& g, const Matrix& bv, const Matrix& bphi, const GaloisGroup& group) {
  const GluingData& d = g.data;
  const LocalSystemDisc ls(bv * d.ls.monodromy() * inverse(bv));
  const NearbyCycles before = nearby_unipotent(d.ls), after = nearby_unipotent(ls);
  const Matrix m = columns_in(after.psi, bv * before.psi.inclusion());
  const Matrix m_inv = inverse(m);
  GluingData out{ls, d.phi_dim, bphi * d.u * m_inv, m * d.v * inverse(bphi)};
  GluingGStructure s{twist(g.structure.v, bv, group), twist(g.structure.phi, bphi, group)};
  return ExtendedGluing{std::move(out), std::move(s)};
}

}  // namespace gdesc
