#include <doctest.h>

#include "galdesc/semilinear.hpp"
#include "support.hpp"

using namespace gdesc;
using testing::mat;

namespace {

bool is_invariant(const GStructure& gs, const GaloisGroup& group, const Vector& v) {
  for (std::size_t g = 0; g < group.size(); ++g) {
    Vector gv;
    for (const auto& x : v) gv.push_back(group[g].apply(x));
    if (gs.cocycle[g] * gv != v) return false;
  }
  return true;
}

// All vectors of ext^n for a finite ext.
std::vector<Vector> all_vectors(const Field& ext, std::size_t n) {
  std::vector<Vector> out{Vector{}};
  const auto elems = ext.elements();
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<Vector> next;
    for (const auto& v : out)
      for (const auto& x : elems) {
        Vector w = v;
        w.push_back(x);
        next.push_back(w);
      }
    out = std::move(next);
  }
  return out;
}

// K-span of the rows of kbasis, by enumerating K-coefficients.
std::vector<Vector> kspan(const Field& ext, const Matrix& kbasis) {
  const auto kelems = ext.base().elements();
  std::vector<Vector> out{Vector(kbasis.cols(), ext.zero())};
  for (std::size_t r = 0; r < kbasis.rows(); ++r) {
    std::vector<Vector> next;
    for (const auto& v : out)
      for (const auto& c : kelems) {
        Vector w = v;
        for (std::size_t j = 0; j < w.size(); ++j) w[j] = ext.add(w[j], ext.mul(ext.embed(c), kbasis(r, j)));
        next.push_back(w);
      }
    out = std::move(next);
  }
  return out;
}

GStructure one_dim(const GaloisGroup& group, const Matrix& a) {
  return {{group.field(), 1}, {Matrix::identity(group.field(), 1), a}};
}

}  // namespace

TEST_CASE("Q(i) with A = [i] descends to the line through 1+i") {
  const SuiteField qi = suite_field("Qi");
  const Field& f = qi.ext;
  const KForm form = descend(one_dim(qi.group, mat(f, 1, 1, {"i"})), qi.group);
  REQUIRE(form.kdim == 1);
  // Oracle: v = a + b i is fixed iff i (a - b i) = b + a i equals a + b i,
  // i.e. the Q-linear system [[1, -1], [-1, 1]] (a, b) = 0.
  const Field q = Field::rationals();
  const Subspace oracle = kernel(mat(q, 2, 2, {"1", "-1", "-1", "1"}));
  REQUIRE(oracle.dim() == 1);
  const FieldElem expected = f.from_base_coeffs(oracle.basis().row(0));
  CHECK(expected == f.parse("1+1*i"));
  CHECK(form.kbasis(0, 0) == expected);
  CHECK(form.kbasis * form.kbasis_inverse == Matrix::identity(f, 1));
}

TEST_CASE("F4 with A = [w] descends to F2 * w^2") {
  const SuiteField f4 = suite_field("F4");
  const Field& f = f4.ext;
  const GStructure gs = one_dim(f4.group, Matrix::scalar(f, f.generator()));
  const KForm form = descend(gs, f4.group);
  // Oracle: enumerate F4 for the nonzero fixed points of x -> w x^2.
  std::vector<FieldElem> fixed;
  for (const auto& x : f.elements())
    if (!f.is_zero(x) && f.mul(f.generator(), f.pow(x, 2)) == x) fixed.push_back(x);
  REQUIRE(fixed.size() == 1);
  CHECK(fixed[0] == f.pow(f.generator(), 2));
  REQUIRE(form.kdim == 1);
  CHECK(form.kbasis(0, 0) == fixed[0]);
}

TEST_CASE("broken cocycles are rejected with witnesses") {
  const SuiteField qi = suite_field("Qi");
  const Field& f = qi.ext;
  try {
    check_gstructure(one_dim(qi.group, mat(f, 1, 1, {"2*i"})), qi.group);
    FAIL("expected NotCocycle");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotCocycle);
    CHECK(e.witness().at("g") == 1);
    CHECK(e.witness().at("h") == 1);
  }
  CHECK(testing::error_code_of([&] { check_gstructure(one_dim(qi.group, Matrix(f, 1, 1)), qi.group); }) ==
        ErrorCode::Singular);
  GStructure bad_id = one_dim(qi.group, mat(f, 1, 1, {"i"}));
  bad_id.cocycle[0] = mat(f, 1, 1, {"2"});
  CHECK(testing::error_code_of([&] { check_gstructure(bad_id, qi.group); }) == ErrorCode::NotCocycle);
}

TEST_CASE("descent over finite fields agrees with enumeration") {
  Random rng(21);
  for (const std::string name : {"F4", "F8", "F9"}) {
    const SuiteField sf = suite_field(name);
    for (int n = 0; n < 20; ++n) {
      const std::size_t dim = rng.between(1, name == "F4" ? 3 : 2);
      const GStructure gs = rng.gstructure(sf.group, dim);
      const KForm form = descend(gs, sf.group);
      std::size_t fixed = 0;
      for (const auto& v : all_vectors(sf.ext, dim)) fixed += is_invariant(gs, sf.group, v);
      const auto span = kspan(sf.ext, form.kbasis);
      CHECK(fixed == span.size());
      for (const auto& v : span) CHECK(is_invariant(gs, sf.group, v));
      CHECK(form.kdim == dim);
    }
  }
}

TEST_CASE("descent of random structures on every suite field") {
  Random rng(22);
  for (const auto& sf : suite_fields()) {
    for (int n = 0; n < 30; ++n) {
      const std::size_t dim = rng.between(1, 4);
      const GStructure gs = rng.gstructure(sf.group, dim);
      check_gstructure(gs, sf.group);
      const KForm form = descend(gs, sf.group);
      REQUIRE(form.kdim == dim);
      CHECK(form.kbasis * form.kbasis_inverse == Matrix::identity(sf.ext, dim));
      const Matrix iso = transpose(form.kbasis);
      for (std::size_t g = 0; g < sf.group.size(); ++g)
        CHECK(gs.cocycle[g] * conjugate_matrix(sf.group[g], iso) == iso);
    }
  }
}

TEST_CASE("natural structure descends to the standard basis") {
  for (const auto& sf : suite_fields()) {
    const KForm form = descend(extend_scalars(3, sf.group), sf.group);
    CHECK(form.kbasis == Matrix::identity(sf.ext, 3));
  }
}

TEST_CASE("twists compose") {
  Random rng(23);
  for (const auto& sf : suite_fields()) {
    const GStructure gs = rng.gstructure(sf.group, 2);
    const Matrix b = rng.invertible(sf.ext, 2), c = rng.invertible(sf.ext, 2);
    const GStructure lhs = twist(twist(gs, b, sf.group), c, sf.group);
    const GStructure rhs = twist(gs, c * b, sf.group);
    for (std::size_t g = 0; g < sf.group.size(); ++g) CHECK(lhs.cocycle[g] == rhs.cocycle[g]);
  }
}

TEST_CASE("restricted scalars round trip and semilinear matrices") {
  Random rng(24);
  for (const auto& sf : suite_fields()) {
    const std::size_t dim = 2;
    Vector v{rng.element(sf.ext), rng.element(sf.ext)};
    CHECK(from_restricted(sf.ext, to_restricted(sf.ext, v)) == v);
    const Matrix a = rng.invertible(sf.ext, dim);
    for (std::size_t g = 0; g < sf.group.size(); ++g) {
      Vector gv;
      for (const auto& x : v) gv.push_back(sf.group[g].apply(x));
      CHECK(restricted_semilinear(a, sf.group[g]) * to_restricted(sf.ext, v) == to_restricted(sf.ext, a * gv));
    }
    const RestrictedScalars rs = restrict_scalars({sf.ext, dim});
    CHECK(rs.kdim == dim * static_cast<std::size_t>(sf.ext.degree()));
    CHECK(rs.l_action.size() == static_cast<std::size_t>(sf.ext.degree()));
  }
}

TEST_CASE("morphism recovery and faithfulness") {
  Random rng(25);
  for (const auto& sf : suite_fields()) {
    const Field& k = sf.ext.base();
    for (int n = 0; n < 20; ++n) {
      const std::size_t a = rng.between(1, 3), b = rng.between(1, 3);
      const Matrix fk = rng.matrix(k, b, a);
      const GStructure src = extend_scalars(a, sf.group), dst = extend_scalars(b, sf.group);
      CHECK(descend_morphism_vect(embed_matrix(fk, sf.ext), src, dst, sf.group) == fk);

      // transported structures: recovery in the K-form bases
      const Matrix bs = rng.invertible(sf.ext, a), bd = rng.invertible(sf.ext, b);
      const GStructure ts = twist(src, bs, sf.group), td = twist(dst, bd, sf.group);
      const Matrix f = bd * embed_matrix(fk, sf.ext) * inverse(bs);
      check_equivariant(f, ts, td, sf.group);
      const Matrix got = descend_morphism_vect(f, ts, td, sf.group);
      const KForm fs = descend(ts, sf.group), fd = descend(td, sf.group);
      CHECK(transpose(fd.kbasis) * embed_matrix(got, sf.ext) == f * transpose(fs.kbasis));

      // a non-fixed entry breaks equivariance for the natural structures
      Matrix bad = embed_matrix(fk, sf.ext);
      bad.set(0, 0, sf.ext.add(bad(0, 0), sf.ext.generator()));
      CHECK(testing::error_code_of([&] { descend_morphism_vect(bad, src, dst, sf.group); }) ==
            ErrorCode::NotEquivariant);
    }
  }
}

TEST_CASE("hom dimensions agree under base change") {
  for (const auto& sf : suite_fields())
    for (std::size_t n = 0; n <= 3; ++n)
      for (std::size_t m = 0; m <= 3; ++m) {
        auto [ldim, kdim] = hom_dim_check(n, m, sf.ext);
        CHECK(ldim == kdim);
        CHECK(kdim == n * m);
      }
}
