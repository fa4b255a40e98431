#include <doctest.h>

#include "galdesc/poset_sheaf.hpp"
#include "support.hpp"

using namespace gdesc;
using testing::mat;

namespace {

// Diamond 0 < 1, 2 < 3.
PosetPtr diamond() { return FinPoset::from_covers(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}); }

// Brute-force count of sections over an open of an F2-sheaf: tuples of stalk
// vectors compatible with every cover inside the open.
std::size_t count_sections_f2(const PosetSheaf& f, const PointSet& open) {
  const Field& f2 = f.field();
  std::size_t total = 0;
  for (std::size_t x : open) total += f.stalk_dim(x);
  std::size_t count = 0;
  for (unsigned bits = 0; bits < (1u << total); ++bits) {
    std::vector<Vector> comp(f.size());
    std::size_t k = 0;
    for (std::size_t x : open)
      for (std::size_t j = 0; j < f.stalk_dim(x); ++j) comp[x].push_back(f2.from_int((bits >> k++) & 1));
    bool ok = true;
    const auto& covers = f.poset()->covers();
    for (std::size_t c = 0; c < covers.size() && ok; ++c) {
      auto [x, y] = covers[c];
      if (std::binary_search(open.begin(), open.end(), x)) ok = f.res(c) * comp[x] == comp[y];
    }
    count += ok;
  }
  return count;
}

}  // namespace

TEST_CASE("poset basics") {
  const PosetPtr p = diamond();
  CHECK(p->leq(0, 3));
  CHECK_FALSE(p->leq(1, 2));
  CHECK(p->up_set(1) == PointSet{1, 3});
  CHECK(p->down_set(3) == PointSet{0, 1, 2, 3});
  CHECK(p->is_up_set({1, 2, 3}));
  CHECK_FALSE(p->is_up_set({0, 1}));
  CHECK(p->is_locally_closed({1}));
  CHECK_FALSE(p->is_locally_closed({0, 3}));
  CHECK(p->chain(0, 3).size() == 2);
  CHECK(testing::error_code_of([] { FinPoset::from_covers(2, {{0, 1}, {1, 0}}); }) == ErrorCode::NotPartialOrder);
  CHECK(testing::error_code_of([] { FinPoset::from_covers(3, {{0, 1}, {1, 2}, {0, 2}}); }) ==
        ErrorCode::SchemaError);
  CHECK(*FinPoset::from_relation(3, {{0, 1}, {1, 2}, {0, 2}}) == *FinPoset::chain_of(3));
}

TEST_CASE("monotone maps") {
  const PosetPtr c2 = FinPoset::chain_of(2);
  CHECK(testing::error_code_of([&] { MonotoneMap(c2, c2, {1, 0}); }) == ErrorCode::NotMonotone);
  const MonotoneMap f(diamond(), c2, {0, 0, 1, 1});
  CHECK(f.preimage({1}) == PointSet{2, 3});
}

TEST_CASE("restriction composites must agree") {
  const Field q = Field::rationals();
  std::vector<Matrix> res{mat(q, 1, 1, {"1"}), mat(q, 1, 1, {"1"}), mat(q, 1, 1, {"1"}), mat(q, 1, 1, {"2"})};
  CHECK(testing::error_code_of([&] { PosetSheaf(diamond(), q, {1, 1, 1, 1}, res); }) ==
        ErrorCode::NotPathIndependent);
  res[3] = mat(q, 1, 1, {"1"});
  const PosetSheaf f(diamond(), q, {1, 1, 1, 1}, res);
  CHECK(f.transition(0, 3) == mat(q, 1, 1, {"1"}));
  CHECK(is_locally_constant(f));
}

TEST_CASE("sections over F2 match brute force") {
  const Field f2 = Field::prime(2);
  Random rng(31);
  for (int n = 0; n < 60; ++n) {
    const PosetPtr p = rng.poset(4);
    const PosetSheaf f = rng.sheaf(p, f2, 2);
    CHECK((std::size_t{1} << sections(f, p->all_points()).space.dim()) == count_sections_f2(f, p->all_points()));
    for (std::size_t x = 0; x < p->size(); ++x) {
      const Sections s = sections(f, p->up_set(x));
      CHECK((std::size_t{1} << s.space.dim()) == count_sections_f2(f, p->up_set(x)));
      // sections over the minimal open are the stalk
      CHECK(s.space.dim() == f.stalk_dim(x));
      const Matrix proj = projection_to_stalk(f, s, x);
      CHECK(rank(proj) == f.stalk_dim(x));
    }
  }
}

TEST_CASE("constant sheaf global sections count components") {
  const Field q = Field::rationals();
  CHECK(sections(PosetSheaf::constant(diamond(), q, 2), diamond()->all_points()).space.dim() == 2);
  const PosetPtr two = FinPoset::antichain(2);
  CHECK(sections(PosetSheaf::constant(two, q, 1), two->all_points()).space.dim() == 2);
}

TEST_CASE("tensor unit and direct sums") {
  Random rng(32);
  for (const auto& sf : suite_fields()) {
    const PosetPtr p = rng.poset(4);
    const PosetSheaf f = rng.sheaf(p, sf.ext);
    CHECK(tensor(f, PosetSheaf::constant(p, sf.ext, 1)) == f);
    const PosetSheaf g = rng.sheaf(p, sf.ext);
    const PosetSheaf s = direct_sum(f, g);
    for (std::size_t x = 0; x < p->size(); ++x) CHECK(s.stalk_dim(x) == f.stalk_dim(x) + g.stalk_dim(x));
    CHECK(sections(s, p->all_points()).space.dim() ==
          sections(f, p->all_points()).space.dim() + sections(g, p->all_points()).space.dim());
  }
}

TEST_CASE("pullback and pushforward are adjoint on Hom dimensions") {
  Random rng(33);
  for (const auto& sf : suite_fields()) {
    for (int n = 0; n < 10; ++n) {
      const PosetPtr src = rng.poset(4), dst = rng.poset(3);
      const MonotoneMap m = rng.monotone_map(src, dst);
      const PosetSheaf f = rng.sheaf(src, sf.ext, 2), g = rng.sheaf(dst, sf.ext, 2);
      CHECK(hom_global(pullback(m, g), f).size() == hom_global(g, pushforward(m, f)).size());
    }
  }
}

TEST_CASE("pushforward stalks are sections over preimages") {
  Random rng(34);
  const SuiteField sf = suite_field("F4");
  for (int n = 0; n < 20; ++n) {
    const PosetPtr src = rng.poset(4), dst = rng.poset(3);
    const MonotoneMap m = rng.monotone_map(src, dst);
    const PosetSheaf f = rng.sheaf(src, sf.ext, 2);
    const PosetSheaf pf = pushforward(m, f);
    for (std::size_t y = 0; y < dst->size(); ++y)
      CHECK(pf.stalk_dim(y) == sections(f, m.preimage(dst->up_set(y))).space.dim());
    CHECK(sections(pf, dst->all_points()).space.dim() == sections(f, src->all_points()).space.dim());
  }
}

TEST_CASE("pullback preserves local constancy") {
  Random rng(35);
  const Field q = Field::rationals();
  for (int n = 0; n < 30; ++n) {
    const PosetPtr src = rng.poset(4), dst = rng.poset(4);
    const MonotoneMap m = rng.monotone_map(src, dst);
    const std::vector<Matrix> res(dst->covers().size(), Matrix::identity(q, 2));
    const PosetSheaf g(dst, q, std::vector<std::size_t>(dst->size(), 2), res);
    CHECK(is_locally_constant(pullback(m, g)));
    const PosetSheaf h = rng.sheaf(dst, q);
    const PosetSheaf ph = pullback(m, h);
    for (std::size_t x = 0; x < src->size(); ++x) CHECK(ph.stalk_dim(x) == h.stalk_dim(m(x)));
  }
}

TEST_CASE("extension by zero") {
  const Field q = Field::rationals();
  const PosetPtr p = diamond();
  const PosetSheaf z = constant_on(p, q, {1, 3}, 2);
  CHECK(z.stalk_dims() == std::vector<std::size_t>{0, 2, 0, 2});
  CHECK(testing::error_code_of([&] { constant_on(p, q, {0, 3}); }) == ErrorCode::NotLocallyClosed);
  const PosetSheaf r = restrict_to(z, {1, 3});
  CHECK(r.stalk_dims() == std::vector<std::size_t>{2, 2});
  CHECK(extend_by_zero(p, {1, 3}, r) == z);
}

TEST_CASE("morphisms, kernels and internal hom") {
  Random rng(36);
  for (const auto& sf : suite_fields()) {
    const PosetPtr p = rng.poset(4);
    const PosetSheaf f = rng.sheaf(p, sf.ext), g = rng.sheaf(p, sf.ext);
    const SheafMorphism m = rng.morphism(f, g);
    CHECK(morphism_from_vector(f, g, morphism_to_vector(m)).components() == m.components());
    const SubSheaf k = kernel_sheaf(m);
    CHECK(compose(m, k.inclusion).is_zero());
    for (std::size_t x = 0; x < p->size(); ++x) CHECK(k.sheaf.stalk_dim(x) == kernel(m.at(x)).dim());
    const PosetSheaf h = sheaf_hom(f, g);
    for (std::size_t x = 0; x < p->size(); ++x)
      CHECK(h.stalk_dim(x) == natural_maps(f, g, p->up_set(x)).space.dim());
    CHECK(hom_global(f, g).size() == natural_maps(f, g, p->all_points()).space.dim());
    CHECK(SheafMorphism::identity(f).is_isomorphism());
  }
}

TEST_CASE("non-commuting squares are not morphisms") {
  const Field q = Field::rationals();
  const PosetSheaf f = PosetSheaf::constant(FinPoset::chain_of(2), q, 1);
  try {
    SheafMorphism(f, f, {mat(q, 1, 1, {"1"}), mat(q, 1, 1, {"2"})});
    FAIL("expected NotSheafMorphism");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotSheafMorphism);
    CHECK(e.witness().at("x") == 0);
    CHECK(e.witness().at("y") == 1);
  }
}
