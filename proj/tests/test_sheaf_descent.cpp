#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "galdesc/sheaf_descent.hpp"
#include "support.hpp"

using namespace gdesc;
using testing::mat;

namespace {

struct Loaded {
  FieldSpec spec;
  GaloisGroup group;
  PosetSheaf sheaf;
  SheafGStructure sgs;
};

Loaded load_sheaf_fixture(const std::string& name) {
  const Json doc = testing::load_fixture(name);
  FieldSpec spec = field_from_json(doc.at("field"), JsonPath() / "field", false);
  GaloisGroup group = GaloisGroup::compute(spec.field, spec.hints);
  PosetSheaf sheaf = sheaf_from_json(doc.at("sheaf"), spec.field, JsonPath() / "sheaf");
  SheafGStructure sgs = sheaf_structure_from_json(doc.at("structure"), sheaf, group, JsonPath() / "structure");
  return {spec, group, sheaf, sgs};
}

}  // namespace

TEST_CASE("twisted chain over Q(i) descends to the constant sheaf") {
  const Loaded in = load_sheaf_fixture("twisted_chain_qi.json");
  const SheafKForm form = descend_sheaf(in.sgs, in.group);
  const Field& f = in.spec.field;
  CHECK(form.ksheaf.stalk_dims() == std::vector<std::size_t>{1, 1});
  CHECK(form.ksheaf.res(0) == mat(f.base(), 1, 1, {"1"}));
  for (const auto& p : form.pointwise) CHECK(p.kbasis == mat(f, 1, 1, {"1+1*i"}));
  CHECK(verify_sheaf_descent(in.sgs, form, in.group).pass);
  CHECK(form.iso.is_isomorphism());
}

TEST_CASE("structure maps must commute with restriction") {
  try {
    const Loaded in = load_sheaf_fixture("incompatible_chain_qi.json");
    check_sheaf_gstructure(in.sgs, in.group);
    FAIL("expected NotSheafMorphism");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotSheafMorphism);
    CHECK(e.witness().at("g") == 1);
    CHECK(e.witness().at("x") == 0);
    CHECK(e.witness().at("y") == 1);
  }
}

TEST_CASE("random sheaf structures descend with commuting squares") {
  Random rng(41);
  for (const auto& sf : suite_fields()) {
    for (int n = 0; n < 15; ++n) {
      const PosetPtr p = rng.poset(5);
      const SheafGStructure sgs = rng.sheaf_gstructure(p, sf.group);
      const SheafKForm form = descend_sheaf(sgs, sf.group);
      CHECK(verify_sheaf_descent(sgs, form, sf.group).pass);
      CHECK(form.ksheaf.stalk_dims() == sgs.sheaf.stalk_dims());
      for (std::size_t c = 0; c < p->covers().size(); ++c) {
        auto [x, y] = p->covers()[c];
        const Matrix lhs = sgs.sheaf.res(c) * transpose(form.pointwise[x].kbasis);
        const Matrix rhs = transpose(form.pointwise[y].kbasis) * embed_matrix(form.ksheaf.res(c), sf.ext);
        CHECK(lhs == rhs);
      }
    }
  }
}

TEST_CASE("descent commutes with relabelling points") {
  Random rng(42);
  for (const auto& sf : suite_fields()) {
    const PosetPtr p = rng.poset(5);
    const SheafGStructure sgs = rng.sheaf_gstructure(p, sf.group);
    std::vector<std::size_t> perm(p->size());
    std::iota(perm.begin(), perm.end(), 0);
    std::reverse(perm.begin(), perm.end());
    std::vector<std::pair<std::size_t, std::size_t>> covers;
    for (auto [x, y] : p->covers()) covers.emplace_back(perm[x], perm[y]);
    const PosetPtr q = FinPoset::from_covers(p->size(), covers);
    SheafGStructure moved{relabel(sgs.sheaf, q, perm), std::vector<GStructure>(p->size(), sgs.pointwise[0])};
    for (std::size_t x = 0; x < p->size(); ++x) moved.pointwise[perm[x]] = sgs.pointwise[x];
    const SheafKForm a = descend_sheaf(sgs, sf.group), b = descend_sheaf(moved, sf.group);
    CHECK(verify_sheaf_descent(moved, b, sf.group).pass);
    for (std::size_t x = 0; x < p->size(); ++x) {
      CHECK(a.pointwise[x].kbasis == b.pointwise[perm[x]].kbasis);
      CHECK(a.ksheaf.stalk_dim(x) == b.ksheaf.stalk_dim(perm[x]));
    }
  }
}

TEST_CASE("sections of an extended sheaf are the base change of sections") {
  Random rng(43);
  for (const auto& sf : suite_fields()) {
    for (int n = 0; n < 10; ++n) {
      const PosetPtr p = rng.poset(5);
      const PosetSheaf g = rng.sheaf(p, sf.ext.base());
      const PosetSheaf lg = base_change(g, sf.ext);
      for (std::size_t x = 0; x < p->size(); ++x) {
        const PointSet u = p->up_set(x);
        CHECK(sections(lg, u).space.dim() == sections(g, u).space.dim());
      }
      CHECK(sections(lg, p->all_points()).space.dim() == sections(g, p->all_points()).space.dim());
      const SheafKForm form = descend_sheaf(extend_sheaf(g, sf.group), sf.group);
      CHECK(form.ksheaf == g);
    }
  }
}

TEST_CASE("compatibility reports pass on random data") {
  Random rng(44);
  for (const auto& sf : suite_fields()) {
    const Field& k = sf.ext.base();
    for (int n = 0; n < 5; ++n) {
      const PosetPtr src = rng.poset(4), dst = rng.poset(4);
      const MonotoneMap m = rng.monotone_map(src, dst);
      CHECK(check_compat_pullback(m, rng.sheaf(dst, k), sf.group).pass);
      CHECK(check_compat_pushforward(m, rng.sheaf(src, k), sf.group).pass);
      CHECK(check_compat_hom(rng.sheaf(src, k), rng.sheaf(src, k), sf.group).pass);
      CHECK(check_locally_constant_descent(rng.sheaf_gstructure(src, sf.group), sf.group).pass);
      CHECK(pushforward_comparison(m, rng.sheaf(src, k), sf.group).is_isomorphism());
    }
  }
}

TEST_CASE("equivariant homs descend") {
  Random rng(45);
  for (const auto& sf : suite_fields()) {
    for (int n = 0; n < 5; ++n) {
      const PosetPtr p = rng.poset(4);
      const SheafGStructure a = rng.sheaf_gstructure(p, sf.group, 2), b = rng.sheaf_gstructure(p, sf.group, 2);
      const SheafKForm fa = descend_sheaf(a, sf.group), fb = descend_sheaf(b, sf.group);
      CHECK(equivariant_hom_kdim(a, b, sf.group) == hom_global(fa.ksheaf, fb.ksheaf).size());
      for (const auto& m : hom_global(fa.ksheaf, fb.ksheaf)) {
        // transport 1 ⊗ m to the given structures and recover it
        std::vector<Matrix> comp;
        for (std::size_t x = 0; x < p->size(); ++x)
          comp.push_back(transpose(fb.pointwise[x].kbasis) * embed_matrix(m.at(x), sf.ext) *
                         inverse(transpose(fa.pointwise[x].kbasis)));
        const SheafMorphism lifted(a.sheaf, b.sheaf, comp);
        CHECK(descend_sheaf_morphism(lifted, a, fa, b, fb, sf.group).components() == m.components());
      }
    }
  }
}
