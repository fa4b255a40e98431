#include <doctest.h>

#include "galdesc/complexes.hpp"
#include "support.hpp"

using namespace gdesc;
using testing::mat;

namespace {

struct Loaded {
  Field field;
  GaloisGroup group;
  BoundedComplex complex;
  StrictComplexGStructure structure;
};

Loaded load_complex_fixture(const std::string& name) {
  const Json doc = testing::load_fixture(name);
  FieldSpec spec = field_from_json(doc.at("field"), JsonPath() / "field", false);
  GaloisGroup group = GaloisGroup::compute(spec.field, spec.hints);
  BoundedComplex c = complex_from_json(doc.at("complex"), spec.field, JsonPath() / "complex");
  StrictComplexGStructure s = complex_structure_from_json(doc.at("structure"), c, group, JsonPath() / "structure");
  return {spec.field, group, c, s};
}

// dim ker d^i_x - rank d^{i-1}_x, straight from the stalk matrices.
std::size_t cohomology_dim_oracle(const BoundedComplex& c, int deg, std::size_t x) {
  return kernel(c.diff(deg).at(x)).dim() - rank(c.diff(deg - 1).at(x));
}

}  // namespace

TEST_CASE("twisted two-term complex over Q(i)") {
  const Loaded in = load_complex_fixture("twisted_complex_qi.json");
  check_complex_gstructure(in.complex, in.structure, in.group);
  const ComplexKForm form = descend_complex_strict(in.complex, in.structure, in.group);
  CHECK(form.kcomplex.diff(0).at(0) == mat(in.field.base(), 1, 1, {"1"}));
  CHECK(two_term_descent_via_cohomology(in.complex, in.structure, in.group).pass);
  CHECK(quasi_iso_check(form.iso).pass);
}

TEST_CASE("structures that only commute up to homotopy are not strict") {
  for (const std::string name : {"homotopy_only_complex_qi.json", "noncommuting_complex_qi.json"}) {
    const Loaded in = load_complex_fixture(name);
    try {
      check_complex_gstructure(in.complex, in.structure, in.group);
      FAIL("expected NotStrict");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotStrict);
      CHECK(e.witness().count("deg") == 1);
      CHECK(e.witness().at("g") == 1);
    }
  }
}

TEST_CASE("d squared must vanish") {
  const Field q = Field::rationals();
  const PosetSheaf f = PosetSheaf::constant(FinPoset::point(), q, 1);
  const SheafMorphism one = SheafMorphism::identity(f);
  CHECK(testing::error_code_of([&] { BoundedComplex(0, {f, f, f}, {one, one}); }) == ErrorCode::NotChainMap);
}

TEST_CASE("cohomology dimensions are stable under base change") {
  Random rng(51);
  for (const auto& sf : suite_fields()) {
    for (int n = 0; n < 10; ++n) {
      const PosetPtr p = rng.poset(4);
      const BoundedComplex c = rng.complex(p, sf.ext.base());
      const BoundedComplex lc = base_change(c, sf.ext);
      for (int d = c.min_deg(); d <= c.max_deg(); ++d) {
        const PosetSheaf h = cohomology_sheaf(c, d), lh = cohomology_sheaf(lc, d);
        for (std::size_t x = 0; x < p->size(); ++x) {
          CHECK(h.stalk_dim(x) == cohomology_dim_oracle(c, d, x));
          CHECK(lh.stalk_dim(x) == h.stalk_dim(x));
        }
        CHECK(lh == base_change(h, sf.ext));
      }
    }
  }
}

TEST_CASE("strict descent round trips") {
  Random rng(52);
  for (const auto& sf : suite_fields()) {
    for (int n = 0; n < 5; ++n) {
      const PosetPtr p = rng.poset(4);
      const BoundedComplex c = rng.complex(p, sf.ext.base());
      const ExtendedComplex ext = extend_complex(c, sf.group);
      check_complex_gstructure(ext.complex, ext.structure, sf.group);
      const ComplexKForm form = descend_complex_strict(ext.complex, ext.structure, sf.group);
      for (int d = c.min_deg(); d <= c.max_deg(); ++d) {
        CHECK(form.kcomplex.term(d) == c.term(d));
        CHECK(form.kcomplex.diff(d).components() == c.diff(d).components());
      }
      // transported structures descend to an isomorphic complex
      std::vector<std::vector<Matrix>> b;
      for (int d = c.min_deg(); d <= c.max_deg(); ++d) {
        b.emplace_back();
        for (std::size_t x = 0; x < p->size(); ++x) b.back().push_back(rng.invertible(sf.ext, c.term(d).stalk_dim(x)));
      }
      const ExtendedComplex tw = twist_complex(ext, b, sf.group);
      const ComplexKForm tform = descend_complex_strict(tw.complex, tw.structure, sf.group);
      CHECK(quasi_iso_check(tform.iso).pass);
      for (int d = c.min_deg(); d <= c.max_deg(); ++d) {
        CHECK(tform.iso.at(d).is_isomorphism());
        const SheafGStructure hs = cohomology_structure(tw.complex, tw.structure, d, sf.group);
        const SheafKForm hf = descend_sheaf(hs, sf.group);
        CHECK(hf.ksheaf.stalk_dims() == cohomology_sheaf(c, d).stalk_dims());
      }
      if (c.max_deg() - c.min_deg() == 1) CHECK(two_term_descent_via_cohomology(tw.complex, tw.structure, sf.group).pass);
    }
  }
}

TEST_CASE("truncations split the cohomology") {
  Random rng(53);
  const SuiteField sf = suite_field("Qi");
  for (int n = 0; n < 10; ++n) {
    const PosetPtr p = rng.poset(4);
    const BoundedComplex c = rng.complex(p, sf.ext);
    for (int a = c.min_deg(); a <= c.max_deg(); ++a) {
      const Truncation le = truncate_le(c, a), ge = truncate_ge(c, a);
      for (int d = c.min_deg(); d <= c.max_deg(); ++d) {
        const auto full = cohomology_sheaf(c, d).stalk_dims();
        const auto low = cohomology_sheaf(le.complex, d).stalk_dims();
        const auto high = cohomology_sheaf(ge.complex, d).stalk_dims();
        for (std::size_t x = 0; x < p->size(); ++x) {
          CHECK(low[x] == (d <= a ? full[x] : 0));
          CHECK(high[x] == (d >= a ? full[x] : 0));
        }
        if (d <= a) CHECK(induced_on_cohomology(le.map, d).is_isomorphism());
        if (d >= a) CHECK(induced_on_cohomology(ge.map, d).is_isomorphism());
      }
    }
  }
}

TEST_CASE("identity chain map is a quasi-isomorphism") {
  Random rng(54);
  const PosetPtr p = rng.poset(3);
  const BoundedComplex c = rng.complex(p, Field::rationals());
  CHECK(quasi_iso_check(ChainMap::identity(c)).pass);
  const BoundedComplex one = BoundedComplex::concentrated(2, PosetSheaf::constant(p, Field::rationals(), 1));
  CHECK(cohomology_sheaf(one, 2).stalk_dims() == std::vector<std::size_t>(p->size(), 1));
  CHECK(cohomology_sheaf(one, 1).total_dim() == 0);
}
