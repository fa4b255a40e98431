#include <doctest.h>

#include "galdesc/galois_group.hpp"
#include "galdesc/polynomial.hpp"
#include "support.hpp"

using namespace gdesc;
using testing::quotient;

TEST_CASE("gaussian rationals") {
  const Field qi = quotient(Field::rationals(), {1, 0, 1}, "i");
  const FieldElem i = qi.generator();
  CHECK(qi.mul(i, i) == qi.from_int(-1));
  CHECK(qi.format(qi.add(qi.one(), i)) == "1+1*i");
  CHECK(qi.parse("1+1*i") == qi.add(qi.one(), i));
  CHECK(qi.mul(qi.parse("1+1*i"), qi.inv(qi.parse("1+1*i"))) == qi.one());
  CHECK(qi.degree() == 2);
  CHECK(qi.characteristic() == 0);
  CHECK_FALSE(qi.in_base(i));
  CHECK(qi.in_base(qi.from_rational(Rational(3, 7))));
}

TEST_CASE("F4 arithmetic and Frobenius") {
  const Field f4 = quotient(Field::prime(2), {1, 1, 1}, "w");
  const FieldElem w = f4.generator();
  CHECK(f4.mul(w, w) == f4.add(w, f4.one()));
  CHECK(f4.pow(w, 3) == f4.one());
  CHECK(f4.elements().size() == 4);
  CHECK(f4.order() == 4u);
  const GaloisGroup g = GaloisGroup::compute(f4);
  REQUIRE(g.size() == 2);
  CHECK(g.is_galois());
  CHECK(g[1].apply(w) == f4.mul(w, w));
  for (const auto& x : f4.elements()) CHECK(g[1].apply(x) == f4.pow(x, 2));
}

TEST_CASE("Frobenius generates a cyclic group on F8") {
  const Field f8 = quotient(Field::prime(2), {1, 1, 0, 1}, "b");
  const GaloisGroup g = GaloisGroup::compute(f8);
  REQUIRE(g.size() == 3);
  CHECK(g.compose(1, 1) == 2);
  CHECK(g.compose(1, 2) == 0);
  CHECK(g.inverse(1) == 2);
  for (const auto& x : f8.elements()) CHECK(g[2].apply(x) == f8.pow(x, 4));
}

TEST_CASE("prime field construction") {
  CHECK(testing::error_code_of([] { Field::prime(9); }) == ErrorCode::NotPrime);
  CHECK(testing::error_code_of([] { Field::prime(1); }) == ErrorCode::NotPrime);
  const Field f7 = Field::prime(7);
  CHECK(f7.format(f7.from_int(-1)) == "6 mod 7");
  CHECK(f7.parse("6 mod 7") == f7.from_int(6));
  CHECK(f7.mul(f7.from_int(3), f7.inv(f7.from_int(3))) == f7.one());
}

TEST_CASE("reducible moduli are rejected") {
  CHECK(testing::error_code_of([] { quotient(Field::prime(2), {1, 0, 1}, "a"); }) == ErrorCode::Reducible);
  CHECK(testing::error_code_of([] { quotient(Field::rationals(), {-1, 0, 1}, "a"); }) == ErrorCode::Reducible);
  CHECK(testing::error_code_of([] { quotient(Field::prime(3), {2, 0, 0, 1}, "a"); }) == ErrorCode::Reducible);
}

TEST_CASE("x^3 - 2 is not Galois over Q") {
  const Field k = quotient(Field::rationals(), {-2, 0, 0, 1}, "c");
  const GaloisGroup g = GaloisGroup::compute(k);
  CHECK(g.size() == 1);
  CHECK_FALSE(g.is_galois());
  CHECK(testing::error_code_of([&] { coerce_down(g, k.one()); }) == ErrorCode::NotGalois);
}

TEST_CASE("hints must be roots and close under composition") {
  const Field qi = quotient(Field::rationals(), {1, 0, 1}, "i");
  const std::vector<FieldElem> bad{qi.parse("2*i")};
  CHECK(testing::error_code_of([&] { GaloisGroup::compute(qi, bad); }) == ErrorCode::HintNotRoot);
  const std::vector<FieldElem> good{qi.parse("-1*i")};
  const GaloisGroup g = GaloisGroup::compute(qi, good);
  CHECK(g.size() == 2);
  CHECK(g.is_galois());
  CHECK(coerce_down(g, qi.from_int(5)) == Field::rationals().from_int(5));
  CHECK(testing::error_code_of([&] { coerce_down(g, qi.generator()); }) == ErrorCode::NotFixed);
}

TEST_CASE("towers of depth two") {
  const Field f4 = quotient(Field::prime(2), {1, 1, 1}, "w");
  // y^2 + y + w is irreducible over F4, giving F16
  std::vector<FieldElem> m{f4.generator(), f4.one(), f4.one()};
  const Field f16 = Field::extension(f4, m, "y");
  CHECK(f16.depth() == 2);
  CHECK(f16.absolute_degree() == 4);
  CHECK(f16.elements().size() == 16);
  const GaloisGroup g = GaloisGroup::compute(f16);
  REQUIRE(g.size() == 2);
  for (const auto& x : f16.elements()) {
    CHECK(g[1].apply(x) == f16.pow(x, 4));
    CHECK(g.fixes(x) == f16.in_base(x));
  }
  CHECK(testing::error_code_of([&] { Field::extension(f16, {f16.one(), f16.one(), f16.one()}, "z"); }) ==
        ErrorCode::TowerTooDeep);
}

TEST_CASE("field axioms on random elements") {
  Random rng(11);
  for (const auto& sf : suite_fields()) {
    const Field& f = sf.ext;
    for (int n = 0; n < 500; ++n) {
      const FieldElem a = rng.element(f), b = rng.element(f), c = rng.element(f);
      REQUIRE(f.contains(a));
      CHECK(f.add(a, b) == f.add(b, a));
      CHECK(f.mul(a, b) == f.mul(b, a));
      CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
      CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
      CHECK(f.add(a, f.neg(a)) == f.zero());
      if (!f.is_zero(a)) CHECK(f.mul(a, f.inv(a)) == f.one());
      CHECK(f.parse(f.format(a)) == a);
    }
  }
}

TEST_CASE("group elements are ring automorphisms and form a group") {
  Random rng(12);
  for (const auto& sf : suite_fields()) {
    const Field& f = sf.ext;
    const GaloisGroup& g = sf.group;
    REQUIRE(g.size() == static_cast<std::size_t>(f.degree()));
    REQUIRE(g.is_galois());
    for (std::size_t a = 0; a < g.size(); ++a) {
      CHECK(g.compose(a, g.inverse(a)) == GaloisGroup::identity());
      for (std::size_t b = 0; b < g.size(); ++b)
        for (std::size_t c = 0; c < g.size(); ++c)
          CHECK(g.compose(g.compose(a, b), c) == g.compose(a, g.compose(b, c)));
    }
    for (int n = 0; n < 50; ++n) {
      const FieldElem x = rng.element(f), y = rng.element(f);
      for (std::size_t a = 0; a < g.size(); ++a) {
        CHECK(g[a].apply(f.mul(x, y)) == f.mul(g[a].apply(x), g[a].apply(y)));
        CHECK(g[a].apply(f.add(x, y)) == f.add(g[a].apply(x), g[a].apply(y)));
        for (std::size_t b = 0; b < g.size(); ++b)
          CHECK(g[g.compose(a, b)].apply(x) == g[a].apply(g[b].apply(x)));
      }
    }
  }
}

TEST_CASE("polynomial division and gcd") {
  const Field q = Field::rationals();
  auto P = [&](std::initializer_list<int> cs) {
    Poly p;
    for (int c : cs) p.push_back(q.from_int(c));
    poly_trim(q, p);
    return p;
  };
  const Poly a = P({-1, 0, 0, 1}), b = P({-1, 1});
  auto [quo, rem] = poly_divmod(q, a, b);
  CHECK(quo == P({1, 1, 1}));
  CHECK(rem.empty());
  CHECK(poly_gcd(q, P({-1, 0, 1}), P({1, 2, 1})) == P({1, 1}));
  const PolyExtGcd e = poly_ext_gcd(q, P({1, 0, 1}), P({0, 1}));
  CHECK(poly_add(q, poly_mul(q, e.s, P({1, 0, 1})), poly_mul(q, e.t, P({0, 1}))) == e.gcd);
  CHECK(rational_irreducibility({Rational(-2), 0, 0, 1}).verdict == Verdict::Irreducible);
  CHECK(rational_irreducibility({Rational(-4), 0, 1}).verdict == Verdict::Reducible);
}

TEST_CASE("finite irreducibility against brute force over F2") {
  const Field f2 = Field::prime(2);
  for (unsigned bits = 0; bits < 64; ++bits) {
    Poly p;
    for (int k = 0; k < 6; ++k) p.push_back(f2.from_int((bits >> k) & 1));
    p.push_back(f2.one());
    // brute force: no monic factor of degree 1..3
    bool reducible = false;
    for (int d = 1; d <= 3 && !reducible; ++d)
      for (unsigned fb = 0; fb < (1u << d) && !reducible; ++fb) {
        Poly f;
        for (int k = 0; k < d; ++k) f.push_back(f2.from_int((fb >> k) & 1));
        f.push_back(f2.one());
        reducible = poly_divmod(f2, p, f).second.empty();
      }
    CHECK(poly_is_irreducible_finite(f2, p) == !reducible);
  }
}
