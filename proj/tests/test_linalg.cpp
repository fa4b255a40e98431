#include <doctest.h>

#include "galdesc/linalg.hpp"
#include "support.hpp"

using namespace gdesc;
using testing::mat;

namespace {

// Every vector of F_2^n, enumerated from the bits of an index.
std::vector<Vector> all_vectors_f2(const Field& f2, std::size_t n) {
  std::vector<Vector> out;
  for (unsigned bits = 0; bits < (1u << n); ++bits) {
    Vector v;
    for (std::size_t k = 0; k < n; ++k) v.push_back(f2.from_int((bits >> k) & 1));
    out.push_back(v);
  }
  return out;
}

bool is_zero_vector(const Field& f, const Vector& v) {
  for (const auto& x : v)
    if (!f.is_zero(x)) return false;
  return true;
}

}  // namespace

TEST_CASE("rref of a small rational matrix") {
  const Field q = Field::rationals();
  const Matrix m = mat(q, 2, 3, {"1", "2", "3", "2", "4", "7"});
  const RrefResult r = rref(m);
  CHECK(r.pivots == std::vector<std::size_t>{0, 2});
  CHECK(r.reduced == mat(q, 2, 3, {"1", "2", "0", "0", "0", "1"}));
  CHECK(rank(m) == 2);
  const Subspace k = kernel(m);
  REQUIRE(k.dim() == 1);
  CHECK(k.basis() == mat(q, 1, 3, {"1", "-1/2", "0"}));
  CHECK(is_zero_vector(q, m * k.basis().row(0)));
}

TEST_CASE("inverse and singular matrices") {
  const Field qi = testing::quotient(Field::rationals(), {1, 0, 1}, "i");
  const Matrix m = mat(qi, 2, 2, {"1", "i", "0", "1+1*i"});
  const Matrix mi = inverse(m);
  CHECK(m * mi == Matrix::identity(qi, 2));
  CHECK(mi * m == Matrix::identity(qi, 2));
  CHECK(testing::error_code_of([&] { inverse(mat(qi, 2, 2, {"1", "i", "i", "-1"})); }) == ErrorCode::Singular);
  CHECK(testing::error_code_of([&] { inverse(Matrix(qi, 2, 3)); }) == ErrorCode::NotSquare);
}

TEST_CASE("empty shapes behave") {
  const Field q = Field::rationals();
  const Matrix a(q, 0, 3), b(q, 3, 0);
  CHECK((b * a).rows() == 3);
  CHECK((b * a).is_zero());
  CHECK((a * b).rows() == 0);
  CHECK(kernel(a).dim() == 3);
  CHECK(kernel(b).dim() == 0);
  CHECK(inverse(Matrix(q, 0, 0)).rows() == 0);
}

TEST_CASE("kernel over F2 matches brute force") {
  const Field f2 = Field::prime(2);
  Random rng(3);
  for (int n = 0; n < 200; ++n) {
    const std::size_t rows = rng.between(1, 4), cols = rng.between(1, 5);
    const Matrix m = rng.matrix(f2, rows, cols);
    const Subspace k = kernel(m);
    std::size_t count = 0;
    for (const auto& v : all_vectors_f2(f2, cols)) {
      const bool in_kernel = is_zero_vector(f2, m * v);
      count += in_kernel;
      CHECK(k.contains(v) == in_kernel);
    }
    CHECK(count == (1u << k.dim()));
    CHECK(rank(m) + k.dim() == cols);
  }
}

TEST_CASE("rank-nullity, rref idempotence and solve") {
  Random rng(4);
  for (const auto& sf : suite_fields()) {
    for (int n = 0; n < 40; ++n) {
      const std::size_t rows = rng.between(0, 4), cols = rng.between(0, 4);
      const Matrix m = rng.matrix(sf.ext, rows, cols);
      const RrefResult r = rref(m);
      CHECK(rref(r.reduced).reduced == r.reduced);
      CHECK(r.pivots.size() == rank(m));
      CHECK(rank(m) + kernel(m).dim() == cols);
      CHECK(image(m).dim() == rank(m));
      CHECK(rank(transpose(m)) == rank(m));
      if (cols > 0) {
        Vector x;
        for (std::size_t k = 0; k < cols; ++k) x.push_back(rng.element(sf.ext));
        const Vector rhs = m * x;
        CHECK(m * solve(m, rhs) == rhs);
      }
      const std::size_t d = rng.between(1, 4);
      const Matrix inv = rng.invertible(sf.ext, d);
      CHECK(inv * inverse(inv) == Matrix::identity(sf.ext, d));
    }
  }
}

TEST_CASE("intersections and sums of subspaces") {
  Random rng(5);
  for (const auto& sf : suite_fields()) {
    for (int n = 0; n < 40; ++n) {
      const std::size_t dim = rng.between(1, 4);
      const Subspace a = Subspace::span_of_rows(rng.matrix(sf.ext, rng.between(0, 3), dim));
      const Subspace b = Subspace::span_of_rows(rng.matrix(sf.ext, rng.between(0, 3), dim));
      const Subspace i = intersect(a, b), s = sum(a, b);
      CHECK(i.dim() + s.dim() == a.dim() + b.dim());
      CHECK(intersect(a, b) == intersect(b, a));
      CHECK(intersect(a, a) == a);
      CHECK(intersect(i, a) == i);
      CHECK(sum(i, a) == a);
      for (std::size_t r = 0; r < i.dim(); ++r) {
        CHECK(a.contains(i.basis().row(r)));
        CHECK(b.contains(i.basis().row(r)));
      }
      const Matrix c = complement_in(i, a);
      CHECK(c.rows() + i.dim() == a.dim());
      CHECK(sum(i, Subspace::span_of_rows(c)) == a);
    }
  }
}

TEST_CASE("generalized eigenspace of a Jordan block") {
  const Field q = Field::rationals();
  const Matrix t = mat(q, 3, 3, {"1", "1", "0", "0", "1", "0", "0", "0", "2"});
  CHECK(generalized_eigenspace(t, q.one(), 3).dim() == 2);
  CHECK(generalized_eigenspace(t, q.from_int(2), 3).dim() == 1);
  CHECK(kernel(t - Matrix::identity(q, 3)).dim() == 1);
}

TEST_CASE("restrict_map and coordinates") {
  const Field q = Field::rationals();
  const Matrix t = mat(q, 2, 2, {"2", "0", "0", "3"});
  const Subspace line = Subspace::span_of_rows(mat(q, 1, 2, {"0", "5"}));
  CHECK(restrict_map(t, line, line) == mat(q, 1, 1, {"3"}));
  CHECK(line.coordinates({q.zero(), q.from_int(2)}) == Vector{q.from_int(2)});
  CHECK(testing::error_code_of([&] { line.coordinates({q.one(), q.zero()}); }) == ErrorCode::NoSolution);
}
