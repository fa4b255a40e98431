#include "galdesc/linalg.hpp"

#include "galdesc/error.hpp"

namespace gdesc {

namespace {

void require_same_field(const Field& a, const Field& b) {
  if (!(a == b)) fail(ErrorCode::FieldMismatch, "matrices over different fields: " + a.describe() + " vs " + b.describe());
}

void require_shape(bool ok, const char* what) {
  if (!ok) fail(ErrorCode::DimensionMismatch, what);
}

}  // namespace

Matrix::Matrix(Field field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), entries_(rows * cols, field_.zero()) {}

Matrix::Matrix(Field field, std::size_t rows, std::size_t cols, std::vector<FieldElem> entries)
    : field_(std::move(field)), rows_(rows), cols_(cols), entries_(std::move(entries)) {
  require_shape(entries_.size() == rows_ * cols_, "entry count does not match the matrix shape");
}

Matrix Matrix::identity(const Field& field, std::size_t n) {
  Matrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, field.one());
  return m;
}

Matrix Matrix::from_rows(const Field& field, std::size_t cols, const std::vector<Vector>& rows) {
  Matrix m(field, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    require_shape(rows[r].size() == cols, "ragged rows");
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, rows[r][c]);
  }
  return m;
}

Matrix Matrix::column(const Field& field, const Vector& v) { return Matrix(field, v.size(), 1, v); }

Vector Matrix::row(std::size_t r) const {
  return Vector(entries_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                entries_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

Vector Matrix::col(std::size_t c) const {
  Vector v;
  v.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v.push_back((*this)(r, c));
  return v;
}

bool Matrix::is_zero() const {
  for (const auto& e : entries_)
    if (!field_.is_zero(e)) return false;
  return true;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.field_ == b.field_ && a.entries_ == b.entries_;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  require_same_field(a.field(), b.field());
  require_shape(a.cols() == b.rows(), "product shape mismatch");
  const Field& f = a.field();
  Matrix out(f, a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const FieldElem& x = a(i, k);
      if (f.is_zero(x)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (f.is_zero(b(k, j))) continue;
        out.set(i, j, f.add(out(i, j), f.mul(x, b(k, j))));
      }
    }
  }
  return out;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  require_same_field(a.field(), b.field());
  require_shape(a.rows() == b.rows() && a.cols() == b.cols(), "sum shape mismatch");
  std::vector<FieldElem> e;
  e.reserve(a.entries().size());
  for (std::size_t i = 0; i < a.entries().size(); ++i) e.push_back(a.field().add(a.entries()[i], b.entries()[i]));
  return Matrix(a.field(), a.rows(), a.cols(), std::move(e));
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  require_same_field(a.field(), b.field());
  require_shape(a.rows() == b.rows() && a.cols() == b.cols(), "difference shape mismatch");
  std::vector<FieldElem> e;
  e.reserve(a.entries().size());
  for (std::size_t i = 0; i < a.entries().size(); ++i) e.push_back(a.field().sub(a.entries()[i], b.entries()[i]));
  return Matrix(a.field(), a.rows(), a.cols(), std::move(e));
}

Vector operator*(const Matrix& a, const Vector& v) {
  require_shape(a.cols() == v.size(), "matrix-vector shape mismatch");
  return (a * Matrix::column(a.field(), v)).col(0);
}

Matrix scale(const Matrix& a, const FieldElem& c) {
  return map_entries(a, a.field(), [&](const FieldElem& x) { return a.field().mul(x, c); });
}

Matrix transpose(const Matrix& a) {
  Matrix out(a.field(), a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out.set(j, i, a(i, j));
  return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  require_same_field(a.field(), b.field());
  const Field& f = a.field();
  Matrix out(f, a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) out.set(i * b.rows() + k, j * b.cols() + l, f.mul(a(i, j), b(k, l)));
  return out;
}

Matrix hstack(const Matrix& a, const Matrix& b) {
  require_same_field(a.field(), b.field());
  require_shape(a.rows() == b.rows(), "hstack row mismatch");
  Matrix out(a.field(), a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out.set(i, j, a(i, j));
    for (std::size_t j = 0; j < b.cols(); ++j) out.set(i, a.cols() + j, b(i, j));
  }
  return out;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
  require_same_field(a.field(), b.field());
  require_shape(a.cols() == b.cols(), "vstack column mismatch");
  std::vector<FieldElem> e = a.entries();
  e.insert(e.end(), b.entries().begin(), b.entries().end());
  return Matrix(a.field(), a.rows() + b.rows(), a.cols(), std::move(e));
}

Matrix direct_sum(const Matrix& a, const Matrix& b) {
  require_same_field(a.field(), b.field());
  Matrix out(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out.set(i, j, a(i, j));
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) out.set(a.rows() + i, a.cols() + j, b(i, j));
  return out;
}

Matrix submatrix(const Matrix& a, std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols) {
  require_shape(r0 + rows <= a.rows() && c0 + cols <= a.cols(), "submatrix out of range");
  Matrix out(a.field(), rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) out.set(i, j, a(r0 + i, c0 + j));
  return out;
}

Matrix map_entries(const Matrix& a, const Field& target, const std::function<FieldElem(const FieldElem&)>& fn) {
  std::vector<FieldElem> e;
  e.reserve(a.entries().size());
  for (const auto& x : a.entries()) e.push_back(fn(x));
  return Matrix(target, a.rows(), a.cols(), std::move(e));
}

Matrix embed_matrix(const Matrix& a, const Field& ext) {
  require_same_field(a.field(), ext.base());
  return map_entries(a, ext, [&](const FieldElem& x) { return ext.embed(x); });
}

RrefResult rref(const Matrix& m) {
  const Field& f = m.field();
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<FieldElem> e = m.entries();
  auto at = [&](std::size_t r, std::size_t c) -> FieldElem& { return e[r * cols + c]; };
  std::vector<std::size_t> pivots;
  std::size_t next = 0;
  for (std::size_t c = 0; c < cols && next < rows; ++c) {
    std::size_t pr = next;
    while (pr < rows && f.is_zero(at(pr, c))) ++pr;
    if (pr == rows) continue;
    if (pr != next)
      for (std::size_t j = 0; j < cols; ++j) std::swap(at(pr, j), at(next, j));
    const FieldElem inv = f.inv(at(next, c));
    for (std::size_t j = c; j < cols; ++j) at(next, j) = f.mul(at(next, j), inv);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == next || f.is_zero(at(r, c))) continue;
      const FieldElem factor = at(r, c);
      for (std::size_t j = c; j < cols; ++j)
        if (!f.is_zero(at(next, j))) at(r, j) = f.sub(at(r, j), f.mul(factor, at(next, j)));
    }
    pivots.push_back(c);
    ++next;
  }
  return {Matrix(f, rows, cols, std::move(e)), std::move(pivots)};
}

std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

bool is_invertible(const Matrix& m) { return m.is_square() && rank(m) == m.rows(); }

Matrix inverse(const Matrix& m) {
  if (!m.is_square()) fail(ErrorCode::NotSquare, "inverse of a non-square matrix");
  const std::size_t n = m.rows();
  RrefResult r = rref(hstack(m, Matrix::identity(m.field(), n)));
  if (r.pivots.size() < n || (n > 0 && r.pivots[n - 1] != n - 1)) fail(ErrorCode::Singular, "matrix is singular");
  return submatrix(r.reduced, 0, n, n, n);
}

Subspace Subspace::span_of_rows(const Matrix& spanning) {
  RrefResult r = rref(spanning);
  const std::size_t k = r.pivots.size();
  return Subspace(submatrix(r.reduced, 0, 0, k, spanning.cols()), std::move(r.pivots));
}

Subspace Subspace::zero(const Field& field, std::size_t n) { return Subspace(Matrix(field, 0, n), {}); }

Subspace Subspace::full(const Field& field, std::size_t n) {
  std::vector<std::size_t> piv(n);
  for (std::size_t i = 0; i < n; ++i) piv[i] = i;
  return Subspace(Matrix::identity(field, n), std::move(piv));
}

bool Subspace::contains(const Vector& v) const {
  try {
    coordinates(v);
    return true;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoSolution) throw;
    return false;
  }
}

Vector Subspace::coordinates(const Vector& v) const {
  require_shape(v.size() == ambient_dim(), "vector outside the ambient space");
  const Field& f = field();
  Vector c;
  c.reserve(dim());
  for (std::size_t p : pivots_) c.push_back(v[p]);
  // v - sum c_i b_i must vanish
  for (std::size_t j = 0; j < ambient_dim(); ++j) {
    FieldElem acc = v[j];
    for (std::size_t i = 0; i < dim(); ++i)
      if (!f.is_zero(c[i]) && !f.is_zero(basis_(i, j))) acc = f.sub(acc, f.mul(c[i], basis_(i, j)));
    if (!f.is_zero(acc)) fail(ErrorCode::NoSolution, "vector does not lie in the subspace");
  }
  return c;
}

Subspace kernel(const Matrix& m) {
  const Field& f = m.field();
  RrefResult r = rref(m);
  const std::size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (std::size_t p : r.pivots) is_pivot[p] = true;
  std::vector<Vector> gens;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    Vector v(n, f.zero());
    v[free] = f.one();
    for (std::size_t i = 0; i < r.pivots.size(); ++i) v[r.pivots[i]] = f.neg(r.reduced(i, free));
    gens.push_back(std::move(v));
  }
  return Subspace::span_of_rows(Matrix::from_rows(f, n, gens));
}

Subspace image(const Matrix& m) { return Subspace::span_of_rows(transpose(m)); }

Subspace intersect(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim())
    fail(ErrorCode::DimensionMismatch, "intersection of subspaces of different ambient dimension");
  require_same_field(a.field(), b.field());
  // v lies in a iff it is annihilated by every vector orthogonal to a
  Matrix constraints_a = kernel(a.basis()).basis();
  Matrix constraints_b = kernel(b.basis()).basis();
  return kernel(vstack(constraints_a, constraints_b));
}

Subspace sum(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) fail(ErrorCode::DimensionMismatch, "sum of subspaces of different ambient dimension");
  return Subspace::span_of_rows(vstack(a.basis(), b.basis()));
}

Subspace generalized_eigenspace(const Matrix& t, const FieldElem& lambda, std::size_t order) {
  if (!t.is_square()) fail(ErrorCode::NotSquare, "generalized eigenspace of a non-square matrix");
  const std::size_t n = t.rows();
  Matrix shifted = t - scale(Matrix::identity(t.field(), n), lambda);
  Matrix power = Matrix::identity(t.field(), n);
  for (std::size_t k = 0; k < order; ++k) power = power * shifted;
  return kernel(power);
}

Vector solve(const Matrix& m, const Vector& rhs) {
  require_shape(m.rows() == rhs.size(), "right-hand side length mismatch");
  const Field& f = m.field();
  RrefResult r = rref(hstack(m, Matrix::column(f, rhs)));
  const std::size_t n = m.cols();
  if (!r.pivots.empty() && r.pivots.back() == n) fail(ErrorCode::NoSolution, "linear system is inconsistent");
  Vector v(n, f.zero());
  for (std::size_t i = 0; i < r.pivots.size(); ++i) v[r.pivots[i]] = r.reduced(i, n);
  return v;
}

Matrix solve_matrix(const Matrix& m, const Matrix& rhs) {
  require_shape(m.rows() == rhs.rows(), "right-hand side row mismatch");
  Matrix out(m.field(), m.cols(), rhs.cols());
  for (std::size_t c = 0; c < rhs.cols(); ++c) {
    Vector v = solve(m, rhs.col(c));
    for (std::size_t r = 0; r < v.size(); ++r) out.set(r, c, v[r]);
  }
  return out;
}

Matrix restrict_map(const Matrix& map, const Subspace& from, const Subspace& to) {
  require_shape(map.cols() == from.ambient_dim() && map.rows() == to.ambient_dim(), "restrict_map shape mismatch");
  Matrix out(map.field(), to.dim(), from.dim());
  for (std::size_t k = 0; k < from.dim(); ++k) {
    Vector image_k = map * from.basis().row(k);
    Vector c = to.coordinates(image_k);
    for (std::size_t r = 0; r < c.size(); ++r) out.set(r, k, c[r]);
  }
  return out;
}

Matrix complement_in(const Subspace& inner, const Subspace& outer) {
  Subspace acc = inner;
  std::vector<Vector> added;
  for (std::size_t i = 0; i < outer.dim(); ++i) {
    Vector v = outer.basis().row(i);
    if (acc.contains(v)) continue;
    added.push_back(v);
    acc = sum(acc, Subspace::span_of_rows(Matrix::from_rows(outer.field(), outer.ambient_dim(), {v})));
  }
  return Matrix::from_rows(outer.field(), outer.ambient_dim(), added);
}

}  // namespace gdesc
