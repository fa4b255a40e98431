#pragma once

#include <functional>
#include <vector>

#include "galdesc/field.hpp"

namespace gdesc {

using Vector = std::vector<FieldElem>;

/// Dense row-major matrix over a field. Matrices act on column vectors, so
/// a map V -> W of dimensions n -> m is an m x n matrix. Empty shapes
/// (0 x n, n x 0) are ordinary values.
class Matrix {
 public:
  Matrix(Field field, std::size_t rows, std::size_t cols);
  Matrix(Field field, std::size_t rows, std::size_t cols, std::vector<FieldElem> entries);

  static Matrix identity(const Field& field, std::size_t n);
  static Matrix from_rows(const Field& field, std::size_t cols, const std::vector<Vector>& rows);
  static Matrix column(const Field& field, const Vector& v);
  static Matrix scalar(const Field& field, const FieldElem& x) { return Matrix(field, 1, 1, {x}); }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  const Field& field() const noexcept { return field_; }
  const FieldElem& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, FieldElem x) { entries_[r * cols_ + c] = std::move(x); }
  const std::vector<FieldElem>& entries() const noexcept { return entries_; }
  Vector row(std::size_t r) const;
  Vector col(std::size_t c) const;
  bool is_zero() const;

  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  Field field_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<FieldElem> entries_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& a, const Vector& v);
Matrix scale(const Matrix& a, const FieldElem& c);
Matrix transpose(const Matrix& a);
Matrix kron(const Matrix& a, const Matrix& b);
Matrix hstack(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);
/// Block-diagonal direct sum.
Matrix direct_sum(const Matrix& a, const Matrix& b);
Matrix submatrix(const Matrix& a, std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols);
/// Applies fn to every entry; the result lives over `target`.
Matrix map_entries(const Matrix& a, const Field& target, const std::function<FieldElem(const FieldElem&)>& fn);
/// Entrywise embedding of a matrix over ext.base() into ext.
Matrix embed_matrix(const Matrix& a, const Field& ext);

struct RrefResult {
  Matrix reduced;
  std::vector<std::size_t> pivots;
};

/// Reduced row echelon form. Pivot search takes the first nonzero entry
/// scanning down the current column.
RrefResult rref(const Matrix& m);
std::size_t rank(const Matrix& m);
bool is_invertible(const Matrix& m);
/// Throws NotSquare or Singular.
Matrix inverse(const Matrix& m);

/// Subspace of F^n stored as its unique RREF row basis, so subspace equality
/// is entrywise basis equality.
class Subspace {
 public:
  /// Row span of `spanning`.
  static Subspace span_of_rows(const Matrix& spanning);
  static Subspace zero(const Field& field, std::size_t n);
  static Subspace full(const Field& field, std::size_t n);

  const Field& field() const noexcept { return basis_.field(); }
  std::size_t ambient_dim() const noexcept { return basis_.cols(); }
  std::size_t dim() const noexcept { return basis_.rows(); }
  const Matrix& basis() const noexcept { return basis_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }
  /// Basis vectors as columns (ambient_dim x dim): the inclusion map.
  Matrix inclusion() const { return transpose(basis_); }
  bool contains(const Vector& v) const;
  /// Coordinates of v in the RREF basis; throws NoSolution if v is outside.
  Vector coordinates(const Vector& v) const;

  friend bool operator==(const Subspace& a, const Subspace& b) { return a.basis_ == b.basis_; }

 private:
  Subspace(Matrix basis, std::vector<std::size_t> pivots) : basis_(std::move(basis)), pivots_(std::move(pivots)) {}
  Matrix basis_;
  std::vector<std::size_t> pivots_;
};

/// {v : m v = 0}.
Subspace kernel(const Matrix& m);
/// Column space of m.
Subspace image(const Matrix& m);
/// Throws DimensionMismatch on ambient mismatch.
Subspace intersect(const Subspace& a, const Subspace& b);
Subspace sum(const Subspace& a, const Subspace& b);
/// ker (t - lambda I)^order; throws NotSquare.
Subspace generalized_eigenspace(const Matrix& t, const FieldElem& lambda, std::size_t order);
/// Particular solution of m v = rhs, free variables set to zero; throws NoSolution.
Vector solve(const Matrix& m, const Vector& rhs);
/// Solves m X = rhs column by column.
Matrix solve_matrix(const Matrix& m, const Matrix& rhs);

/// Matrix of a linear map restricted to invariant subspaces: for each basis
/// vector b_k of `from`, the coordinates of map*b_k in `to` form column k.
/// Throws NoSolution when `map` does not send `from` into `to`.
Matrix restrict_map(const Matrix& map, const Subspace& from, const Subspace& to);

/// Extends the basis of `inner` to a basis of `outer` by adding outer's RREF
/// basis vectors in order whenever they are independent of what has been
/// collected. Returns the added vectors as rows (a complement of inner in outer).
Matrix complement_in(const Subspace& inner, const Subspace& outer);

}  // namespace gdesc
