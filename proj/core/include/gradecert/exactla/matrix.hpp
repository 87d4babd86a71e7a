#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gradecert/exactla/scalar.hpp"

namespace gradecert::la {

struct Triplet {
  std::size_t row;
  std::size_t col;
  Scalar value;
};

/// Dense row-major matrix over a single field.
class Matrix {
 public:
  Matrix() = default;
  Matrix(Field f, std::size_t rows, std::size_t cols)
      : field_(f), rows_(rows), cols_(cols), data_(rows * cols, Scalar(f)) {}

  static Matrix identity(Field f, std::size_t n);
  static Matrix from_ints(Field f, std::initializer_list<std::initializer_list<long long>> rows);
  static Matrix from_rows(Field f, std::size_t cols, const std::vector<Vector>& rows);
  static Matrix from_triplets(Field f, std::size_t rows, std::size_t cols, std::span<const Triplet> entries);
  static Matrix column(const Vector& v);

  Field field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, Scalar v);

  Vector row(std::size_t r) const;
  Vector col(std::size_t c) const;
  std::vector<Vector> row_vectors() const;
  void append_row(const Vector& v);

  Matrix transpose() const;
  Matrix select_rows(std::span<const std::size_t> idx) const;
  Matrix select_cols(std::span<const std::size_t> idx) const;
  bool is_zero() const;

  /// this * v
  Vector apply(const Vector& v) const;
  /// v^T * this
  Vector apply_left(const Vector& v) const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b);

  std::string to_string() const;

 private:
  Field field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

Matrix vstack(const Matrix& a, const Matrix& b);
Matrix hstack(const Matrix& a, const Matrix& b);

/// Row-sparse matrix; the storage used for structure constants and module actions.
class SparseMatrix {
 public:
  using Entry = std::pair<std::size_t, Scalar>;

  SparseMatrix() = default;
  SparseMatrix(Field f, std::size_t rows, std::size_t cols) : field_(f), rows_(rows), cols_(cols), row_data_(rows) {}

  static SparseMatrix from_dense(const Matrix& m);
  static SparseMatrix identity(Field f, std::size_t n);

  Field field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nonzeros() const;
  bool is_zero() const { return nonzeros() == 0; }

  const std::vector<Entry>& row(std::size_t r) const { return row_data_[r]; }
  /// Appends or accumulates; entries within a row are kept sorted by column.
  void add(std::size_t r, std::size_t c, const Scalar& v);
  Scalar get(std::size_t r, std::size_t c) const;

  Matrix to_dense() const;
  SparseMatrix transpose() const;
  Vector apply(const Vector& v) const;
  SparseMatrix scaled(const Scalar& s) const;

  friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b);
  friend SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b);
  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b);

 private:
  Field field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::vector<Entry>> row_data_;
};

struct RrefResult {
  Matrix reduced;
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_cols;
};

RrefResult rref(const Matrix& m);
std::size_t rank(const Matrix& m);

struct SolveResult {
  /// m * particular == rhs, when solvable.
  std::optional<Matrix> particular;
  /// Rows span ker(m) = {x : m x = 0}.
  Matrix nullspace_basis;
};

SolveResult solve_and_nullspace(const Matrix& m, const std::optional<Matrix>& rhs = std::nullopt);
Matrix nullspace(const Matrix& m);
/// Rows span {x : x m = 0}.
Matrix left_nullspace(const Matrix& m);
std::optional<Matrix> inverse(const Matrix& m);

/// Incrementally maintained basis of a subspace of F^n in semi-echelon form.
/// Each stored row has a unit pivot, and rows are reduced against every earlier pivot.
class SubspaceBuilder {
 public:
  SubspaceBuilder(Field f, std::size_t ambient) : field_(f), ambient_(ambient) {}

  Field field() const { return field_; }
  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return rows_.size(); }

  /// Returns true when v enlarged the span.
  bool add(const Vector& v);
  bool contains(const Vector& v) const;
  Vector reduce(Vector v) const;

  const std::vector<Vector>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  Matrix basis() const;

 private:
  Field field_;
  std::size_t ambient_;
  std::vector<Vector> rows_;
  std::vector<std::size_t> pivots_;
};

/// Expresses vectors in coordinates relative to a fixed list of independent vectors.
class BasisSolver {
 public:
  BasisSolver(Field f, std::size_t ambient, const std::vector<Vector>& basis);

  std::size_t size() const { return count_; }
  /// Coordinates c with sum c_i basis_i == v, or nullopt when v is outside the span.
  std::optional<Vector> coordinates(const Vector& v) const;
  /// As coordinates(), but throws Internal when v is outside the span.
  Vector coords_or_throw(const Vector& v) const;

 private:
  Field field_;
  std::size_t ambient_;
  std::size_t count_;
  std::vector<Vector> rows_;       // semi-echelon rows
  std::vector<Vector> combos_;     // row_k = sum combos_k[i] basis_i
  std::vector<std::size_t> pivots_;
};

}  // namespace gradecert::la
