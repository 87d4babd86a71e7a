#include "gradecert/exactla/matrix.hpp"

#include <algorithm>

namespace gradecert::la {

Matrix Matrix::identity(Field f, std::size_t n) {
  Matrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::one(f);
  return m;
}

Matrix Matrix::from_ints(Field f, std::initializer_list<std::initializer_list<long long>> rows) {
  std::size_t cols = rows.size() ? rows.begin()->size() : 0;
  Matrix m(f, rows.size(), cols);
  std::size_t r = 0;
  for (const auto& row : rows) {
    require(row.size() == cols, ErrorKind::ShapeMismatch, "ragged initializer");
    std::size_t c = 0;
    for (long long v : row) m(r, c++) = Scalar(f, v);
    ++r;
  }
  return m;
}

Matrix Matrix::from_rows(Field f, std::size_t cols, const std::vector<Vector>& rows) {
  Matrix m(f, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    require(rows[r].size() == cols, ErrorKind::ShapeMismatch, "row length differs from column count");
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, rows[r][c]);
  }
  return m;
}

Matrix Matrix::from_triplets(Field f, std::size_t rows, std::size_t cols, std::span<const Triplet> entries) {
  Matrix m(f, rows, cols);
  for (const auto& t : entries) {
    require(t.row < rows && t.col < cols, ErrorKind::ShapeMismatch, "triplet outside matrix");
    require(t.value.field() == f, ErrorKind::FieldMismatch, "triplet value in wrong field");
    m(t.row, t.col) += t.value;
  }
  return m;
}

Matrix Matrix::column(const Vector& v) {
  require(!v.empty(), ErrorKind::ShapeMismatch, "empty column");
  Matrix m(v[0].field(), v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m.set(i, 0, v[i]);
  return m;
}

void Matrix::set(std::size_t r, std::size_t c, Scalar v) {
  require(r < rows_ && c < cols_, ErrorKind::ShapeMismatch, "index out of range");
  require(v.field() == field_, ErrorKind::FieldMismatch, "entry field differs from matrix field");
  data_[r * cols_ + c] = std::move(v);
}

Vector Matrix::row(std::size_t r) const {
  return Vector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

Vector Matrix::col(std::size_t c) const {
  Vector v;
  v.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v.push_back((*this)(r, c));
  return v;
}

std::vector<Vector> Matrix::row_vectors() const {
  std::vector<Vector> out;
  out.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out.push_back(row(r));
  return out;
}

void Matrix::append_row(const Vector& v) {
  if (rows_ == 0 && cols_ == 0) cols_ = v.size();
  require(v.size() == cols_, ErrorKind::ShapeMismatch, "appended row has wrong length");
  for (const auto& x : v) require(x.field() == field_, ErrorKind::FieldMismatch, "appended row in wrong field");
  data_.insert(data_.end(), v.begin(), v.end());
  ++rows_;
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Matrix Matrix::select_rows(std::span<const std::size_t> idx) const {
  Matrix m(field_, idx.size(), cols_);
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t c = 0; c < cols_; ++c) m(i, c) = (*this)(idx[i], c);
  return m;
}

Matrix Matrix::select_cols(std::span<const std::size_t> idx) const {
  Matrix m(field_, rows_, idx.size());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t i = 0; i < idx.size(); ++i) m(r, i) = (*this)(r, idx[i]);
  return m;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return s.is_zero(); });
}

Vector Matrix::apply(const Vector& v) const {
  require(v.size() == cols_, ErrorKind::ShapeMismatch, "matrix-vector shape mismatch");
  Vector out = zero_vector(field_, rows_);
  for (std::size_t c = 0; c < cols_; ++c) {
    if (v[c].is_zero()) continue;
    for (std::size_t r = 0; r < rows_; ++r) {
      const Scalar& a = (*this)(r, c);
      if (!a.is_zero()) out[r].add_product(a, v[c]);
    }
  }
  return out;
}

Vector Matrix::apply_left(const Vector& v) const {
  require(v.size() == rows_, ErrorKind::ShapeMismatch, "vector-matrix shape mismatch");
  Vector out = zero_vector(field_, cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    if (v[r].is_zero()) continue;
    for (std::size_t c = 0; c < cols_; ++c) {
      const Scalar& a = (*this)(r, c);
      if (!a.is_zero()) out[c].add_product(v[r], a);
    }
  }
  return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  require(a.cols_ == b.rows_, ErrorKind::ShapeMismatch, "matrix product shape mismatch");
  require(a.field_ == b.field_, ErrorKind::FieldMismatch, "matrix product across fields");
  Matrix out(a.field_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Scalar& x = a(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const Scalar& y = b(k, j);
        if (!y.is_zero()) out(i, j).add_product(x, y);
      }
    }
  return out;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  require(a.rows_ == b.rows_ && a.cols_ == b.cols_, ErrorKind::ShapeMismatch, "matrix sum shape mismatch");
  Matrix out = a;
  for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] += b.data_[i];
  return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  require(a.rows_ == b.rows_ && a.cols_ == b.cols_, ErrorKind::ShapeMismatch, "matrix difference shape mismatch");
  Matrix out = a;
  for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] -= b.data_[i];
  return out;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::string Matrix::to_string() const {
  std::string s = "[";
  for (std::size_t r = 0; r < rows_; ++r) {
    if (r) s += ", ";
    s += la::to_string(row(r));
  }
  return s + "]";
}

Matrix vstack(const Matrix& a, const Matrix& b) {
  if (a.rows() == 0) return b;
  if (b.rows() == 0) return a;
  require(a.cols() == b.cols(), ErrorKind::ShapeMismatch, "vstack column mismatch");
  Matrix out = a;
  for (std::size_t r = 0; r < b.rows(); ++r) out.append_row(b.row(r));
  return out;
}

Matrix hstack(const Matrix& a, const Matrix& b) {
  require(a.rows() == b.rows(), ErrorKind::ShapeMismatch, "hstack row mismatch");
  Matrix out(a.field(), a.rows(), a.cols() + b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c);
    for (std::size_t c = 0; c < b.cols(); ++c) out(r, a.cols() + c) = b(r, c);
  }
  return out;
}

// ---------------------------------------------------------------------------

SparseMatrix SparseMatrix::from_dense(const Matrix& m) {
  SparseMatrix s(m.field(), m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (!m(r, c).is_zero()) s.row_data_[r].emplace_back(c, m(r, c));
  return s;
}

SparseMatrix SparseMatrix::identity(Field f, std::size_t n) {
  SparseMatrix s(f, n, n);
  for (std::size_t i = 0; i < n; ++i) s.row_data_[i].emplace_back(i, Scalar::one(f));
  return s;
}

std::size_t SparseMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& r : row_data_) n += r.size();
  return n;
}

void SparseMatrix::add(std::size_t r, std::size_t c, const Scalar& v) {
  require(r < rows_ && c < cols_, ErrorKind::ShapeMismatch, "sparse index out of range");
  if (v.is_zero()) return;
  auto& row = row_data_[r];
  auto it = std::lower_bound(row.begin(), row.end(), c, [](const Entry& e, std::size_t col) { return e.first < col; });
  if (it != row.end() && it->first == c) {
    it->second += v;
    if (it->second.is_zero()) row.erase(it);
  } else {
    row.insert(it, Entry(c, v));
  }
}

Scalar SparseMatrix::get(std::size_t r, std::size_t c) const {
  const auto& row = row_data_.at(r);
  auto it = std::lower_bound(row.begin(), row.end(), c, [](const Entry& e, std::size_t col) { return e.first < col; });
  if (it != row.end() && it->first == c) return it->second;
  return Scalar(field_);
}

Matrix SparseMatrix::to_dense() const {
  Matrix m(field_, rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (const auto& [c, v] : row_data_[r]) m(r, c) = v;
  return m;
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (const auto& [c, v] : row_data_[r]) t.row_data_[c].emplace_back(r, v);
  return t;
}

Vector SparseMatrix::apply(const Vector& v) const {
  require(v.size() == cols_, ErrorKind::ShapeMismatch, "sparse apply shape mismatch");
  Vector out = zero_vector(field_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (const auto& [c, a] : row_data_[r])
      if (!v[c].is_zero()) out[r].add_product(a, v[c]);
  return out;
}

SparseMatrix SparseMatrix::scaled(const Scalar& s) const {
  SparseMatrix out(field_, rows_, cols_);
  if (s.is_zero()) return out;
  out.row_data_ = row_data_;
  for (auto& row : out.row_data_)
    for (auto& e : row) e.second *= s;
  return out;
}

SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
  require(a.cols_ == b.rows_, ErrorKind::ShapeMismatch, "sparse product shape mismatch");
  SparseMatrix out(a.field_, a.rows_, b.cols_);
  Vector acc = zero_vector(a.field_, b.cols_);
  std::vector<char> touched(b.cols_, 0);
  std::vector<std::size_t> cols;
  for (std::size_t r = 0; r < a.rows_; ++r) {
    cols.clear();
    for (const auto& [k, x] : a.row_data_[r])
      for (const auto& [c, y] : b.row_data_[k]) {
        if (!touched[c]) {
          touched[c] = 1;
          cols.push_back(c);
        }
        acc[c].add_product(x, y);
      }
    std::sort(cols.begin(), cols.end());
    for (std::size_t c : cols) {
      if (!acc[c].is_zero()) out.row_data_[r].emplace_back(c, acc[c]);
      acc[c] = Scalar(a.field_);
      touched[c] = 0;
    }
  }
  return out;
}

SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b) {
  require(a.rows_ == b.rows_ && a.cols_ == b.cols_, ErrorKind::ShapeMismatch, "sparse sum shape mismatch");
  SparseMatrix out = a;
  for (std::size_t r = 0; r < b.rows_; ++r)
    for (const auto& [c, v] : b.row_data_[r]) out.add(r, c, v);
  return out;
}

bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || a.field_ != b.field_) return false;
  for (std::size_t r = 0; r < a.rows_; ++r) {
    const auto& x = a.row_data_[r];
    const auto& y = b.row_data_[r];
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i].first != y[i].first || x[i].second != y[i].second) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

RrefResult rref(const Matrix& m) {
  RrefResult res;
  res.reduced = m;
  Matrix& a = res.reduced;
  const Field f = m.field();
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < a.cols() && pivot_row < a.rows(); ++c) {
    std::size_t sel = a.rows();
    for (std::size_t r = pivot_row; r < a.rows(); ++r)
      if (!a(r, c).is_zero()) {
        sel = r;
        break;
      }
    if (sel == a.rows()) continue;
    if (sel != pivot_row)
      for (std::size_t k = 0; k < a.cols(); ++k) std::swap(a(sel, k), a(pivot_row, k));
    Scalar inv = a(pivot_row, c).inverse();
    for (std::size_t k = c; k < a.cols(); ++k)
      if (!a(pivot_row, k).is_zero()) a(pivot_row, k) *= inv;
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == pivot_row || a(r, c).is_zero()) continue;
      Scalar factor = -a(r, c);
      for (std::size_t k = c; k < a.cols(); ++k)
        if (!a(pivot_row, k).is_zero()) a(r, k).add_product(factor, a(pivot_row, k));
    }
    res.pivot_cols.push_back(c);
    ++pivot_row;
  }
  res.rank = pivot_row;
  (void)f;
  return res;
}

std::size_t rank(const Matrix& m) {
  SubspaceBuilder b(m.field(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) b.add(m.row(r));
  return b.dim();
}

SolveResult solve_and_nullspace(const Matrix& m, const std::optional<Matrix>& rhs) {
  const Field f = m.field();
  const std::size_t n = m.cols();
  SolveResult out;
  Matrix aug = m;
  if (rhs) {
    require(rhs->rows() == m.rows(), ErrorKind::ShapeMismatch, "right-hand side has wrong row count");
    require(rhs->field() == f, ErrorKind::FieldMismatch, "right-hand side in a different field");
    aug = hstack(m, *rhs);
  }
  RrefResult r = rref(aug);
  std::vector<std::size_t> pivots;
  bool consistent = true;
  for (std::size_t p : r.pivot_cols) {
    if (p < n)
      pivots.push_back(p);
    else
      consistent = false;
  }
  std::vector<char> is_pivot(n, 0);
  for (std::size_t p : pivots) is_pivot[p] = 1;

  Matrix ns(f, 0, n);
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    Vector v = zero_vector(f, n);
    v[free] = Scalar::one(f);
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r.reduced(i, free);
    ns.append_row(v);
  }
  out.nullspace_basis = std::move(ns);

  if (rhs && consistent) {
    Matrix part(f, n, rhs->cols());
    for (std::size_t i = 0; i < pivots.size(); ++i)
      for (std::size_t j = 0; j < rhs->cols(); ++j) part(pivots[i], j) = r.reduced(i, n + j);
    out.particular = std::move(part);
  }
  return out;
}

Matrix nullspace(const Matrix& m) { return solve_and_nullspace(m).nullspace_basis; }

Matrix left_nullspace(const Matrix& m) { return nullspace(m.transpose()); }

std::optional<Matrix> inverse(const Matrix& m) {
  require(m.rows() == m.cols(), ErrorKind::ShapeMismatch, "inverse of a non-square matrix");
  auto s = solve_and_nullspace(m, Matrix::identity(m.field(), m.rows()));
  if (!s.particular || s.nullspace_basis.rows() != 0) return std::nullopt;
  return s.particular;
}

// ---------------------------------------------------------------------------

Vector SubspaceBuilder::reduce(Vector v) const {
  require(v.size() == ambient_, ErrorKind::ShapeMismatch, "vector outside ambient space");
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const Scalar& c = v[pivots_[k]];
    if (c.is_zero()) continue;
    Scalar factor = -c;
    const Vector& row = rows_[k];
    for (std::size_t i = 0; i < ambient_; ++i)
      if (!row[i].is_zero()) v[i].add_product(factor, row[i]);
  }
  return v;
}

bool SubspaceBuilder::add(const Vector& v) {
  Vector r = reduce(v);
  std::size_t p = ambient_;
  for (std::size_t i = 0; i < ambient_; ++i)
    if (!r[i].is_zero()) {
      p = i;
      break;
    }
  if (p == ambient_) return false;
  Scalar inv = r[p].inverse();
  for (auto& x : r)
    if (!x.is_zero()) x *= inv;
  rows_.push_back(std::move(r));
  pivots_.push_back(p);
  return true;
}

bool SubspaceBuilder::contains(const Vector& v) const { return is_zero(reduce(v)); }

Matrix SubspaceBuilder::basis() const { return Matrix::from_rows(field_, ambient_, rows_); }

BasisSolver::BasisSolver(Field f, std::size_t ambient, const std::vector<Vector>& basis)
    : field_(f), ambient_(ambient), count_(basis.size()) {
  for (std::size_t b = 0; b < basis.size(); ++b) {
    Vector r = basis[b];
    require(r.size() == ambient_, ErrorKind::ShapeMismatch, "basis vector outside ambient space");
    Vector combo = unit_vector(f, count_, b);
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const Scalar c = r[pivots_[k]];
      if (c.is_zero()) continue;
      Scalar factor = -c;
      axpy(r, factor, rows_[k]);
      axpy(combo, factor, combos_[k]);
    }
    std::size_t p = ambient_;
    for (std::size_t i = 0; i < ambient_; ++i)
      if (!r[i].is_zero()) {
        p = i;
        break;
      }
    require(p != ambient_, ErrorKind::Internal, "BasisSolver given dependent vectors");
    Scalar inv = r[p].inverse();
    for (auto& x : r) x *= inv;
    for (auto& x : combo) x *= inv;
    rows_.push_back(std::move(r));
    combos_.push_back(std::move(combo));
    pivots_.push_back(p);
  }
}

std::optional<Vector> BasisSolver::coordinates(const Vector& v) const {
  require(v.size() == ambient_, ErrorKind::ShapeMismatch, "vector outside ambient space");
  Vector r = v;
  Vector coords = zero_vector(field_, count_);
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const Scalar c = r[pivots_[k]];
    if (c.is_zero()) continue;
    axpy(r, -c, rows_[k]);
    axpy(coords, c, combos_[k]);
  }
  if (!is_zero(r)) return std::nullopt;
  return coords;
}

Vector BasisSolver::coords_or_throw(const Vector& v) const {
  auto c = coordinates(v);
  require(c.has_value(), ErrorKind::Internal, "vector lies outside the expected span");
  return *c;
}

}  // namespace gradecert::la
