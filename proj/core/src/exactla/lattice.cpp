#include "gradecert/exactla/lattice.hpp"

#include <utility>

namespace gradecert::la {

namespace {

void row_combine(IntVector& x, IntVector& y, const mpz_class& a, const mpz_class& b, const mpz_class& c,
                 const mpz_class& d) {
  // (x, y) <- (a x + b y, c x + d y)
  for (std::size_t k = 0; k < x.size(); ++k) {
    mpz_class nx = a * x[k] + b * y[k];
    mpz_class ny = c * x[k] + d * y[k];
    x[k] = std::move(nx);
    y[k] = std::move(ny);
  }
}

void row_sub_multiple(IntVector& x, const mpz_class& q, const IntVector& y) {
  if (q == 0) return;
  for (std::size_t k = 0; k < x.size(); ++k) x[k] -= q * y[k];
}

bool is_zero_row(const IntVector& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

}  // namespace

IntegerLattice IntegerLattice::full(std::size_t ambient) {
  IntMatrix rows(ambient, IntVector(ambient, 0));
  for (std::size_t i = 0; i < ambient; ++i) rows[i][i] = 1;
  return hnf(rows, ambient);
}

bool IntegerLattice::contains(const IntVector& v) const {
  require(v.size() == ambient_, ErrorKind::ShapeMismatch, "lattice membership: wrong dimension");
  IntVector r = v;
  std::size_t col = 0;
  for (const auto& row : basis_) {
    std::size_t p = 0;
    while (row[p] == 0) ++p;
    for (; col < p; ++col)
      if (r[col] != 0) return false;
    if (r[p] % row[p] != 0) return false;
    mpz_class q = r[p] / row[p];
    row_sub_multiple(r, q, row);
    col = p + 1;
  }
  return is_zero_row(r);
}

HnfTransform hnf_with_transform(const IntMatrix& rows, std::size_t ambient) {
  const std::size_t m = rows.size();
  HnfTransform out;
  out.hnf = rows;
  for (const auto& r : rows)
    require(r.size() == ambient, ErrorKind::ShapeMismatch, "hnf: ragged integer matrix");
  out.transform.assign(m, IntVector(m, 0));
  for (std::size_t i = 0; i < m; ++i) out.transform[i][i] = 1;
  IntMatrix& h = out.hnf;
  IntMatrix& u = out.transform;

  std::size_t pr = 0;
  for (std::size_t c = 0; c < ambient && pr < m; ++c) {
    for (std::size_t i = pr + 1; i < m; ++i) {
      if (h[i][c] == 0) continue;
      if (h[pr][c] == 0) {
        std::swap(h[pr], h[i]);
        std::swap(u[pr], u[i]);
        continue;
      }
      mpz_class g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), h[pr][c].get_mpz_t(), h[i][c].get_mpz_t());
      mpz_class a = h[pr][c] / g;
      mpz_class b = h[i][c] / g;
      // det [[s, t], [-b, a]] = s a + t b = 1
      row_combine(h[pr], h[i], s, t, -b, a);
      row_combine(u[pr], u[i], s, t, -b, a);
    }
    if (h[pr][c] == 0) continue;
    if (h[pr][c] < 0) {
      for (auto& x : h[pr]) x = -x;
      for (auto& x : u[pr]) x = -x;
    }
    for (std::size_t k = 0; k < pr; ++k) {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), h[k][c].get_mpz_t(), h[pr][c].get_mpz_t());
      row_sub_multiple(h[k], q, h[pr]);
      row_sub_multiple(u[k], q, u[pr]);
    }
    ++pr;
  }
  out.rank = pr;
  return out;
}

IntegerLattice hnf(const IntMatrix& rows, std::size_t ambient) {
  HnfTransform t = hnf_with_transform(rows, ambient);
  IntegerLattice lat(ambient);
  for (std::size_t i = 0; i < t.rank; ++i) lat.basis_.push_back(t.hnf[i]);
  return lat;
}

IntVector clear_denominators(const Vector& v) {
  mpz_class lcm = 1;
  for (const auto& x : v) {
    require(x.characteristic() == 0, ErrorKind::FieldMismatch, "clearing denominators needs rational entries");
    mpq_class q = x.to_mpq();
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den_mpz_t());
  }
  IntVector out;
  out.reserve(v.size());
  mpz_class g = 0;
  for (const auto& x : v) {
    mpq_class q = x.to_mpq() * lcm;
    out.push_back(q.get_num());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out.back().get_mpz_t());
  }
  if (g > 1)
    for (auto& x : out) x /= g;
  return out;
}

Vector to_rational(const IntVector& v) {
  Vector out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(Scalar::from_mpq(Field::rationals(), mpq_class(x)));
  return out;
}

IntegerLattice lattice_intersect_subspace(const IntegerLattice& lattice, const Matrix& subspace) {
  const std::size_t n = lattice.ambient_dim();
  require(subspace.cols() == n || subspace.rows() == 0, ErrorKind::ShapeMismatch,
          "subspace and lattice live in different dimensions");
  require(subspace.field().is_rational(), ErrorKind::FieldMismatch, "subspace must be rational");
  if (lattice.rank() == 0) return IntegerLattice(n);

  // x lies in span(V) iff x . y == 0 for every y in ker(V).
  Matrix annihilator = subspace.rows() == 0 ? Matrix::identity(Field::rationals(), n) : nullspace(subspace);
  std::vector<IntVector> ann;
  for (std::size_t r = 0; r < annihilator.rows(); ++r) ann.push_back(clear_denominators(annihilator.row(r)));

  const auto& b = lattice.basis();
  IntMatrix pairing(b.size(), IntVector(ann.size(), 0));
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < ann.size(); ++j)
      for (std::size_t k = 0; k < n; ++k) pairing[i][j] += b[i][k] * ann[j][k];

  // Integer left kernel of the pairing: rows of the transform that kill it.
  HnfTransform t = hnf_with_transform(pairing, ann.size());
  IntMatrix points;
  for (std::size_t i = t.rank; i < b.size(); ++i) {
    IntVector p(n, 0);
    for (std::size_t j = 0; j < b.size(); ++j)
      if (t.transform[i][j] != 0)
        for (std::size_t k = 0; k < n; ++k) p[k] += t.transform[i][j] * b[j][k];
    points.push_back(std::move(p));
  }
  return hnf(points, n);
}

}  // namespace gradecert::la
