#include "gradecert/algcore/algebra.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace gradecert::alg {

namespace {

std::string triple_text(const AlgebraSpec& s, std::size_t i, std::size_t j, std::size_t k) {
  std::ostringstream out;
  out << "(" << s.labels[i] << ", " << s.labels[j] << ", " << s.labels[k] << ")";
  return out.str();
}

// Dense scratch accumulator with a touched list, reused across many small sparse sums.
class Accumulator {
 public:
  Accumulator(Field f, std::size_t n) : zero_(f), values_(n, Scalar(f)), touched_(n, false) {}

  void add(std::size_t k, const Scalar& a, const Scalar& b) {
    if (!touched_[k]) {
      touched_[k] = true;
      order_.push_back(k);
    }
    values_[k].add_product(a, b);
  }

  // Sorted nonzero entries; resets the accumulator.
  SparseVec take() {
    std::sort(order_.begin(), order_.end());
    SparseVec out;
    for (std::size_t k : order_) {
      if (!values_[k].is_zero()) out.emplace_back(k, values_[k]);
      values_[k] = zero_;
      touched_[k] = false;
    }
    order_.clear();
    return out;
  }

 private:
  Scalar zero_;
  std::vector<Scalar> values_;
  std::vector<bool> touched_;
  std::vector<std::size_t> order_;
};

Matrix rows_matrix(Field f, std::size_t n, const std::vector<Vector>& rows) { return Matrix::from_rows(f, n, rows); }

}  // namespace

std::string_view to_string(RadicalRegime r) {
  switch (r) {
    case RadicalRegime::Supplied: return "supplied";
    case RadicalRegime::ArrowIdeal: return "arrow-ideal";
    case RadicalRegime::TraceForm: return "trace-form";
    case RadicalRegime::Unavailable: return "unavailable";
  }
  return "unknown";
}

GradedAlgebra::GradedAlgebra(AlgebraSpec spec) : spec_(std::move(spec)) {}

AlgebraPtr GradedAlgebra::build(AlgebraSpec spec) {
  const std::size_t n = spec.dim;
  const Field f = spec.field;
  if (spec.labels.empty())
    for (std::size_t i = 0; i < n; ++i) spec.labels.push_back("b" + std::to_string(i));
  require(spec.labels.size() == n, ErrorKind::ShapeMismatch, "label count differs from dim");
  require(spec.grades.size() == n, ErrorKind::ShapeMismatch, "grade count differs from dim");
  require(spec.unit.size() == n, ErrorKind::ShapeMismatch, "unit has the wrong length");
  for (const auto& x : spec.unit) require(x.field() == f, ErrorKind::FieldMismatch, "unit coefficient field");

  std::shared_ptr<GradedAlgebra> a(new GradedAlgebra(std::move(spec)));
  const AlgebraSpec& s = a->spec_;
  a->products_.assign(n * n, {});
  std::vector<std::map<std::size_t, Scalar>> dense(n * n);
  for (const auto& e : s.mult) {
    require(e.i < n && e.j < n && e.k < n, ErrorKind::ShapeMismatch, "structure constant index out of range");
    require(e.coef.field() == f, ErrorKind::FieldMismatch, "structure constant field");
    auto [it, fresh] = dense[e.i * n + e.j].try_emplace(e.k, e.coef);
    if (!fresh) it->second += e.coef;
  }
  for (std::size_t ij = 0; ij < n * n; ++ij)
    for (auto& [k, c] : dense[ij])
      if (!c.is_zero()) a->products_[ij].emplace_back(k, c);
  a->validate();
  return a;
}

AlgebraPtr build_algebra(AlgebraSpec spec) { return GradedAlgebra::build(std::move(spec)); }

void GradedAlgebra::validate() const {
  const std::size_t n = dim();
  const Field f = field();
  const auto& s = spec_;

  for (std::size_t i = 0; i < n; ++i)
    require(s.grades[i] >= 0, ErrorKind::GradingViolation, "negative grade on " + s.labels[i]);
  for (std::size_t i = 0; i < n; ++i)
    if (!s.unit[i].is_zero())
      require(s.grades[i] == 0, ErrorKind::BadUnit, "unit has a component on " + s.labels[i] + " outside grade 0");

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& [k, c] : product(i, j))
        if (s.grades[k] != s.grades[i] + s.grades[j])
          fail(ErrorKind::GradingViolation, "product " + s.labels[i] + "*" + s.labels[j] + " has a component on " +
                                                s.labels[k] + " " + triple_text(s, i, j, k));

  for (std::size_t i = 0; i < n; ++i) {
    Vector b = basis_vector(i);
    if (multiply(s.unit, b) != b) fail(ErrorKind::BadUnit, "1*" + s.labels[i] + " != " + s.labels[i]);
    if (multiply(b, s.unit) != b) fail(ErrorKind::BadUnit, s.labels[i] + "*1 != " + s.labels[i]);
  }

  Accumulator left(f, n), right(f, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const SparseVec& ij = product(i, j);
      for (std::size_t k = 0; k < n; ++k) {
        for (const auto& [m, c] : ij)
          for (const auto& [t, d] : product(m, k)) left.add(t, c, d);
        for (const auto& [m, c] : product(j, k))
          for (const auto& [t, d] : product(i, m)) right.add(t, c, d);
        if (left.take() != right.take())
          fail(ErrorKind::NonAssociative, "(b_i b_j) b_k != b_i (b_j b_k) for " + triple_text(s, i, j, k));
      }
    }

  if (s.idempotents) {
    const auto& es = *s.idempotents;
    require(!es.empty(), ErrorKind::BadIdempotents, "empty idempotent list");
    Vector sum = zero();
    for (std::size_t a = 0; a < es.size(); ++a) {
      require(es[a].size() == n, ErrorKind::ShapeMismatch, "idempotent has the wrong length");
      require(!la::is_zero(es[a]), ErrorKind::BadIdempotents, "idempotent " + std::to_string(a) + " is zero");
      for (std::size_t b = 0; b < es.size(); ++b) {
        Vector p = multiply(es[a], es[b]);
        if (a == b && p != es[a])
          fail(ErrorKind::BadIdempotents, "e" + std::to_string(a) + " is not idempotent");
        if (a != b && !la::is_zero(p))
          fail(ErrorKind::BadIdempotents,
               "e" + std::to_string(a) + " e" + std::to_string(b) + " != 0");
      }
      sum = la::add(sum, es[a]);
    }
    require(sum == s.unit, ErrorKind::BadIdempotents, "idempotents do not sum to 1");
  }

  if (s.radical_basis) {
    la::SubspaceBuilder rad(f, n);
    for (const auto& r : *s.radical_basis) {
      require(r.size() == n, ErrorKind::ShapeMismatch, "radical row has the wrong length");
      rad.add(r);
    }
    for (const auto& r : rad.rows())
      for (std::size_t i = 0; i < n; ++i) {
        Vector b = basis_vector(i);
        require(rad.contains(multiply(b, r)) && rad.contains(multiply(r, b)), ErrorKind::InvalidArgument,
                "supplied radical is not a two-sided ideal (fails at " + s.labels[i] + ")");
      }
    // Nilpotency: powers must shrink to zero.
    std::vector<Vector> power = rad.rows();
    for (std::size_t step = 0; !power.empty(); ++step) {
      require(step <= n, ErrorKind::InvalidArgument, "supplied radical is not nilpotent");
      power = product_span(*this, rad.rows(), power).rows();
    }
  }
}

int GradedAlgebra::max_grade() const {
  int m = 0;
  for (int g : spec_.grades) m = std::max(m, g);
  return m;
}

Vector GradedAlgebra::multiply(const Vector& a, const Vector& b) const {
  const std::size_t n = dim();
  require(a.size() == n && b.size() == n, ErrorKind::ShapeMismatch, "multiply: wrong vector length");
  Vector out = zero();
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (b[j].is_zero()) continue;
      Scalar ab = a[i] * b[j];
      for (const auto& [k, c] : product(i, j)) out[k].add_product(ab, c);
    }
  }
  return out;
}

la::SparseMatrix GradedAlgebra::left_multiplication(const Vector& a) const {
  const std::size_t n = dim();
  la::SparseMatrix m(field(), n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& [k, c] : product(i, j)) m.add(k, j, a[i] * c);
  }
  return m;
}

std::optional<int> GradedAlgebra::homogeneous_grade(const Vector& v) const {
  std::optional<int> g;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    if (g && *g != grade(i)) return std::nullopt;
    g = grade(i);
  }
  return g;
}

Vector GradedAlgebra::grade_part(const Vector& v, int g) const {
  Vector out = zero();
  for (std::size_t i = 0; i < v.size(); ++i)
    if (grade(i) == g) out[i] = v[i];
  return out;
}

std::vector<std::size_t> GradedAlgebra::indices_of_grade(int g) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < dim(); ++i)
    if (grade(i) == g) out.push_back(i);
  return out;
}

RadicalRegime GradedAlgebra::radical_regime() const {
  if (spec_.radical_basis)
    return spec_.radical_source == RadicalSource::ArrowIdeal ? RadicalRegime::ArrowIdeal : RadicalRegime::Supplied;
  const auto p = field().characteristic();
  if (p == 0 || p > dim()) return RadicalRegime::TraceForm;
  return RadicalRegime::Unavailable;
}

const Matrix& GradedAlgebra::radical() const {
  std::call_once(radical_once_, [this] {
    switch (radical_regime()) {
      case RadicalRegime::Supplied:
      case RadicalRegime::ArrowIdeal: {
        la::SubspaceBuilder b(field(), dim());
        for (const auto& r : *spec_.radical_basis) b.add(r);
        radical_ = rows_matrix(field(), dim(), b.rows());
        break;
      }
      case RadicalRegime::TraceForm:
        radical_ = radical_by_trace_form(*this);
        break;
      case RadicalRegime::Unavailable:
        break;
    }
  });
  if (!radical_)
    fail(ErrorKind::RadicalUnavailable, "no radical regime applies to " + name() + " over " + field().to_string() +
                                            "; supply a radical basis");
  return *radical_;
}

Matrix radical_by_trace_form(const GradedAlgebra& a) {
  const std::size_t n = a.dim();
  const Field f = a.field();
  require(f.is_rational() || f.characteristic() > n, ErrorKind::RadicalUnavailable,
          "trace form needs characteristic 0 or above the dimension");
  // t_k = trace(L_{b_k}); then trace(L_{b_i} L_{b_j}) = sum_k c_ij^k t_k.
  Vector t = a.zero();
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t m = 0; m < n; ++m)
      for (const auto& [r, c] : a.product(k, m))
        if (r == m) t[k] += c;
  Matrix gram(f, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& [k, c] : a.product(i, j)) gram(i, j).add_product(c, t[k]);
  Matrix ns = la::nullspace(gram);
  la::SubspaceBuilder b(f, n);
  for (std::size_t r = 0; r < ns.rows(); ++r) b.add(ns.row(r));
  return Matrix::from_rows(f, n, b.rows());
}

RadicalSeries radical_series(const GradedAlgebra& a) {
  const std::size_t n = a.dim();
  const Field f = a.field();
  RadicalSeries out;
  out.layers.push_back(Matrix::identity(f, n));
  const std::vector<Vector> rad = a.radical().row_vectors();
  std::vector<Vector> layer = rad;
  out.layers.push_back(Matrix::from_rows(f, n, layer));
  while (!layer.empty()) {
    std::vector<Vector> next = product_span(a, rad, layer).rows();
    require(next.size() < layer.size(), ErrorKind::Internal, "radical series stopped descending");
    layer = std::move(next);
    out.layers.push_back(Matrix::from_rows(f, n, layer));
  }
  out.length = out.layers.size() - 1;
  return out;
}

const RadicalSeries& GradedAlgebra::radical_series() const {
  std::call_once(series_once_, [this] { series_ = alg::radical_series(*this); });
  return *series_;
}

const std::vector<std::size_t>& GradedAlgebra::generators() const {
  std::call_once(generators_once_, [this] {
    if (radical_regime() == RadicalRegime::Unavailable) {
      for (std::size_t i = 0; i < dim(); ++i) generators_.push_back(i);
      return;
    }
    const auto& series = radical_series();
    la::SubspaceBuilder b(field(), dim());
    if (series.layers.size() > 2)
      for (const auto& r : series.layers[2].row_vectors()) b.add(r);
    for (std::size_t i = 0; i < dim(); ++i)
      if (b.add(basis_vector(i))) generators_.push_back(i);
  });
  return generators_;
}

AlgebraPtr GradedAlgebra::opposite() const {
  AlgebraSpec s = spec_;
  s.name = spec_.name + "^op";
  for (auto& e : s.mult) std::swap(e.i, e.j);
  if (!s.radical_basis && radical_regime() != RadicalRegime::Unavailable) {
    s.radical_basis = radical().row_vectors();
    s.radical_source = RadicalSource::Supplied;
  }
  return GradedAlgebra::build(std::move(s));
}

Matrix grade_component(const GradedAlgebra& a, int i) {
  Matrix out(a.field(), 0, a.dim());
  if (i < 0) return out;
  for (std::size_t k : a.indices_of_grade(i)) out.append_row(a.basis_vector(k));
  return out;
}

la::SubspaceBuilder product_span(const GradedAlgebra& a, const std::vector<Vector>& left,
                                 const std::vector<Vector>& right) {
  la::SubspaceBuilder b(a.field(), a.dim());
  for (const auto& x : left)
    for (const auto& y : right) {
      if (b.dim() == a.dim()) return b;
      b.add(a.multiply(x, y));
    }
  return b;
}

namespace {

std::optional<std::vector<Vector>> radical_if_available(const GradedAlgebra& a) {
  if (a.radical_regime() == RadicalRegime::Unavailable) return std::nullopt;
  return a.radical().row_vectors();
}

}  // namespace

Subalgebra grade_zero_subalgebra(const GradedAlgebra& a) {
  const std::vector<std::size_t> idx = a.indices_of_grade(0);
  std::vector<std::size_t> pos(a.dim(), a.dim());
  for (std::size_t r = 0; r < idx.size(); ++r) pos[idx[r]] = r;
  auto restrict = [&](const Vector& v) {
    Vector out;
    for (std::size_t i : idx) out.push_back(v[i]);
    return out;
  };

  AlgebraSpec s;
  s.name = a.name() + "_0";
  s.field = a.field();
  s.dim = idx.size();
  for (std::size_t i : idx) {
    s.labels.push_back(a.labels()[i]);
    s.grades.push_back(0);
  }
  for (std::size_t i : idx)
    for (std::size_t j : idx)
      for (const auto& [k, c] : a.product(i, j)) s.mult.push_back({pos[i], pos[j], pos[k], c});
  s.unit = restrict(a.unit());
  if (a.idempotents()) {
    std::vector<Vector> es;
    for (const auto& e : *a.idempotents()) es.push_back(restrict(e));
    s.idempotents = es;
  }
  // rad A is a graded ideal; its grade-0 part is rad A_0.
  if (auto rad = radical_if_available(a)) {
    std::vector<Vector> r0;
    for (const auto& r : *rad) r0.push_back(restrict(a.grade_part(r, 0)));
    s.radical_basis = r0;
    s.radical_source = RadicalSource::Supplied;
  }

  Subalgebra out;
  for (std::size_t i : idx) out.embedding.push_back(a.basis_vector(i));
  out.algebra = GradedAlgebra::build(std::move(s));
  return out;
}

Quotient quotient_algebra(const GradedAlgebra& a, const std::vector<Vector>& ideal) {
  const std::size_t n = a.dim();
  auto builder = std::make_shared<la::SubspaceBuilder>(a.field(), n);
  const int top = a.max_grade();
  for (const auto& r : ideal)
    for (int g = 0; g <= top; ++g) builder->add(a.grade_part(r, g));
  {
    la::SubspaceBuilder check(a.field(), n);
    for (const auto& r : ideal) check.add(r);
    require(check.dim() == builder->dim(), ErrorKind::InvalidArgument, "quotient: ideal is not homogeneous");
  }
  for (const auto& r : builder->rows())
    for (std::size_t i = 0; i < n; ++i) {
      Vector b = a.basis_vector(i);
      require(builder->contains(a.multiply(b, r)) && builder->contains(a.multiply(r, b)), ErrorKind::InvalidArgument,
              "quotient: not a two-sided ideal");
    }

  std::vector<bool> pivot(n, false);
  for (std::size_t p : builder->pivots()) pivot[p] = true;
  Quotient out;
  for (std::size_t i = 0; i < n; ++i)
    if (!pivot[i]) out.kept.push_back(i);
  const std::vector<std::size_t> kept = out.kept;
  out.project = [builder, kept](const Vector& v) {
    Vector r = builder->reduce(v);
    Vector q;
    for (std::size_t i : kept) q.push_back(r[i]);
    return q;
  };

  AlgebraSpec s;
  s.name = a.name() + "/I";
  s.field = a.field();
  s.dim = kept.size();
  for (std::size_t i : kept) {
    s.labels.push_back(a.labels()[i]);
    s.grades.push_back(a.grade(i));
  }
  for (std::size_t x = 0; x < kept.size(); ++x)
    for (std::size_t y = 0; y < kept.size(); ++y) {
      Vector p = out.project(a.multiply(a.basis_vector(kept[x]), a.basis_vector(kept[y])));
      for (std::size_t z = 0; z < p.size(); ++z)
        if (!p[z].is_zero()) s.mult.push_back({x, y, z, p[z]});
    }
  s.unit = out.project(a.unit());
  if (a.idempotents()) {
    std::vector<Vector> es;
    for (const auto& e : *a.idempotents()) {
      Vector q = out.project(e);
      if (!la::is_zero(q)) es.push_back(q);
    }
    if (!es.empty()) s.idempotents = es;
  }
  if (auto rad = radical_if_available(a)) {
    std::vector<Vector> rq;
    for (const auto& r : *rad) rq.push_back(out.project(r));
    s.radical_basis = rq;
    s.radical_source = RadicalSource::Supplied;
  }
  out.algebra = GradedAlgebra::build(std::move(s));
  return out;
}

bool positive_part_nilpotent(const GradedAlgebra& a) {
  std::vector<Vector> pos;
  for (std::size_t i = 0; i < a.dim(); ++i)
    if (a.grade(i) > 0) pos.push_back(a.basis_vector(i));
  std::vector<Vector> power = pos;
  for (std::size_t step = 0; step <= a.dim(); ++step) {
    if (power.empty()) return true;
    power = product_span(a, pos, power).rows();
  }
  return power.empty();
}

bool quotient_by_positive_matches_grade_zero(const GradedAlgebra& a) {
  std::vector<Vector> pos;
  for (std::size_t i = 0; i < a.dim(); ++i)
    if (a.grade(i) > 0) pos.push_back(a.basis_vector(i));
  Quotient q = quotient_algebra(a, pos);
  Subalgebra z = grade_zero_subalgebra(a);
  const auto& qa = *q.algebra;
  const auto& za = *z.algebra;
  if (qa.dim() != za.dim()) return false;
  // Both bases are the grade-0 basis vectors of A in increasing order.
  for (std::size_t i = 0; i < qa.dim(); ++i)
    for (std::size_t j = 0; j < qa.dim(); ++j)
      if (qa.product(i, j) != za.product(i, j)) return false;
  return qa.unit() == za.unit();
}

}  // namespace gradecert::alg
