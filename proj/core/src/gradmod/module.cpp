#include "gradecert/gradmod/module.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <set>

namespace gradecert::gmod {

namespace {

SparseMatrix sparse_from_columns(Field f, std::size_t rows, const std::vector<Vector>& cols) {
  SparseMatrix m(f, rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t r = 0; r < rows; ++r)
      if (!cols[c][r].is_zero()) m.add(r, c, cols[c][r]);
  return m;
}

}  // namespace

GradedModule GradedModule::make_unchecked(AlgebraPtr a, std::vector<int> grades, std::vector<SparseMatrix> actions,
                                          bool graded) {
  GradedModule m;
  m.algebra_ = std::move(a);
  m.grades_ = std::move(grades);
  m.actions_ = std::move(actions);
  m.graded_ = graded;
  return m;
}

GradedModule GradedModule::make(AlgebraPtr a, std::vector<int> grades, std::vector<SparseMatrix> actions,
                                bool graded) {
  GradedModule m = make_unchecked(std::move(a), std::move(grades), std::move(actions), graded);
  m.validate();
  return m;
}

void GradedModule::validate() const {
  const auto& a = *algebra_;
  const std::size_t n = dim();
  require(actions_.size() == a.dim(), ErrorKind::ShapeMismatch, "module needs one action matrix per basis element");
  for (const auto& act : actions_) {
    require(act.rows() == n && act.cols() == n, ErrorKind::ShapeMismatch, "action matrix has the wrong shape");
    require(act.field() == a.field(), ErrorKind::FieldMismatch, "action matrix field");
  }
  if (!graded_)
    for (int g : grades_) require(g == 0, ErrorKind::InvalidArgument, "ungraded module with nonzero grades");

  for (std::size_t k = 0; k < a.dim(); ++k)
    for (std::size_t r = 0; r < n; ++r)
      for (const auto& [c, v] : actions_[k].row(r))
        if (grades_[r] != grades_[c] + algebra_grade(k))
          fail(ErrorKind::GradingViolation, a.labels()[k] + " maps grade " + std::to_string(grades_[c]) +
                                                " into grade " + std::to_string(grades_[r]));

  SparseMatrix unit(a.field(), n, n);
  for (std::size_t k = 0; k < a.dim(); ++k)
    if (!a.unit()[k].is_zero()) unit = unit + actions_[k].scaled(a.unit()[k]);
  require(unit == SparseMatrix::identity(a.field(), n), ErrorKind::BadUnit, "unit does not act as the identity");

  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) {
      SparseMatrix lhs = actions_[i] * actions_[j];
      SparseMatrix rhs(a.field(), n, n);
      for (const auto& [k, c] : a.product(i, j)) rhs = rhs + actions_[k].scaled(c);
      if (!(lhs == rhs))
        fail(ErrorKind::NonAssociative,
             "action of " + a.labels()[i] + "*" + a.labels()[j] + " differs from the composite action");
    }
}

Vector GradedModule::act(const Vector& a, const Vector& m) const {
  Vector out = zero();
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k].is_zero()) continue;
    for (std::size_t r = 0; r < dim(); ++r)
      for (const auto& [c, v] : actions_[k].row(r))
        if (!m[c].is_zero()) out[r].add_product(a[k] * v, m[c]);
  }
  return out;
}

std::vector<std::size_t> GradedModule::indices_of_grade(int g) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < dim(); ++i)
    if (grades_[i] == g) out.push_back(i);
  return out;
}

std::vector<int> GradedModule::grade_support() const {
  std::set<int> s(grades_.begin(), grades_.end());
  return {s.begin(), s.end()};
}

std::optional<int> GradedModule::homogeneous_grade(const Vector& v) const {
  std::optional<int> g;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    if (g && *g != grades_[i]) return std::nullopt;
    g = grades_[i];
  }
  return g;
}

Vector GradedModule::grade_part(const Vector& v, int g) const {
  Vector out = zero();
  for (std::size_t i = 0; i < v.size(); ++i)
    if (grades_[i] == g) out[i] = v[i];
  return out;
}

GradedModule shift(const GradedModule& m, int r) {
  if (!m.graded()) return m;
  std::vector<int> g = m.grades();
  for (int& x : g) x += r;
  return GradedModule::make_unchecked(m.algebra(), std::move(g), m.actions(), true);
}

GradedModule forget_grading(const GradedModule& m) {
  return GradedModule::make_unchecked(m.algebra(), std::vector<int>(m.dim(), 0), m.actions(), false);
}

GradedModule direct_sum(const std::vector<GradedModule>& parts) {
  require(!parts.empty(), ErrorKind::InvalidArgument, "direct sum of nothing");
  const auto& a = parts.front().algebra();
  const Field f = a->field();
  std::size_t n = 0;
  std::vector<int> grades;
  for (const auto& p : parts) {
    require(p.algebra() == a, ErrorKind::InvalidArgument, "direct sum over different algebras");
    require(p.graded() == parts.front().graded(), ErrorKind::InvalidArgument, "mixing graded and ungraded modules");
    n += p.dim();
    grades.insert(grades.end(), p.grades().begin(), p.grades().end());
  }
  std::vector<SparseMatrix> actions(a->dim(), SparseMatrix(f, n, n));
  std::size_t off = 0;
  for (const auto& p : parts) {
    for (std::size_t k = 0; k < a->dim(); ++k)
      for (std::size_t r = 0; r < p.dim(); ++r)
        for (const auto& [c, v] : p.action(k).row(r)) actions[k].add(off + r, off + c, v);
    off += p.dim();
  }
  return GradedModule::make_unchecked(a, std::move(grades), std::move(actions), parts.front().graded());
}

GradedModule regular_module(const AlgebraPtr& a, bool graded) {
  std::vector<SparseMatrix> actions;
  for (std::size_t k = 0; k < a->dim(); ++k) actions.push_back(a->left_multiplication(a->basis_vector(k)));
  std::vector<int> grades = graded ? a->grades() : std::vector<int>(a->dim(), 0);
  return GradedModule::make_unchecked(a, std::move(grades), std::move(actions), graded);
}

std::vector<Vector> generated_subspace(const GradedModule& m, const std::vector<Vector>& gens) {
  const auto& gen_idx = m.algebra()->generators();
  std::map<int, la::SubspaceBuilder> by_grade;
  std::deque<std::pair<Vector, int>> queue;
  auto offer = [&](const Vector& v, int g) {
    auto it = by_grade.try_emplace(g, m.field(), m.dim()).first;
    if (it->second.add(v)) queue.emplace_back(v, g);
  };
  for (const auto& v : gens) {
    if (la::is_zero(v)) continue;
    auto g = m.homogeneous_grade(v);
    require(g.has_value(), ErrorKind::InvalidArgument, "generators of a graded submodule must be homogeneous");
    offer(v, *g);
  }
  while (!queue.empty()) {
    auto [v, g] = std::move(queue.front());
    queue.pop_front();
    for (std::size_t k : gen_idx) {
      Vector w = m.act_basis(k, v);
      if (!la::is_zero(w)) offer(w, g + m.algebra_grade(k));
    }
  }
  std::vector<Vector> out;
  for (const auto& [g, b] : by_grade) out.insert(out.end(), b.rows().begin(), b.rows().end());
  return out;
}

GradedModule submodule_on_basis(const GradedModule& m, const std::vector<Vector>& basis) {
  const auto& a = *m.algebra();
  std::vector<int> grades;
  for (const auto& v : basis) {
    auto g = m.homogeneous_grade(v);
    require(g.has_value(), ErrorKind::InvalidArgument, "submodule basis rows must be homogeneous and nonzero");
    grades.push_back(*g);
  }
  la::BasisSolver solver(m.field(), m.dim(), basis);
  std::vector<SparseMatrix> actions;
  actions.reserve(a.dim());
  for (std::size_t k = 0; k < a.dim(); ++k) {
    SparseMatrix act(m.field(), basis.size(), basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) {
      Vector w = m.act_basis(k, basis[i]);
      if (la::is_zero(w)) continue;
      auto c = solver.coordinates(w);
      require(c.has_value(), ErrorKind::InvalidArgument, "subspace is not closed under the action");
      for (std::size_t r = 0; r < c->size(); ++r)
        if (!(*c)[r].is_zero()) act.add(r, i, (*c)[r]);
    }
    actions.push_back(std::move(act));
  }
  return GradedModule::make_unchecked(m.algebra(), std::move(grades), std::move(actions), m.graded());
}

Submodule submodule_generated(const GradedModule& m, const std::vector<Vector>& gens) {
  Submodule s;
  s.basis = generated_subspace(m, gens);
  s.module = submodule_on_basis(m, s.basis);
  return s;
}

QuotientModule quotient_module(const GradedModule& m, const std::vector<Vector>& sub_basis) {
  auto builder = std::make_shared<la::SubspaceBuilder>(m.field(), m.dim());
  for (const auto& v : sub_basis) {
    require(la::is_zero(v) || m.homogeneous_grade(v).has_value(), ErrorKind::InvalidArgument,
            "quotient by an inhomogeneous subspace");
    builder->add(v);
  }
  std::vector<bool> pivot(m.dim(), false);
  for (std::size_t p : builder->pivots()) pivot[p] = true;
  QuotientModule q;
  for (std::size_t i = 0; i < m.dim(); ++i)
    if (!pivot[i]) q.kept.push_back(i);
  const std::vector<std::size_t> kept = q.kept;
  q.project = [builder, kept](const Vector& v) {
    Vector r = builder->reduce(v);
    Vector out;
    out.reserve(kept.size());
    for (std::size_t i : kept) out.push_back(r[i]);
    return out;
  };
  std::vector<int> grades;
  for (std::size_t i : kept) grades.push_back(m.grade(i));
  std::vector<SparseMatrix> actions;
  for (std::size_t k = 0; k < m.algebra()->dim(); ++k) {
    std::vector<Vector> cols;
    for (std::size_t i : kept) cols.push_back(q.project(m.act_basis(k, m.basis_vector(i))));
    actions.push_back(sparse_from_columns(m.field(), kept.size(), cols));
  }
  q.module = GradedModule::make_unchecked(m.algebra(), std::move(grades), std::move(actions), m.graded());
  return q;
}

GradedModule dual_module(const GradedModule& m, const AlgebraPtr& opposite) {
  require(opposite->dim() == m.algebra()->dim(), ErrorKind::InvalidArgument, "opposite algebra has the wrong dim");
  std::vector<SparseMatrix> actions;
  for (const auto& act : m.actions()) actions.push_back(act.transpose());
  std::vector<int> grades = m.grades();
  for (int& g : grades) g = -g;
  return GradedModule::make_unchecked(opposite, std::move(grades), std::move(actions), m.graded());
}

std::vector<Matrix> hom_degree_zero(const GradedModule& m, const GradedModule& n) {
  require(m.algebra() == n.algebra(), ErrorKind::InvalidArgument, "hom between modules over different algebras");
  const Field f = m.field();
  const std::size_t dm = m.dim(), dn = n.dim();
  // Variable (p, q) is F[p][q] with grade(N_p) == grade(M_q).
  std::vector<std::vector<long>> var(dn, std::vector<long>(dm, -1));
  std::vector<std::pair<std::size_t, std::size_t>> vars;
  for (std::size_t p = 0; p < dn; ++p)
    for (std::size_t q = 0; q < dm; ++q)
      if (n.grade(p) == m.grade(q)) {
        var[p][q] = static_cast<long>(vars.size());
        vars.emplace_back(p, q);
      }
  if (vars.empty()) return {};

  la::SubspaceBuilder eqs(f, vars.size());
  for (std::size_t k : m.algebra()->generators()) {
    Matrix mk = m.action(k).to_dense();
    Matrix nk = n.action(k).to_dense();
    // (F M_k - N_k F)[p][q] = 0
    for (std::size_t p = 0; p < dn; ++p)
      for (std::size_t q = 0; q < dm; ++q) {
        Vector e = la::zero_vector(f, vars.size());
        bool any = false;
        for (std::size_t r = 0; r < dm; ++r)
          if (var[p][r] >= 0 && !mk(r, q).is_zero()) {
            e[var[p][r]] += mk(r, q);
            any = true;
          }
        for (std::size_t r = 0; r < dn; ++r)
          if (var[r][q] >= 0 && !nk(p, r).is_zero()) {
            e[var[r][q]] -= nk(p, r);
            any = true;
          }
        if (any) eqs.add(e);
      }
  }
  Matrix sys = Matrix::from_rows(f, vars.size(), eqs.rows());
  Matrix ns = eqs.dim() == 0 ? Matrix::identity(f, vars.size()) : la::nullspace(sys);
  std::vector<Matrix> out;
  for (std::size_t r = 0; r < ns.rows(); ++r) {
    Matrix h(f, dn, dm);
    for (std::size_t v = 0; v < vars.size(); ++v) h(vars[v].first, vars[v].second) = ns(r, v);
    out.push_back(std::move(h));
  }
  return out;
}

std::optional<Matrix> find_graded_isomorphism(const GradedModule& m, const GradedModule& n) {
  if (m.dim() != n.dim()) return std::nullopt;
  {
    std::vector<int> a = m.grades(), b = n.grades();
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return std::nullopt;
  }
  if (m.dim() == 0) return Matrix(m.field(), 0, 0);
  const std::vector<Matrix> homs = hom_degree_zero(m, n);
  if (homs.empty()) return std::nullopt;
  // Fixed linear congruential coefficients keep the search deterministic.
  std::uint64_t state = 0x9e3779b97f4a7c15ULL;
  for (int attempt = 0; attempt < 8; ++attempt) {
    Matrix h(m.field(), n.dim(), m.dim());
    for (const auto& b : homs) {
      state = state * 6364136223846793005ULL + 1442695040888963407ULL;
      const long long c = attempt == 0 ? 1 : static_cast<long long>((state >> 33) % 97) + 1;
      const Scalar sc(m.field(), c);
      for (std::size_t r = 0; r < h.rows(); ++r)
        for (std::size_t q = 0; q < h.cols(); ++q)
          if (!b(r, q).is_zero()) h(r, q).add_product(sc, b(r, q));
    }
    if (la::rank(h) == m.dim()) return h;
  }
  return std::nullopt;
}

namespace {

std::vector<Vector> radical_generators(const alg::GradedAlgebra& a) {
  const auto& series = a.radical_series();
  la::SubspaceBuilder b(a.field(), a.dim());
  if (series.layers.size() > 2)
    for (const auto& r : series.layers[2].row_vectors()) b.add(r);
  std::vector<Vector> out;
  if (series.layers.size() < 2) return out;
  const int top = a.max_grade();
  for (const auto& r : series.layers[1].row_vectors())
    for (int g = 0; g <= top; ++g) {
      Vector part = a.grade_part(r, g);
      if (!la::is_zero(part) && b.add(part)) out.push_back(part);
    }
  return out;
}

std::vector<Vector> radical_with(const GradedModule& m, const std::vector<Vector>& radgens) {
  std::vector<Vector> gens;
  for (const auto& g : radgens)
    for (std::size_t i = 0; i < m.dim(); ++i) {
      Vector w = m.act(g, m.basis_vector(i));
      if (la::is_zero(w)) continue;
      // Ungraded modules see every vector in grade 0; graded ones get homogeneous images.
      gens.push_back(std::move(w));
    }
  return generated_subspace(m, gens);
}

std::size_t span_dim(Field f, std::size_t n, const std::vector<Vector>& vs) {
  la::SubspaceBuilder b(f, n);
  for (const auto& v : vs) b.add(v);
  return b.dim();
}

std::vector<Vector> complete_idempotents(const alg::GradedAlgebra& a) {
  std::vector<Vector> out;
  if (a.idempotents()) {
    for (const auto& e : *a.idempotents()) out.push_back(a.grade_part(e, 0));
    return out;
  }
  if (a.dim() - a.radical().rows() == 1) return {a.unit()};
  std::vector<std::size_t> idem;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    Vector b = a.basis_vector(i);
    if (a.multiply(b, b) == b) idem.push_back(i);
  }
  Vector sum = a.zero();
  bool ok = !idem.empty();
  for (std::size_t i : idem) {
    sum = la::add(sum, a.basis_vector(i));
    for (std::size_t j : idem)
      if (i != j && !la::is_zero(a.multiply(a.basis_vector(i), a.basis_vector(j)))) ok = false;
  }
  if (!ok || sum != a.unit())
    fail(ErrorKind::IdempotentsRequired,
         a.name() + ": no idempotents supplied and the basis does not contain a complete orthogonal set");
  for (std::size_t i : idem) out.push_back(a.basis_vector(i));
  return out;
}

}  // namespace

std::shared_ptr<const SimpleSystem> simples_and_projectives(const AlgebraPtr& ap, bool graded) {
  const auto& a = *ap;
  const Field f = a.field();
  const std::size_t n = a.dim();
  auto sys = std::make_shared<SimpleSystem>();
  sys->algebra = ap;
  sys->graded = graded;
  const Matrix& rad = a.radical();
  la::SubspaceBuilder radb(f, n);
  for (const auto& r : rad.row_vectors()) radb.add(r);
  sys->radical_generators = radical_generators(a);
  sys->complete = complete_idempotents(a);

  for (std::size_t i = 0; i < sys->complete.size(); ++i) {
    const Vector& e = sys->complete[i];
    std::vector<Vector> eae, erade;
    for (std::size_t k = 0; k < n; ++k) eae.push_back(a.multiply(a.multiply(e, a.basis_vector(k)), e));
    for (const auto& r : radb.rows()) erade.push_back(a.multiply(a.multiply(e, r), e));
    const std::size_t top = span_dim(f, n, eae) - span_dim(f, n, erade);
    if (top != 1)
      fail(ErrorKind::NotSplit, "idempotent " + std::to_string(i) + " has eAe/e(rad A)e of dimension " +
                                    std::to_string(top) + "; need primitive idempotents over a splitting field");
  }

  // e ~ f iff f A e is not inside rad A.
  sys->class_of.assign(sys->complete.size(), 0);
  for (std::size_t i = 0; i < sys->complete.size(); ++i) {
    bool found = false;
    for (std::size_t c = 0; c < sys->idempotents.size() && !found; ++c) {
      const Vector& rep = sys->idempotents[c];
      for (std::size_t k = 0; k < n && !found; ++k) {
        Vector x = a.multiply(a.multiply(rep, a.basis_vector(k)), sys->complete[i]);
        if (!radb.contains(x)) {
          sys->class_of[i] = c;
          found = true;
        }
      }
    }
    if (!found) {
      sys->class_of[i] = sys->idempotents.size();
      sys->idempotents.push_back(sys->complete[i]);
    }
  }

  for (std::size_t c = 0; c < sys->idempotents.size(); ++c) {
    const Vector& e = sys->idempotents[c];
    std::map<int, la::SubspaceBuilder> by_grade;
    std::map<int, std::vector<Vector>> kept;
    auto offer = [&](const Vector& v, int g) {
      auto it = by_grade.try_emplace(g, f, n).first;
      if (it->second.add(v)) kept[g].push_back(v);
    };
    offer(e, 0);
    for (std::size_t k = 0; k < n; ++k) {
      Vector v = a.multiply(a.basis_vector(k), e);
      if (!la::is_zero(v)) offer(v, graded ? a.grade(k) : 0);
    }
    std::vector<Vector> basis;
    std::vector<int> grades;
    for (const auto& [g, vs] : kept)
      for (const auto& v : vs) {
        basis.push_back(v);
        grades.push_back(g);
      }
    la::BasisSolver solver(f, n, basis);
    std::vector<SparseMatrix> actions;
    for (std::size_t k = 0; k < n; ++k) {
      SparseMatrix act(f, basis.size(), basis.size());
      for (std::size_t i = 0; i < basis.size(); ++i) {
        Vector c = solver.coords_or_throw(a.multiply(a.basis_vector(k), basis[i]));
        for (std::size_t r = 0; r < c.size(); ++r)
          if (!c[r].is_zero()) act.add(r, i, c[r]);
      }
      actions.push_back(std::move(act));
    }
    GradedModule p = GradedModule::make_unchecked(ap, std::move(grades), std::move(actions), graded);
    QuotientModule head = quotient_module(p, radical_with(p, sys->radical_generators));
    // The head of A e is L(c), one dimension per complete idempotent in the class of e.
    const auto copies = static_cast<std::size_t>(std::count(sys->class_of.begin(), sys->class_of.end(), c));
    require(head.module.dim() == copies && head.module.grade_support() == std::vector<int>{0}, ErrorKind::NotSplit,
            "projective cover has a head of dimension " + std::to_string(head.module.dim()));
    sys->simples.push_back(head.module);
    sys->projectives.push_back(std::move(p));
    sys->projective_basis.push_back(std::move(basis));
  }
  return sys;
}

std::vector<Vector> radical_of(const GradedModule& m, const SimpleSystem& sys) {
  return radical_with(m, sys.radical_generators);
}

std::map<std::pair<std::size_t, int>, std::size_t> graded_character(const GradedModule& m, const SimpleSystem& sys) {
  std::map<std::pair<std::size_t, int>, std::size_t> out;
  for (std::size_t l = 0; l < sys.count(); ++l)
    for (int g : m.grade_support()) {
      std::vector<Vector> vs;
      for (std::size_t i : m.indices_of_grade(g)) vs.push_back(m.act(sys.idempotents[l], m.basis_vector(i)));
      std::size_t d = span_dim(m.field(), m.dim(), vs);
      if (d) out[{l, g}] = d;
    }
  return out;
}

std::map<std::pair<std::size_t, int>, std::size_t> head_multiplicities(const GradedModule& m,
                                                                       const SimpleSystem& sys) {
  const std::vector<Vector> rad = radical_of(m, sys);
  std::map<std::pair<std::size_t, int>, std::size_t> out;
  for (std::size_t l = 0; l < sys.count(); ++l)
    for (int g : m.grade_support()) {
      la::SubspaceBuilder b(m.field(), m.dim());
      for (const auto& r : rad) b.add(r);
      std::size_t d = 0;
      for (std::size_t i : m.indices_of_grade(g))
        if (b.add(m.act(sys.idempotents[l], m.basis_vector(i)))) ++d;
      if (d) out[{l, g}] = d;
    }
  return out;
}

}  // namespace gradecert::gmod
