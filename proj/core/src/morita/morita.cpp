#include "gradecert/morita/morita.hpp"

#include <algorithm>
#include <map>

namespace gradecert::morita {

using la::Field;
using la::Matrix;
using la::Scalar;
using la::SparseMatrix;

namespace {

std::vector<Vector> complete_idempotents(const AlgebraPtr& b) {
  if (b->idempotents()) return *b->idempotents();
  try {
    return gmod::simples_and_projectives(b)->complete;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::RadicalUnavailable && e.kind() != ErrorKind::IdempotentsRequired) throw;
    return {b->unit()};
  }
}

// Reduced homogeneous basis of span(vs), grade by grade in increasing order.
std::vector<Vector> graded_basis(const alg::GradedAlgebra& a, const std::vector<Vector>& vs) {
  std::map<int, std::vector<Vector>> by_grade;
  for (const auto& v : vs) {
    if (la::is_zero(v)) continue;
    auto g = a.homogeneous_grade(v);
    require(g.has_value(), ErrorKind::Internal, "expected a homogeneous element");
    by_grade[*g].push_back(v);
  }
  std::vector<Vector> out;
  for (auto& [g, rows] : by_grade) {
    auto red = la::rref(Matrix::from_rows(a.field(), a.dim(), rows));
    for (std::size_t r = 0; r < red.rank; ++r) out.push_back(red.reduced.row(r));
  }
  return out;
}

std::string short_label(const alg::GradedAlgebra& b, const Vector& v, const std::string& fallback) {
  std::optional<std::size_t> single;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    if (single || !v[i].is_one()) return fallback;
    single = i;
  }
  return single ? b.labels()[*single] : fallback;
}

bool pure_grade(const GradedModule& m) { return m.grade_support().size() <= 1; }

}  // namespace

Vector matrix_unit(const alg::GradedAlgebra& b, std::size_t n, std::size_t i, std::size_t j, const Vector& x) {
  const std::size_t d = b.dim();
  Vector v = la::zero_vector(b.field(), n * n * d);
  for (std::size_t k = 0; k < d; ++k) v[(i * n + j) * d + k] = x[k];
  return v;
}

AlgebraPtr inflate(const AlgebraPtr& b, std::size_t n) {
  require(n >= 1, ErrorKind::InvalidArgument, "matrix size must be at least 1");
  if (n == 1) return b;
  const std::size_t d = b->dim();
  const Field f = b->field();
  auto idx = [&](std::size_t i, std::size_t j, std::size_t k) { return (i * n + j) * d + k; };

  alg::AlgebraSpec s;
  s.name = "M" + std::to_string(n) + "(" + b->name() + ")";
  s.field = f;
  s.dim = n * n * d;
  s.labels.resize(s.dim);
  s.grades.resize(s.dim);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < d; ++k) {
        s.labels[idx(i, j, k)] = "E" + std::to_string(i + 1) + std::to_string(j + 1) + "." + b->labels()[k];
        s.grades[idx(i, j, k)] = b->grade(k);
      }
  for (std::size_t x = 0; x < d; ++x)
    for (std::size_t y = 0; y < d; ++y)
      for (const auto& [k, c] : b->product(x, y))
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j)
            for (std::size_t l = 0; l < n; ++l) s.mult.push_back({idx(i, j, x), idx(j, l, y), idx(i, l, k), c});
  s.unit = la::zero_vector(f, s.dim);
  for (std::size_t i = 0; i < n; ++i) la::axpy(s.unit, Scalar::one(f), matrix_unit(*b, n, i, i, b->unit()));

  std::vector<Vector> idem;
  const auto base = complete_idempotents(b);
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& e : base) idem.push_back(matrix_unit(*b, n, i, i, e));
  s.idempotents = idem;

  try {
    const auto rad = b->radical().row_vectors();
    std::vector<Vector> rows;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (const auto& r : rad) rows.push_back(matrix_unit(*b, n, i, j, r));
    s.radical_basis = rows;
    s.radical_source = alg::RadicalSource::Supplied;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::RadicalUnavailable) throw;
  }
  return alg::build_algebra(std::move(s));
}

bool is_full_idempotent(const alg::GradedAlgebra& b, const Vector& e) {
  require(b.multiply(e, e) == e, ErrorKind::NotIdempotent, "element is not idempotent");
  std::vector<Vector> basis, eb;
  for (std::size_t k = 0; k < b.dim(); ++k) {
    basis.push_back(b.basis_vector(k));
    eb.push_back(b.multiply(e, b.basis_vector(k)));
  }
  return alg::product_span(b, basis, eb).dim() == b.dim();
}

Vector grade0_idempotent(const AlgebraPtr& b, const Vector& e) {
  require(b->multiply(e, e) == e, ErrorKind::NotIdempotent, "element is not idempotent");
  Vector e0 = b->grade_part(e, 0);
  require(b->multiply(e0, e0) == e0, ErrorKind::Internal, "grade 0 part of an idempotent is not idempotent");
  const auto reg = gmod::regular_module(b, false);
  const auto be = gmod::submodule_generated(reg, {e});
  const auto be0 = gmod::submodule_generated(reg, {e0});
  require(be.basis.size() == be0.basis.size(), ErrorKind::Internal, "B e and B e_0 have different dimensions");
  auto sys = gmod::simples_and_projectives(b, false);
  require(gmod::head_multiplicities(be.module, *sys) == gmod::head_multiplicities(be0.module, *sys),
          ErrorKind::Internal, "B e and B e_0 have different heads");
  return e0;
}

MoritaCorner::MoritaCorner(AlgebraPtr b, Vector e) : b_(std::move(b)), e_(std::move(e)) {
  const auto& B = *b_;
  const Field f = B.field();
  require(!la::is_zero(e_) && B.homogeneous_grade(e_) == 0, ErrorKind::NotGradeZero,
          "corner idempotent must be homogeneous of grade 0");
  require(is_full_idempotent(B, e_), ErrorKind::NotFull, "idempotent is not full: BeB != B");

  std::vector<Vector> ebe, be;
  for (std::size_t k = 0; k < B.dim(); ++k) {
    const Vector bk = B.basis_vector(k);
    ebe.push_back(B.multiply(B.multiply(e_, bk), e_));
    be.push_back(B.multiply(bk, e_));
  }
  embed_ = graded_basis(B, ebe);
  be_ = graded_basis(B, be);
  corner_coords_ = std::make_shared<la::BasisSolver>(f, B.dim(), embed_);
  be_coords_ = std::make_shared<la::BasisSolver>(f, B.dim(), be_);

  const std::size_t m = embed_.size();
  alg::AlgebraSpec s;
  s.name = "corner(" + B.name() + ")";
  s.field = f;
  s.dim = m;
  for (std::size_t k = 0; k < m; ++k) {
    s.labels.push_back(short_label(B, embed_[k], "c" + std::to_string(k)));
    s.grades.push_back(*B.homogeneous_grade(embed_[k]));
  }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const Vector c = corner_coords_->coords_or_throw(B.multiply(embed_[i], embed_[j]));
      for (std::size_t k = 0; k < m; ++k)
        if (!c[k].is_zero()) s.mult.push_back({i, j, k, c[k]});
    }
  s.unit = corner_coords_->coords_or_throw(e_);

  // e f e for the idempotents of B, when they restrict to a complete orthogonal set of the corner.
  if (B.idempotents()) {
    std::vector<Vector> cut;
    for (const auto& fi : *B.idempotents()) {
      Vector v = B.multiply(B.multiply(e_, fi), e_);
      if (!la::is_zero(v)) cut.push_back(v);
    }
    bool ok = true;
    Vector sum = B.zero();
    for (std::size_t i = 0; i < cut.size() && ok; ++i) {
      la::axpy(sum, Scalar::one(f), cut[i]);
      for (std::size_t j = 0; j < cut.size() && ok; ++j) {
        const Vector p = B.multiply(cut[i], cut[j]);
        ok = i == j ? p == cut[i] : la::is_zero(p);
      }
    }
    if (ok && sum == e_) {
      std::vector<Vector> idem;
      for (const auto& v : cut) idem.push_back(corner_coords_->coords_or_throw(v));
      s.idempotents = idem;
    }
  }
  try {
    la::SubspaceBuilder rad(f, m);
    for (const auto& r : B.radical().row_vectors())
      rad.add(corner_coords_->coords_or_throw(B.multiply(B.multiply(e_, r), e_)));
    s.radical_basis = rad.rows();
    s.radical_source = alg::RadicalSource::Supplied;
  } catch (const Error& err) {
    if (err.kind() != ErrorKind::RadicalUnavailable) throw;
  }
  a_ = alg::build_algebra(std::move(s));
}

GradedModule MoritaCorner::F(const GradedModule& n) const {
  require(n.algebra() == b_, ErrorKind::InvalidArgument, "module is not over the big algebra");
  const Field f = n.field();
  std::map<int, std::vector<Vector>> by_grade;
  for (std::size_t i = 0; i < n.dim(); ++i) {
    Vector v = n.act(e_, n.basis_vector(i));
    if (!la::is_zero(v)) by_grade[n.grade(i)].push_back(std::move(v));
  }
  std::vector<Vector> basis;
  std::vector<int> grades;
  for (auto& [g, rows] : by_grade) {
    auto red = la::rref(Matrix::from_rows(f, n.dim(), rows));
    for (std::size_t r = 0; r < red.rank; ++r) {
      basis.push_back(red.reduced.row(r));
      grades.push_back(g);
    }
  }
  la::BasisSolver coords(f, n.dim(), basis);
  std::vector<SparseMatrix> actions;
  for (std::size_t k = 0; k < a_->dim(); ++k) {
    SparseMatrix act(f, basis.size(), basis.size());
    for (std::size_t c = 0; c < basis.size(); ++c) {
      const Vector img = coords.coords_or_throw(n.act(embed_[k], basis[c]));
      for (std::size_t r = 0; r < img.size(); ++r)
        if (!img[r].is_zero()) act.add(r, c, img[r]);
    }
    actions.push_back(std::move(act));
  }
  return GradedModule::make(a_, std::move(grades), std::move(actions), n.graded());
}

GradedModule MoritaCorner::F_dagger(const GradedModule& y) const {
  require(y.algebra() == a_, ErrorKind::InvalidArgument, "module is not over the corner algebra");
  const auto& B = *b_;
  const Field f = B.field();
  const std::size_t p = be_.size(), m = y.dim();
  auto at = [m](std::size_t s, std::size_t z) { return s * m + z; };

  std::vector<int> grades(p * m);
  for (std::size_t s = 0; s < p; ++s)
    for (std::size_t z = 0; z < m; ++z) grades[at(s, z)] = *B.homogeneous_grade(be_[s]) + y.grade(z);

  std::vector<SparseMatrix> actions;
  for (std::size_t k = 0; k < B.dim(); ++k) {
    SparseMatrix act(f, p * m, p * m);
    for (std::size_t s = 0; s < p; ++s) {
      const Vector c = be_coords_->coords_or_throw(B.multiply(B.basis_vector(k), be_[s]));
      for (std::size_t t = 0; t < p; ++t)
        if (!c[t].is_zero())
          for (std::size_t z = 0; z < m; ++z) act.add(at(t, z), at(s, z), c[t]);
    }
    actions.push_back(std::move(act));
  }
  const GradedModule v = GradedModule::make_unchecked(b_, grades, std::move(actions), y.graded());

  // s t (x) z - s (x) t z for s in Be, t in eBe, z in Y.
  std::vector<Vector> rels;
  for (std::size_t s = 0; s < p; ++s)
    for (std::size_t t = 0; t < embed_.size(); ++t) {
      const Vector st = be_coords_->coords_or_throw(B.multiply(be_[s], embed_[t]));
      for (std::size_t z = 0; z < m; ++z) {
        Vector rel = la::zero_vector(f, p * m);
        for (std::size_t u = 0; u < p; ++u)
          if (!st[u].is_zero()) rel[at(u, z)] += st[u];
        const Vector tz = y.act_basis(t, y.basis_vector(z));
        for (std::size_t w = 0; w < m; ++w)
          if (!tz[w].is_zero()) rel[at(s, w)] -= tz[w];
        if (!la::is_zero(rel)) rels.push_back(std::move(rel));
      }
    }
  return gmod::quotient_module(v, rels).module;
}

qhk::WeightPoset MoritaCorner::transfer_poset(const qhk::WeightPoset& on_b) const {
  auto sys_b = gmod::simples_and_projectives(b_);
  auto sys_a = gmod::simples_and_projectives(a_);
  require(sys_a->count() == sys_b->count() && on_b.size() == sys_b->count(), ErrorKind::Internal,
          "corner and algebra have different numbers of simples");
  std::vector<std::size_t> to(sys_b->count());
  for (std::size_t l = 0; l < sys_b->count(); ++l) {
    const GradedModule fl = F(sys_b->simples[l]);
    std::optional<std::size_t> hit;
    for (std::size_t mu = 0; mu < sys_a->count(); ++mu)
      for (std::size_t i = 0; i < fl.dim() && !hit; ++i)
        if (!la::is_zero(fl.act(sys_a->idempotents[mu], fl.basis_vector(i)))) hit = mu;
    require(hit.has_value(), ErrorKind::Internal, "F sends a simple module to zero");
    to[l] = *hit;
  }
  std::vector<std::pair<std::size_t, std::size_t>> rel;
  for (auto [x, y] : on_b.relations()) rel.push_back({to[x], to[y]});
  return qhk::WeightPoset::from_relations(on_b.size(), rel);
}

bool EquivalenceReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const EquivalenceCheck& c) { return c.ok; });
}

EquivalenceReport verify_equivalence_pair(const MoritaCorner& c, const std::vector<GradedModule>& over_b,
                                          const std::vector<GradedModule>& over_corner) {
  EquivalenceReport rep;
  auto check = [&](const std::string& subject, const GradedModule& start, const GradedModule& mid,
                   const GradedModule& back) {
    EquivalenceCheck ch;
    ch.subject = subject;
    const bool iso = gmod::find_graded_isomorphism(back, start).has_value();
    const bool purity = !pure_grade(start) || (pure_grade(mid) && mid.grade_support() == start.grade_support());
    ch.ok = iso && purity;
    if (!iso) ch.detail = "round trip is not isomorphic to the input (dimension " + std::to_string(back.dim()) +
                          " vs " + std::to_string(start.dim()) + ")";
    else if (!purity) ch.detail = "grade purity lost";
    rep.checks.push_back(ch);
  };
  for (std::size_t i = 0; i < over_b.size(); ++i) {
    const GradedModule fn = c.F(over_b[i]);
    check("B-module " + std::to_string(i), over_b[i], fn, c.F_dagger(fn));
  }
  for (std::size_t i = 0; i < over_corner.size(); ++i) {
    const GradedModule fy = c.F_dagger(over_corner[i]);
    check("corner module " + std::to_string(i), over_corner[i], fy, c.F(fy));
  }
  return rep;
}

EquivalenceReport verify_equivalence_pair(const MoritaCorner& c) {
  auto collect = [](const AlgebraPtr& a) {
    auto sys = gmod::simples_and_projectives(a);
    std::vector<GradedModule> ms = sys->simples;
    ms.insert(ms.end(), sys->projectives.begin(), sys->projectives.end());
    ms.push_back(gmod::shift(sys->simples.front(), 3));
    ms.push_back(gmod::shift(sys->projectives.front(), 3));
    return ms;
  };
  return verify_equivalence_pair(c, collect(c.big()), collect(c.corner()));
}

qhk::WeightPoset inflate_poset(const AlgebraPtr& b, const AlgebraPtr& m, std::size_t n,
                               const qhk::WeightPoset& on_b) {
  if (n == 1) return on_b;
  auto sys_b = gmod::simples_and_projectives(b);
  auto sys_m = gmod::simples_and_projectives(m);
  require(sys_b->count() == sys_m->count(), ErrorKind::Internal, "inflation changed the number of simples");
  for (std::size_t l = 0; l < sys_b->count(); ++l)
    require(sys_m->idempotents[l] == matrix_unit(*b, n, 0, 0, sys_b->idempotents[l]), ErrorKind::Internal,
            "inflation reordered the simples");
  return on_b;
}

}  // namespace gradecert::morita
