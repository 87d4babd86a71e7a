#include "gradecert/gradmod/resolution.hpp"

#include <algorithm>

namespace gradecert::gmod {

namespace {

// Rows of `basis` grouped by grade, preserving order.
std::map<int, std::vector<Vector>> by_grade(const GradedModule& x, const std::vector<Vector>& basis) {
  std::map<int, std::vector<Vector>> out;
  for (const auto& v : basis) out[*x.homogeneous_grade(v)].push_back(v);
  return out;
}

struct Cover {
  std::vector<Summand> summands;
  std::vector<std::size_t> offsets;
  GradedModule module;
  Matrix map;  // dim X x dim Q
};

// Projective cover Q -> K of a submodule K of X given by a homogeneous basis.
Cover projective_cover(const GradedModule& x, const std::vector<Vector>& k_basis, const SimpleSystem& sys) {
  const Field f = x.field();
  std::vector<Vector> rad_gens;
  for (const auto& g : sys.radical_generators)
    for (const auto& v : k_basis) {
      Vector w = x.act(g, v);
      if (!la::is_zero(w)) rad_gens.push_back(std::move(w));
    }
  la::SubspaceBuilder top(f, x.dim());
  for (const auto& r : generated_subspace(x, rad_gens)) top.add(r);

  Cover c;
  std::vector<Vector> lifts;
  for (const auto& [g, vs] : by_grade(x, k_basis))
    for (std::size_t l = 0; l < sys.count(); ++l)
      for (const auto& v : vs) {
        Vector e = x.act(sys.idempotents[l], v);
        if (top.add(e)) {
          c.summands.push_back({l, g});
          lifts.push_back(std::move(e));
        }
      }

  std::vector<GradedModule> parts;
  std::size_t off = 0;
  for (const auto& s : c.summands) {
    parts.push_back(shift(sys.projectives[s.lambda], s.shift));
    c.offsets.push_back(off);
    off += parts.back().dim();
  }
  c.map = Matrix(f, x.dim(), off);
  for (std::size_t t = 0; t < c.summands.size(); ++t) {
    const auto& pb = sys.projective_basis[c.summands[t].lambda];
    for (std::size_t j = 0; j < pb.size(); ++j) {
      Vector img = x.act(pb[j], lifts[t]);
      for (std::size_t r = 0; r < x.dim(); ++r) c.map(r, c.offsets[t] + j) = img[r];
    }
  }
  if (!parts.empty()) c.module = direct_sum(parts);
  return c;
}

std::vector<Vector> graded_kernel(const GradedModule& q, const Matrix& map) {
  std::vector<Vector> out;
  for (int g : q.grade_support()) {
    std::vector<std::size_t> cols = q.indices_of_grade(g);
    Matrix ns = la::nullspace(map.select_cols(cols));
    for (std::size_t r = 0; r < ns.rows(); ++r) {
      Vector v = q.zero();
      for (std::size_t c = 0; c < cols.size(); ++c) v[cols[c]] = ns(r, c);
      out.push_back(std::move(v));
    }
  }
  return out;
}

}  // namespace

ResolutionStepper::ResolutionStepper(const GradedModule& m, const SimpleSystem& sys) : sys_(&sys), input_(m) {
  require(m.algebra() == sys.algebra, ErrorKind::InvalidArgument, "module and simple system disagree on the algebra");
  require(m.graded() == sys.graded, ErrorKind::InvalidArgument, "graded module needs a graded simple system");
  res_.differentials.emplace_back();
  res_.augmentation = Matrix(m.field(), m.dim(), 0);
  for (std::size_t i = 0; i < m.dim(); ++i) syzygy_.push_back(m.basis_vector(i));
  syzygies_.push_back(syzygy_);
}

void ResolutionStepper::step() {
  if (done()) return;
  const GradedModule& x = res_.modules.empty() ? input_ : res_.modules.back();
  Cover c = projective_cover(x, syzygy_, *sys_);
  require(la::rank(c.map) == syzygy_.size(), ErrorKind::Internal, "projective cover is not onto");
  if (res_.terms.empty())
    res_.augmentation = c.map;
  else
    res_.differentials.push_back(c.map);
  res_.terms.push_back(c.summands);
  res_.offsets.push_back(c.offsets);
  syzygy_ = graded_kernel(c.module, c.map);
  syzygies_.push_back(syzygy_);
  res_.modules.push_back(std::move(c.module));
}

GradedModule ResolutionStepper::syzygy_module(std::size_t i) const {
  if (i == 0) return input_;
  return submodule_on_basis(res_.modules[i - 1], syzygies_[i]);
}

GradedResolution ResolutionStepper::result() const {
  GradedResolution r = res_;
  r.terminated = done();
  r.truncated = !done();
  return r;
}

GradedResolution minimal_graded_resolution(const GradedModule& m, const SimpleSystem& sys,
                                           std::optional<std::size_t> max_length) {
  const std::size_t cap = max_length.value_or(m.algebra()->dim() * m.algebra()->dim());
  ResolutionStepper st(m, sys);
  while (!st.done() && st.steps() <= cap) st.step();
  return st.result();
}

GradedResolution minimal_graded_resolution(const GradedModule& m, std::optional<std::size_t> max_length) {
  auto sys = simples_and_projectives(m.algebra(), m.graded());
  return minimal_graded_resolution(m, *sys, max_length);
}

std::size_t ExtTable::at(std::size_t n, int j) const {
  auto it = entries.find({n, j});
  return it == entries.end() ? 0 : it->second;
}

std::size_t ExtTable::total(std::size_t n) const {
  std::size_t s = 0;
  for (const auto& [key, d] : entries)
    if (key.first == n) s += d;
  return s;
}

namespace {

// Homogeneous basis of e N and a solver for it.
struct CornerBasis {
  std::vector<Vector> basis;
  std::vector<int> grades;
  std::optional<la::BasisSolver> solver;
};

CornerBasis corner_of(const GradedModule& n, const Vector& e) {
  CornerBasis cb;
  std::map<int, la::SubspaceBuilder> seen;
  for (std::size_t i = 0; i < n.dim(); ++i) {
    Vector v = n.act(e, n.basis_vector(i));
    if (la::is_zero(v)) continue;
    int g = n.grade(i);
    if (seen.try_emplace(g, n.field(), n.dim()).first->second.add(v)) {
      cb.basis.push_back(std::move(v));
      cb.grades.push_back(g);
    }
  }
  cb.solver.emplace(n.field(), n.dim(), cb.basis);
  return cb;
}

}  // namespace

ExtTable ext_from_resolution(const GradedResolution& res, const GradedModule& n, std::size_t max_degree,
                             const SimpleSystem& sys) {
  require(res.terminated || res.length() >= max_degree + 2, ErrorKind::InvalidArgument,
          "resolution is too short for the requested ext degree");
  require(n.algebra() == sys.algebra, ErrorKind::InvalidArgument, "module over a different algebra");
  const Field f = n.field();
  std::vector<CornerBasis> corners;
  for (const auto& e : sys.idempotents) corners.push_back(corner_of(n, e));

  // Cochain basis of Hom(P_i, N): pairs (summand, corner vector), with hom degree grade - shift.
  struct Cell {
    std::size_t summand;
    std::size_t vec;
    int degree;
  };
  auto cells = [&](std::size_t i) {
    std::vector<Cell> out;
    if (i >= res.length()) return out;
    for (std::size_t s = 0; s < res.terms[i].size(); ++s) {
      const auto& cb = corners[res.terms[i][s].lambda];
      for (std::size_t v = 0; v < cb.basis.size(); ++v) out.push_back({s, v, cb.grades[v] - res.terms[i][s].shift});
    }
    return out;
  };

  // rank of delta^i restricted to each hom degree.
  auto delta_ranks = [&](std::size_t i) {
    std::map<int, std::size_t> ranks;
    if (i + 1 >= res.length()) return ranks;
    const auto src = cells(i);
    const auto dst = cells(i + 1);
    const Matrix& d = res.differentials[i + 1];
    const auto& terms_i = res.terms[i];
    const auto& terms_j = res.terms[i + 1];
    std::vector<std::size_t> dst_start(terms_j.size() + 1, 0);
    for (std::size_t t = 0; t < terms_j.size(); ++t)
      dst_start[t + 1] = dst_start[t] + corners[terms_j[t].lambda].basis.size();
    std::vector<std::size_t> src_start(terms_i.size() + 1, 0);
    for (std::size_t s = 0; s < terms_i.size(); ++s)
      src_start[s + 1] = src_start[s] + corners[terms_i[s].lambda].basis.size();

    Matrix full(f, dst.size(), src.size());
    for (std::size_t t = 0; t < terms_j.size(); ++t) {
      const std::size_t gen_col = res.offsets[i + 1][t];
      for (std::size_t s = 0; s < terms_i.size(); ++s) {
        const auto& pb = sys.projective_basis[terms_i[s].lambda];
        Vector c = sys.algebra->zero();
        for (std::size_t j = 0; j < pb.size(); ++j) {
          const Scalar& coef = d(res.offsets[i][s] + j, gen_col);
          if (!coef.is_zero()) la::axpy(c, coef, pb[j]);
        }
        if (la::is_zero(c)) continue;
        const auto& src_cb = corners[terms_i[s].lambda];
        const auto& dst_cb = corners[terms_j[t].lambda];
        for (std::size_t v = 0; v < src_cb.basis.size(); ++v) {
          Vector w = n.act(c, src_cb.basis[v]);
          if (la::is_zero(w)) continue;
          Vector coords = dst_cb.solver->coords_or_throw(w);
          for (std::size_t u = 0; u < coords.size(); ++u)
            if (!coords[u].is_zero()) full(dst_start[t] + u, src_start[s] + v) += coords[u];
        }
      }
    }
    std::map<int, std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> blocks;
    for (std::size_t r = 0; r < dst.size(); ++r) blocks[dst[r].degree].first.push_back(r);
    for (std::size_t c = 0; c < src.size(); ++c) blocks[src[c].degree].second.push_back(c);
    for (const auto& [h, rc] : blocks) {
      if (rc.first.empty() || rc.second.empty()) continue;
      ranks[h] = la::rank(full.select_rows(rc.first).select_cols(rc.second));
    }
    return ranks;
  };

  ExtTable table;
  table.max_degree = max_degree;
  std::map<int, std::size_t> prev_ranks;
  for (std::size_t i = 0; i <= max_degree; ++i) {
    std::map<int, std::size_t> dims;
    for (const auto& c : cells(i)) ++dims[c.degree];
    auto ranks = delta_ranks(i);
    for (const auto& [h, d] : dims) {
      const std::size_t boundary = prev_ranks.count(h) ? prev_ranks[h] : 0;
      const std::size_t out = ranks.count(h) ? ranks[h] : 0;
      const std::size_t h_dim = d - out - boundary;
      if (h_dim) table.entries[{i, -h}] = h_dim;
    }
    prev_ranks = std::move(ranks);
  }
  return table;
}

ExtTable graded_ext(const GradedModule& m, const GradedModule& n, std::size_t max_degree, const SimpleSystem& sys) {
  GradedResolution res = minimal_graded_resolution(m, sys, max_degree + 1);
  return ext_from_resolution(res, n, max_degree, sys);
}

ExtTable graded_ext(const GradedModule& m, const GradedModule& n, std::size_t max_degree) {
  auto sys = simples_and_projectives(m.algebra(), m.graded());
  return graded_ext(m, n, max_degree, *sys);
}

std::vector<std::size_t> ungraded_ext(const GradedModule& m, const GradedModule& n, std::size_t max_degree) {
  auto sys = simples_and_projectives(m.algebra(), false);
  ExtTable t = graded_ext(forget_grading(m), forget_grading(n), max_degree, *sys);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i <= max_degree; ++i) out.push_back(t.total(i));
  return out;
}

LinearityResult is_linear(const GradedModule& m, const SimpleSystem& sys, std::optional<std::size_t> max_length) {
  GradedResolution res = minimal_graded_resolution(m, sys, max_length);
  LinearityResult out;
  out.truncated = res.truncated;
  for (std::size_t i = 0; i < res.length() && out.linear; ++i)
    for (const auto& s : res.terms[i])
      if (s.shift != static_cast<int>(i)) {
        out.linear = false;
        out.failure = std::make_pair(i, s.shift);
        break;
      }
  return out;
}

LinearityResult is_linear(const GradedModule& m, std::optional<std::size_t> max_length) {
  auto sys = simples_and_projectives(m.algebra(), m.graded());
  return is_linear(m, *sys, max_length);
}

}  // namespace gradecert::gmod
