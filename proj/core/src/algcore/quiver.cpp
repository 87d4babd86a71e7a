#include "gradecert/algcore/quiver.hpp"

#include <algorithm>
#include <map>
#include <optional>

namespace gradecert::alg {

namespace {

struct Path {
  std::vector<std::size_t> arrows;  // traversal order
  std::size_t source = 0;
  std::size_t target = 0;
  int grade = 0;
};

class PathTable {
 public:
  PathTable(const QuiverPresentation& q, std::size_t max_len) : q_(q), max_len_(max_len) {
    for (std::size_t v = 0; v < q.vertex_count; ++v) insert(Path{{}, v, v, 0});
    std::size_t begin = 0;
    for (std::size_t len = 1; len <= max_len; ++len) {
      const std::size_t end = paths_.size();
      for (std::size_t p = begin; p < end; ++p)
        for (std::size_t a = 0; a < q.arrows.size(); ++a) {
          if (q.arrows[a].source != paths_[p].target) continue;
          Path next = paths_[p];
          next.arrows.push_back(a);
          next.target = q.arrows[a].target;
          next.grade += q.arrows[a].grade;
          insert(std::move(next));
        }
      begin = end;
    }
  }

  std::size_t size() const { return paths_.size(); }
  const Path& operator[](std::size_t i) const { return paths_[i]; }
  std::size_t length(std::size_t i) const { return paths_[i].arrows.size(); }

  /// Index of the path with the given traversal, nullopt when it is not a path or too long.
  std::optional<std::size_t> find(const std::vector<std::size_t>& arrows, std::size_t vertex) const {
    if (arrows.empty()) return vertex;
    auto it = index_.find(arrows);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// p * q, i.e. q then p.
  std::optional<std::size_t> compose(std::size_t p, std::size_t q) const {
    const Path& pp = paths_[p];
    const Path& qq = paths_[q];
    if (qq.target != pp.source) return std::nullopt;
    if (qq.arrows.empty()) return p;
    if (pp.arrows.empty()) return q;
    if (qq.arrows.size() + pp.arrows.size() > max_len_) return std::nullopt;
    std::vector<std::size_t> t = qq.arrows;
    t.insert(t.end(), pp.arrows.begin(), pp.arrows.end());
    return find(t, 0);
  }

  std::string label(std::size_t i) const {
    const Path& p = paths_[i];
    if (p.arrows.empty()) return "e" + std::to_string(p.source + 1);
    std::string out;
    for (auto it = p.arrows.rbegin(); it != p.arrows.rend(); ++it) {
      if (!out.empty()) out += "*";
      out += q_.arrows[*it].label;
    }
    return out;
  }

 private:
  void insert(Path p) {
    if (!p.arrows.empty()) index_.emplace(p.arrows, paths_.size());
    paths_.push_back(std::move(p));
  }

  const QuiverPresentation& q_;
  std::size_t max_len_;
  std::vector<Path> paths_;
  std::map<std::vector<std::size_t>, std::size_t> index_;
};

struct ParsedRelation {
  std::vector<std::pair<Scalar, std::size_t>> terms;  // coefficient, path index
  std::size_t source = 0;
  std::size_t target = 0;
  std::size_t min_length = 0;
};

}  // namespace

AlgebraPtr from_quiver(const QuiverPresentation& q) {
  const Field f = q.field;
  require(q.vertex_count > 0, ErrorKind::InvalidArgument, "quiver has no vertices");
  std::map<std::string, std::size_t> arrow_of;
  for (std::size_t a = 0; a < q.arrows.size(); ++a) {
    const Arrow& ar = q.arrows[a];
    require(ar.source < q.vertex_count && ar.target < q.vertex_count, ErrorKind::InvalidArgument,
            "arrow " + ar.label + " has an unknown endpoint");
    require(ar.grade >= 0, ErrorKind::GradingViolation, "arrow " + ar.label + " has a negative grade");
    require(arrow_of.emplace(ar.label, a).second, ErrorKind::InvalidArgument, "duplicate arrow label " + ar.label);
  }

  const std::size_t top = q.truncation_degree + 1;
  PathTable paths(q, top);
  const std::size_t np = paths.size();

  std::vector<ParsedRelation> rels;
  for (const auto& r : q.relations) {
    ParsedRelation pr;
    std::optional<int> grade;
    pr.min_length = top + 1;
    for (const auto& [coef, labels] : r.terms) {
      require(coef.field() == f, ErrorKind::FieldMismatch, "relation coefficient field");
      require(labels.size() >= 2, ErrorKind::InvalidArgument, "relation terms must be paths of length at least 2");
      std::vector<std::size_t> trav;
      for (auto it = labels.rbegin(); it != labels.rend(); ++it) {
        auto a = arrow_of.find(*it);
        require(a != arrow_of.end(), ErrorKind::InvalidArgument, "relation uses unknown arrow " + *it);
        trav.push_back(a->second);
      }
      for (std::size_t k = 1; k < trav.size(); ++k)
        require(q.arrows[trav[k - 1]].target == q.arrows[trav[k]].source, ErrorKind::InvalidArgument,
                "relation term is not a path");
      const std::size_t src = q.arrows[trav.front()].source;
      const std::size_t tgt = q.arrows[trav.back()].target;
      int g = 0;
      for (std::size_t a : trav) g += q.arrows[a].grade;
      if (pr.terms.empty()) {
        pr.source = src;
        pr.target = tgt;
      }
      require(src == pr.source && tgt == pr.target, ErrorKind::InvalidArgument,
              "relation terms have different endpoints");
      if (grade && *grade != g) fail(ErrorKind::GradingViolation, "relation is not homogeneous for the grading");
      grade = g;
      pr.min_length = std::min(pr.min_length, trav.size());
      // Terms longer than the window vanish there.
      if (auto idx = paths.find(trav, 0)) pr.terms.emplace_back(coef, *idx);
    }
    if (!pr.terms.empty()) rels.push_back(std::move(pr));
  }

  // Columns ordered longest path first so that echelon pivots fall on long paths.
  std::vector<std::size_t> col(np);
  {
    std::vector<std::size_t> order(np);
    for (std::size_t i = 0; i < np; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return paths.length(a) > paths.length(b); });
    for (std::size_t c = 0; c < np; ++c) col[order[c]] = c;
  }

  // Ideal in the window kQ / kQ_{>top}: spanned by p r q.
  la::SubspaceBuilder ideal(f, np);
  for (const auto& r : rels)
    for (std::size_t p = 0; p < np; ++p) {
      if (paths[p].source != r.target) continue;
      for (std::size_t s = 0; s < np; ++s) {
        if (paths[s].target != r.source) continue;
        if (paths.length(p) + paths.length(s) + r.min_length > top) continue;
        Vector v = la::zero_vector(f, np);
        for (const auto& [c, t] : r.terms) {
          auto ts = paths.compose(t, s);
          if (!ts) continue;
          auto pts = paths.compose(p, *ts);
          if (pts) v[col[*pts]] += c;
        }
        ideal.add(v);
      }
    }

  std::vector<std::size_t> longest;
  for (std::size_t p = 0; p < np; ++p)
    if (paths.length(p) == top) longest.push_back(p);
  for (std::size_t p : longest)
    if (!ideal.contains(la::unit_vector(f, np, col[p])))
      fail(ErrorKind::NotFiniteDimensional, "path " + paths.label(p) + " of length " + std::to_string(top) +
                                                " survives; raise the truncation degree or add relations");

  la::SubspaceBuilder reducer(f, np);
  for (std::size_t p : longest) reducer.add(la::unit_vector(f, np, col[p]));
  for (const auto& r : ideal.rows()) reducer.add(r);
  std::vector<bool> pivot(np, false);
  for (std::size_t c : reducer.pivots()) pivot[c] = true;

  std::vector<std::size_t> basis;
  for (std::size_t p = 0; p < np; ++p)
    if (!pivot[col[p]]) basis.push_back(p);
  const std::size_t n = basis.size();

  auto coords = [&](const Vector& window) {
    Vector r = reducer.reduce(window);
    Vector out;
    out.reserve(n);
    for (std::size_t p : basis) out.push_back(r[col[p]]);
    return out;
  };

  AlgebraSpec s;
  s.name = q.name;
  s.field = f;
  s.dim = n;
  for (std::size_t p : basis) {
    s.labels.push_back(paths.label(p));
    s.grades.push_back(paths[p].grade);
  }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      auto xy = paths.compose(basis[x], basis[y]);
      if (!xy) continue;
      Vector c = coords(la::unit_vector(f, np, col[*xy]));
      for (std::size_t z = 0; z < n; ++z)
        if (!c[z].is_zero()) s.mult.push_back({x, y, z, c[z]});
    }
  s.unit = la::zero_vector(f, n);
  std::vector<Vector> idem;
  std::vector<Vector> rad;
  for (std::size_t x = 0; x < n; ++x) {
    if (paths.length(basis[x]) == 0) {
      s.unit[x] = Scalar::one(f);
      idem.push_back(la::unit_vector(f, n, x));
    } else {
      rad.push_back(la::unit_vector(f, n, x));
    }
  }
  s.idempotents = idem;
  s.radical_basis = rad;
  s.radical_source = RadicalSource::ArrowIdeal;
  return GradedAlgebra::build(std::move(s));
}

}  // namespace gradecert::alg
