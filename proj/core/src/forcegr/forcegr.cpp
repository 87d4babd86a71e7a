#include "gradecert/forcegr/forcegr.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace gradecert::fgr {

using la::Field;
using la::Scalar;
using la::SparseMatrix;

LayerCoords::LayerCoords(Field f, std::size_t ambient, std::vector<Vector> reps, const std::vector<Vector>& next)
    : reps_(std::move(reps)) {
  std::vector<Vector> basis = reps_;
  basis.insert(basis.end(), next.begin(), next.end());
  solver_ = std::make_shared<la::BasisSolver>(f, ambient, basis);
}

Vector LayerCoords::coords(const Vector& x) const {
  Vector c = solver_->coords_or_throw(x);
  c.resize(reps_.size());
  return c;
}

std::vector<Vector> layer_representatives(Field f, std::size_t ambient, const Matrix& layer, const Matrix& next) {
  la::SubspaceBuilder b(f, ambient);
  for (const auto& r : next.row_vectors()) b.add(r);
  std::vector<Vector> reps;
  const auto red = la::rref(layer);
  for (std::size_t r = 0; r < red.rank; ++r) {
    Vector v = red.reduced.row(r);
    if (b.add(v)) reps.push_back(std::move(v));
  }
  return reps;
}

namespace {

std::string rep_label(const alg::GradedAlgebra& a, const Vector& v, std::size_t layer, std::size_t k) {
  std::optional<std::size_t> single;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    if (single || !v[i].is_one()) return "r" + std::to_string(layer) + "." + std::to_string(k);
    single = i;
  }
  return single ? a.labels()[*single] : "r" + std::to_string(layer) + "." + std::to_string(k);
}

// Products of lifts reduced into the layer of grade gi + gj.
std::vector<alg::MultEntry> induced_products(const std::vector<Vector>& lifts, const std::vector<int>& grades,
                                             const std::vector<std::size_t>& offsets,
                                             const std::function<Vector(const Vector&, const Vector&)>& mul,
                                             const std::function<Vector(const Vector&, std::size_t)>& coords) {
  std::vector<alg::MultEntry> out;
  const std::size_t layers = offsets.size() - 1;
  for (std::size_t i = 0; i < lifts.size(); ++i)
    for (std::size_t j = 0; j < lifts.size(); ++j) {
      const std::size_t g = static_cast<std::size_t>(grades[i] + grades[j]);
      if (g >= layers) continue;
      const Vector c = coords(mul(lifts[i], lifts[j]), g);
      for (std::size_t k = 0; k < c.size(); ++k)
        if (!c[k].is_zero()) out.push_back({i, j, offsets[g] + k, c[k]});
    }
  return out;
}

}  // namespace

GrAlgebra gr_algebra(const AlgebraPtr& a) {
  const auto& series = a->radical_series();
  const Field f = a->field();
  const std::size_t n = a->dim();
  GrAlgebra g;
  g.source = a;
  g.offsets.push_back(0);
  std::vector<int> grades;
  std::vector<std::string> labels;
  for (std::size_t layer = 0; layer < series.length; ++layer) {
    auto reps = layer_representatives(f, n, series.layers[layer], series.layers[layer + 1]);
    for (std::size_t k = 0; k < reps.size(); ++k) {
      labels.push_back(rep_label(*a, reps[k], layer, k));
      grades.push_back(static_cast<int>(layer));
      g.lifts.push_back(reps[k]);
    }
    g.layers.emplace_back(f, n, std::move(reps), series.layers[layer + 1].row_vectors());
    g.offsets.push_back(g.lifts.size());
  }

  alg::AlgebraSpec s;
  s.name = "gr(" + a->name() + ")";
  s.field = f;
  s.dim = n;
  s.labels = labels;
  s.grades = grades;
  s.mult = induced_products(
      g.lifts, grades, g.offsets, [&](const Vector& x, const Vector& y) { return a->multiply(x, y); },
      [&](const Vector& x, std::size_t layer) { return g.layers[layer].coords(x); });
  auto grade0 = [&](const Vector& x) {
    Vector out = la::zero_vector(f, n);
    const Vector c = g.layers[0].coords(x);
    for (std::size_t k = 0; k < c.size(); ++k) out[k] = c[k];
    return out;
  };
  s.unit = grade0(a->unit());
  if (a->idempotents()) {
    std::vector<Vector> idem;
    for (const auto& e : *a->idempotents()) idem.push_back(grade0(e));
    s.idempotents = idem;
  }
  std::vector<Vector> rad;
  for (std::size_t i = g.offsets.size() > 1 ? g.offsets[1] : n; i < n; ++i) rad.push_back(la::unit_vector(f, n, i));
  s.radical_basis = rad;
  s.radical_source = alg::RadicalSource::Supplied;
  g.algebra = alg::build_algebra(std::move(s));
  return g;
}

GrModule gr_module(const GrAlgebra& g, const GradedModule& m) {
  require(m.algebra() == g.source, ErrorKind::InvalidArgument, "module is not over the source algebra of gr");
  const Field f = m.field();
  const std::size_t d = m.dim();
  const Matrix& rad = g.source->radical();

  std::vector<Matrix> powers{Matrix::identity(f, d)};
  while (powers.back().rows() > 0) {
    la::SubspaceBuilder b(f, d);
    for (const auto& r : rad.row_vectors())
      for (const auto& v : powers.back().row_vectors()) b.add(m.act(r, v));
    powers.push_back(b.basis());
  }

  GrModule out;
  std::vector<LayerCoords> layers;
  std::vector<std::size_t> offsets{0};
  std::vector<int> grades;
  for (std::size_t n = 0; n + 1 < powers.size(); ++n) {
    auto reps = layer_representatives(f, d, powers[n], powers[n + 1]);
    for (const auto& r : reps) {
      out.lifts.push_back(r);
      grades.push_back(static_cast<int>(n));
    }
    layers.emplace_back(f, d, std::move(reps), powers[n + 1].row_vectors());
    offsets.push_back(out.lifts.size());
  }

  const auto& ga = *g.algebra;
  std::vector<SparseMatrix> actions;
  for (std::size_t k = 0; k < ga.dim(); ++k) {
    SparseMatrix act(f, d, d);
    const int gk = ga.grade(k);
    for (std::size_t c = 0; c < out.lifts.size(); ++c) {
      const std::size_t target = static_cast<std::size_t>(gk + grades[c]);
      if (target >= layers.size()) continue;
      const Vector coords = layers[target].coords(m.act(g.lifts[k], out.lifts[c]));
      for (std::size_t r = 0; r < coords.size(); ++r)
        if (!coords[r].is_zero()) act.add(offsets[target] + r, c, coords[r]);
    }
    actions.push_back(std::move(act));
  }
  out.module = GradedModule::make(g.algebra, grades, std::move(actions));
  return out;
}

namespace {

alg::AlgebraSpec order_spec(const IntegralOrder& o, Field f) {
  require(o.unit.size() == o.dim, ErrorKind::ShapeMismatch, "unit has the wrong length");
  alg::AlgebraSpec s;
  s.name = o.name;
  s.field = f;
  s.dim = o.dim;
  s.labels = o.labels;
  s.grades.assign(o.dim, 0);
  auto conv = [&](const mpz_class& z) { return Scalar::from_mpq(f, mpq_class(z)); };
  for (const auto& m : o.mult) {
    Scalar c = conv(m.coef);
    if (!c.is_zero()) s.mult.push_back({m.i, m.j, m.k, c});
  }
  for (const auto& z : o.unit) s.unit.push_back(conv(z));
  if (o.idempotents) {
    std::vector<Vector> idem;
    for (const auto& e : *o.idempotents) {
      Vector v;
      for (const auto& z : e) v.push_back(conv(z));
      idem.push_back(v);
    }
    s.idempotents = idem;
  }
  return s;
}

IntVector int_product(const IntegralOrder& o, const std::vector<std::vector<std::pair<std::size_t, mpz_class>>>& table,
                      const IntVector& x, const IntVector& y) {
  IntVector out(o.dim, 0);
  for (std::size_t i = 0; i < o.dim; ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < o.dim; ++j) {
      if (y[j] == 0) continue;
      for (const auto& [k, c] : table[i * o.dim + j]) out[k] += x[i] * y[j] * c;
    }
  }
  return out;
}

bool is_zero_int(const IntVector& v) {
  return std::all_of(v.begin(), v.end(), [](const mpz_class& z) { return z == 0; });
}

}  // namespace

AlgebraPtr rational_algebra(const IntegralOrder& o) { return alg::build_algebra(order_spec(o, Field::rationals())); }

AlgebraPtr reduction_mod_p(const IntegralOrder& o) {
  auto s = order_spec(o, Field::prime(o.prime));
  s.name = o.name + " mod " + std::to_string(o.prime);
  return alg::build_algebra(std::move(s));
}

TildeGr tilde_gr(const IntegralOrder& o) {
  const AlgebraPtr ak = rational_algebra(o);
  const Field q = Field::rationals();
  const Field fp = Field::prime(o.prime);
  const std::size_t n = o.dim;
  const auto& series = ak->radical_series();

  TildeGr out;
  for (std::size_t i = 0; i <= series.length; ++i)
    out.filtration.push_back(la::lattice_intersect_subspace(la::IntegerLattice::full(n), series.layers[i]));
  const std::size_t layers = series.length;

  std::vector<std::vector<std::pair<std::size_t, mpz_class>>> table(n * n);
  for (const auto& m : o.mult)
    if (m.coef != 0) table[m.i * n + m.j].push_back({m.k, m.coef});

  // Multiplicativity of the filtration on lattice bases.
  for (std::size_t i = 0; i < layers; ++i)
    for (std::size_t j = 0; i + j < layers; ++j)
      for (const auto& u : out.filtration[i].basis())
        for (const auto& v : out.filtration[j].basis()) {
          const IntVector w = int_product(o, table, u, v);
          const std::size_t target = std::min(i + j, layers);
          if (!out.filtration[target].contains(w))
            fail(ErrorKind::Internal, "filtration is not multiplicative at layers " + std::to_string(i) + ", " +
                                          std::to_string(j));
        }

  // Per layer: Z-basis C of L_i, the image U of L_{i+1} in (L_i / p), and kept coordinates.
  struct Layer {
    std::shared_ptr<la::BasisSolver> solver;
    std::shared_ptr<la::SubspaceBuilder> image;
    std::vector<std::size_t> kept;
  };
  std::vector<Layer> info;
  auto to_q = [&](const IntVector& v) { return la::to_rational(v); };
  auto int_coords = [&](const Layer& l, const IntVector& x) {
    const Vector c = l.solver->coords_or_throw(to_q(x));
    Vector mod;
    for (const auto& s : c) {
      require(s.is_integer(), ErrorKind::Internal, "lattice coordinates are not integral");
      mod.push_back(Scalar::from_mpq(fp, s.to_mpq()));
    }
    return mod;
  };

  std::vector<int> grades;
  std::vector<std::size_t> offsets{0};
  for (std::size_t i = 0; i < layers; ++i) {
    const auto& c = out.filtration[i].basis();
    std::vector<Vector> rows;
    for (const auto& r : c) rows.push_back(to_q(r));
    Layer l;
    l.solver = std::make_shared<la::BasisSolver>(q, n, rows);
    l.image = std::make_shared<la::SubspaceBuilder>(fp, c.size());
    for (const auto& r : out.filtration[i + 1].basis()) l.image->add(int_coords(l, r));
    require(l.image->dim() == out.filtration[i + 1].rank(), ErrorKind::Internal,
            "filtration layer is not saturated modulo p");
    std::vector<bool> pivot(c.size(), false);
    for (std::size_t p : l.image->pivots()) pivot[p] = true;
    for (std::size_t k = 0; k < c.size(); ++k)
      if (!pivot[k]) {
        l.kept.push_back(k);
        out.lifts.push_back(c[k]);
        grades.push_back(static_cast<int>(i));
      }
    offsets.push_back(out.lifts.size());
    info.push_back(std::move(l));
  }

  auto coords = [&](const IntVector& x, std::size_t layer) {
    const Layer& l = info[layer];
    const Vector red = l.image->reduce(int_coords(l, x));
    Vector outc;
    for (std::size_t k : l.kept) outc.push_back(red[k]);
    return outc;
  };

  alg::AlgebraSpec s;
  s.name = "tildegr(" + o.name + ", " + std::to_string(o.prime) + ")";
  s.field = fp;
  s.dim = n;
  s.grades = grades;
  for (std::size_t k = 0; k < n; ++k) {
    const auto& v = out.lifts[k];
    std::optional<std::size_t> single;
    bool unit_like = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (v[i] == 0) continue;
      if (single || v[i] != 1) unit_like = false;
      single = i;
    }
    const std::string base = unit_like && single && !o.labels.empty() ? o.labels[*single] : "";
    s.labels.push_back(base.empty() ? "t" + std::to_string(grades[k]) + "." + std::to_string(k) : base);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t g = static_cast<std::size_t>(grades[i] + grades[j]);
      const IntVector w = int_product(o, table, out.lifts[i], out.lifts[j]);
      if (g >= layers) {
        require(is_zero_int(w), ErrorKind::Internal, "product escapes the filtration");
        continue;
      }
      const Vector c = coords(w, g);
      for (std::size_t k = 0; k < c.size(); ++k)
        if (!c[k].is_zero()) s.mult.push_back({i, j, offsets[g] + k, c[k]});
    }
  auto grade0 = [&](const IntVector& x) {
    Vector v = la::zero_vector(fp, n);
    const Vector c = coords(x, 0);
    for (std::size_t k = 0; k < c.size(); ++k) v[k] = c[k];
    return v;
  };
  s.unit = grade0(o.unit);
  if (o.idempotents) {
    std::vector<Vector> idem;
    for (const auto& e : *o.idempotents) idem.push_back(grade0(e));
    s.idempotents = idem;
  }
  out.algebra = alg::build_algebra(std::move(s));
  return out;
}

std::string to_string(IsoStatus s) {
  switch (s) {
    case IsoStatus::Isomorphic: return "isomorphic";
    case IsoStatus::NotIsomorphic: return "not_isomorphic";
    case IsoStatus::Unknown: return "unknown";
  }
  return "?";
}

AlgebraPtr forget_algebra_grading(const AlgebraPtr& a) {
  alg::AlgebraSpec s = a->spec();
  s.grades.assign(s.dim, 0);
  return alg::build_algebra(std::move(s));
}

namespace {

std::vector<std::size_t> grade_dims(const alg::GradedAlgebra& a) {
  std::vector<std::size_t> d(static_cast<std::size_t>(a.max_grade()) + 1, 0);
  for (int g : a.grades()) ++d[static_cast<std::size_t>(g)];
  return d;
}

std::size_t center_dim(const alg::GradedAlgebra& a) {
  const std::size_t n = a.dim();
  Matrix m(a.field(), n * n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const Vector bk = a.basis_vector(k);
    for (std::size_t c = 0; c < n; ++c) {
      const Vector z = la::sub(a.multiply(bk, a.basis_vector(c)), a.multiply(a.basis_vector(c), bk));
      for (std::size_t r = 0; r < n; ++r) m(k * n + r, c) = z[r];
    }
  }
  return n - la::rank(m);
}

std::optional<std::vector<std::size_t>> radical_dims(const alg::GradedAlgebra& a) {
  try {
    std::vector<std::size_t> out;
    for (const auto& l : a.radical_series().layers) out.push_back(l.rows());
    return out;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::RadicalUnavailable) throw;
    return std::nullopt;
  }
}

la::SubspaceBuilder closure(const alg::GradedAlgebra& a, const std::vector<std::size_t>& gens) {
  la::SubspaceBuilder b(a.field(), a.dim());
  b.add(a.unit());
  for (std::size_t g : gens) b.add(a.basis_vector(g));
  bool grown = true;
  while (grown) {
    grown = false;
    const auto rows = b.rows();
    for (const auto& x : rows)
      for (std::size_t g : gens) grown |= b.add(a.multiply(x, a.basis_vector(g)));
  }
  return b;
}

}  // namespace

IsoResult algebra_isomorphism(const AlgebraPtr& a, const AlgebraPtr& b, const IsoOptions& opts) {
  IsoResult res;
  auto differ = [&](const std::string& why) {
    res.status = IsoStatus::NotIsomorphic;
    res.reason = why;
    return res;
  };
  if (a->field() != b->field()) return differ("different fields");
  if (a->dim() != b->dim()) return differ("different dimensions");
  if (opts.graded && grade_dims(*a) != grade_dims(*b)) return differ("different grade dimension vectors");
  const auto ra = radical_dims(*a), rb = radical_dims(*b);
  if (ra && rb && *ra != *rb) return differ("different radical series dimensions");
  if (center_dim(*a) != center_dim(*b)) return differ("different centre dimensions");
  const std::size_t n = a->dim();
  if (n > opts.max_search_dim) {
    res.reason = "invariants agree; search skipped above dimension " + std::to_string(opts.max_search_dim);
    return res;
  }

  // A generating set of basis elements and a basis of monomials in it.
  std::vector<std::size_t> gens;
  for (std::size_t k = 0; k < n; ++k)
    if (!closure(*a, gens).contains(a->basis_vector(k))) gens.push_back(k);
  std::vector<std::vector<std::size_t>> words{{}};
  std::vector<Vector> values{a->unit()};
  la::SubspaceBuilder span(a->field(), n);
  span.add(a->unit());
  for (std::size_t w = 0; w < words.size() && words.size() < n; ++w)
    for (std::size_t g = 0; g < gens.size(); ++g) {
      Vector v = a->multiply(values[w], a->basis_vector(gens[g]));
      if (span.add(v)) {
        auto word = words[w];
        word.push_back(g);
        words.push_back(word);
        values.push_back(v);
      }
    }
  la::BasisSolver word_coords(a->field(), n, values);
  std::vector<Vector> basis_in_words;
  for (std::size_t k = 0; k < n; ++k) basis_in_words.push_back(word_coords.coords_or_throw(a->basis_vector(k)));

  // Candidate images: grade-matched basis of b, enumerated over F_p or sampled over Q.
  std::vector<std::vector<std::size_t>> support(gens.size());
  for (std::size_t g = 0; g < gens.size(); ++g)
    for (std::size_t k = 0; k < n; ++k)
      if (!opts.graded || b->grade(k) == a->grade(gens[g])) support[g].push_back(k);

  std::mt19937_64 rng(opts.seed);
  const std::uint32_t p = a->field().characteristic();
  auto try_images = [&](const std::vector<Vector>& images) -> std::optional<Matrix> {
    std::vector<Vector> wv;
    for (const auto& word : words) {
      Vector v = b->unit();
      for (std::size_t g : word) v = b->multiply(v, images[g]);
      wv.push_back(v);
    }
    Matrix phi(a->field(), n, n);
    for (std::size_t k = 0; k < n; ++k) {
      Vector img = la::zero_vector(a->field(), n);
      for (std::size_t w = 0; w < words.size(); ++w)
        if (!basis_in_words[k][w].is_zero()) la::axpy(img, basis_in_words[k][w], wv[w]);
      for (std::size_t r = 0; r < n; ++r) phi(r, k) = img[r];
    }
    if (la::rank(phi) != n) return std::nullopt;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const Vector lhs = phi.apply(a->multiply(a->basis_vector(i), a->basis_vector(j)));
        const Vector rhs = b->multiply(phi.col(i), phi.col(j));
        if (lhs != rhs) return std::nullopt;
      }
    return phi;
  };

  std::size_t space = 1;
  bool exhaustive = p != 0;
  for (const auto& s : support)
    for (std::size_t t = 0; t < s.size() && exhaustive; ++t) {
      if (space > opts.budget / p) exhaustive = false;
      space *= p;
    }

  std::vector<Vector> images(gens.size());
  auto from_digits = [&](std::size_t g, std::size_t code) {
    Vector v = la::zero_vector(b->field(), n);
    for (std::size_t k : support[g]) {
      v[k] = Scalar(b->field(), static_cast<long long>(code % p));
      code /= p;
    }
    return v;
  };
  if (exhaustive) {
    for (std::size_t code = 0; code < space; ++code) {
      std::size_t rest = code;
      for (std::size_t g = 0; g < gens.size(); ++g) {
        std::size_t width = 1;
        for (std::size_t t = 0; t < support[g].size(); ++t) width *= p;
        images[g] = from_digits(g, rest % width);
        rest /= width;
      }
      if (auto phi = try_images(images)) {
        res.status = IsoStatus::Isomorphic;
        res.map = phi;
        return res;
      }
    }
    return differ("no algebra map sends the generators anywhere bijectively (exhaustive over F_" +
                  std::to_string(p) + ")");
  }
  // Identity-like candidate first, then seeded samples with small coefficients.
  for (std::size_t attempt = 0; attempt < opts.samples; ++attempt) {
    for (std::size_t g = 0; g < gens.size(); ++g) {
      Vector v = la::zero_vector(b->field(), n);
      if (attempt == 0) {
        if (gens[g] < n) v[gens[g]] = Scalar::one(b->field());
      } else {
        for (std::size_t k : support[g]) v[k] = Scalar(b->field(), static_cast<long long>(rng() % 5) - 2);
      }
      images[g] = v;
    }
    if (auto phi = try_images(images)) {
      res.status = IsoStatus::Isomorphic;
      res.map = phi;
      return res;
    }
  }
  res.reason = "invariants agree but the seeded search found no isomorphism";
  return res;
}

}  // namespace gradecert::fgr
