#include <random>

#include "doctest.h"
#include "support/fixtures.hpp"

using namespace fixtures;

namespace {

const Field kQ = Field::rationals();

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Internal;
}

std::size_t span_dim(const std::vector<Vector>& rows, Field f, std::size_t n) {
  la::SubspaceBuilder b(f, n);
  for (const auto& r : rows) b.add(r);
  return b.dim();
}

bool same_span(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) return false;
  la::SubspaceBuilder s(a.field(), a.cols());
  for (const auto& r : a.row_vectors()) s.add(r);
  for (const auto& r : b.row_vectors())
    if (!s.contains(r)) return false;
  return true;
}

}  // namespace

TEST_CASE("build_algebra examples") {
  auto kk = semisimple(2);
  CHECK(kk->dim() == 2);
  CHECK(kk->radical().rows() == 0);

  auto dual = truncated_poly(2);
  CHECK(grade_component(*dual, 0).rows() == 1);
  CHECK(grade_component(*dual, 1) == Matrix::from_ints(kQ, {{0, 1}}));
  CHECK(grade_component(*dual, -1).rows() == 0);

  // x*x = x with x in grade 1 breaks multiplicativity.
  AlgebraSpec bad;
  bad.field = kQ;
  bad.dim = 2;
  bad.labels = {"1", "x"};
  bad.grades = {0, 1};
  bad.unit = vec(kQ, {1, 0});
  bad.mult = {{0, 0, 0, num(kQ, 1)}, {0, 1, 1, num(kQ, 1)}, {1, 0, 1, num(kQ, 1)}, {1, 1, 1, num(kQ, 1)}};
  CHECK(kind_of([&] { build_algebra(bad); }) == ErrorKind::GradingViolation);
  try {
    build_algebra(bad);
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("(x, x, x)") != std::string::npos);
  }
}

TEST_CASE("construction rejects broken structure") {
  // Left-zero semigroup algebra on {u, v}: associative but no unit.
  AlgebraSpec nounit;
  nounit.field = kQ;
  nounit.dim = 2;
  nounit.grades = {0, 0};
  nounit.unit = vec(kQ, {1, 0});
  nounit.mult = {{0, 0, 0, num(kQ, 1)}, {0, 1, 0, num(kQ, 1)}, {1, 0, 1, num(kQ, 1)}, {1, 1, 1, num(kQ, 1)}};
  CHECK(kind_of([&] { build_algebra(nounit); }) == ErrorKind::BadUnit);

  // Unit is fine but x*y and y*x disagree in an inconsistent way.
  AlgebraSpec nonassoc;
  nonassoc.field = kQ;
  nonassoc.dim = 3;
  nonassoc.labels = {"1", "x", "y"};
  nonassoc.grades = {0, 0, 0};
  nonassoc.unit = vec(kQ, {1, 0, 0});
  for (std::size_t i = 0; i < 3; ++i) {
    nonassoc.mult.push_back({0, i, i, num(kQ, 1)});
    if (i) nonassoc.mult.push_back({i, 0, i, num(kQ, 1)});
  }
  nonassoc.mult.push_back({1, 1, 2, num(kQ, 1)});  // x*x = y
  nonassoc.mult.push_back({1, 2, 1, num(kQ, 1)});  // x*y = x, y*x = 0
  CHECK(kind_of([&] { build_algebra(nonassoc); }) == ErrorKind::NonAssociative);

  AlgebraSpec s = semisimple(2)->spec();
  s.idempotents = std::vector<Vector>{vec(kQ, {1, 0}), vec(kQ, {1, 0})};
  CHECK(kind_of([&] { build_algebra(s); }) == ErrorKind::BadIdempotents);
  s.idempotents = std::vector<Vector>{vec(kQ, {1, 0})};
  CHECK(kind_of([&] { build_algebra(s); }) == ErrorKind::BadIdempotents);
}

TEST_CASE("from_quiver examples") {
  auto a2 = linear_quiver(2);
  CHECK(a2->dim() == 3);
  CHECK(a2->labels() == std::vector<std::string>{"e1", "e2", "a1"});
  CHECK(a2->grades() == std::vector<int>{0, 0, 1});
  CHECK(a2->radical_regime() == RadicalRegime::ArrowIdeal);
  CHECK(a2->radical().rows() == 1);
  CHECK(a2->radical_series().length == 2);
  CHECK(grade_component(*a2, 0).rows() == 2);

  QuiverPresentation loop;
  loop.field = kQ;
  loop.vertex_count = 1;
  loop.arrows = {{0, 0, "x", 1}};
  loop.truncation_degree = 4;
  CHECK(kind_of([&] { from_quiver(loop); }) == ErrorKind::NotFiniteDimensional);
  Relation xx;
  xx.terms.push_back({num(kQ, 1), {"x", "x"}});
  loop.relations.push_back(xx);
  auto dual = from_quiver(loop);
  CHECK(dual->dim() == 2);
  CHECK(dual->grades() == std::vector<int>{0, 1});

  // Inhomogeneous relation is refused.
  QuiverPresentation mixed;
  mixed.field = kQ;
  mixed.vertex_count = 1;
  mixed.arrows = {{0, 0, "x", 1}, {0, 0, "y", 2}};
  Relation r;
  r.terms.push_back({num(kQ, 1), {"x", "x"}});
  r.terms.push_back({num(kQ, 1), {"y", "x"}});
  mixed.relations.push_back(r);
  CHECK(kind_of([&] { from_quiver(mixed); }) == ErrorKind::GradingViolation);

  // Path product: a1 is e2 * a1 * e1.
  CHECK(a2->multiply(a2->basis_vector(1), a2->basis_vector(2)) == a2->basis_vector(2));
  CHECK(la::is_zero(a2->multiply(a2->basis_vector(0), a2->basis_vector(2))));
  CHECK(a2->multiply(a2->basis_vector(2), a2->basis_vector(0)) == a2->basis_vector(2));

  auto a3rel = linear_quiver(3, {1});
  CHECK(a3rel->dim() == 5);
  CHECK(linear_quiver(3)->dim() == 6);
  CHECK(two_cycle(false)->dim() == 5);
  CHECK(two_cycle(true)->dim() == 4);
}

TEST_CASE("radical series examples") {
  CHECK(semisimple(2)->radical_series().length == 1);
  auto cube = truncated_poly(3);
  const auto& series = cube->radical_series();
  REQUIRE(series.length == 3);
  CHECK(series.layers[1].rows() == 2);
  CHECK(series.layers[2] == Matrix::from_ints(kQ, {{0, 0, 1}}));
  CHECK(series.layers[3].rows() == 0);

  // Over F_2 with dim 3 no regime applies.
  auto f2 = truncated_poly(3, 1, Field::prime(2));
  CHECK(f2->radical_regime() == RadicalRegime::Unavailable);
  CHECK(kind_of([&] { f2->radical(); }) == ErrorKind::RadicalUnavailable);
  CHECK(truncated_poly(3, 1, Field::prime(5))->radical().rows() == 2);
}

TEST_CASE("trace form radical agrees with the arrow ideal") {
  std::vector<AlgebraPtr> quivers = {linear_quiver(2),     linear_quiver(3),     linear_quiver(3, {1}),
                                     linear_quiver(4, {1, 2}), two_cycle(false), two_cycle(true),
                                     linear_quiver(3, {}, Field::prime(7))};
  for (const auto& a : quivers) {
    CAPTURE(a->name());
    CHECK(same_span(radical_by_trace_form(*a), a->radical()));
  }
}

TEST_CASE("graded algebra invariants") {
  std::vector<AlgebraPtr> all = {semisimple(3), truncated_poly(4), truncated_poly(3, 2), linear_quiver(4),
                                 linear_quiver(4, {2}), two_cycle(false), two_cycle(true),
                                 linear_quiver(3, {}, Field::prime(3), 0)};
  for (const auto& a : all) {
    CAPTURE(a->name());
    std::size_t total = 0;
    for (int g = 0; g <= a->max_grade(); ++g) total += grade_component(*a, g).rows();
    CHECK(total == a->dim());
    CHECK(positive_part_nilpotent(*a));
    CHECK(quotient_by_positive_matches_grade_zero(*a));

    // Radical layers descend and multiply: rad^i rad^j inside rad^{i+j}.
    if (a->radical_regime() == RadicalRegime::Unavailable) continue;
    const auto& s = a->radical_series();
    for (std::size_t i = 1; i < s.layers.size(); ++i) CHECK(s.layers[i].rows() < s.layers[i - 1].rows());
    for (std::size_t i = 1; i < s.layers.size(); ++i)
      for (std::size_t j = 1; i + j < s.layers.size(); ++j) {
        auto prod = product_span(*a, s.layers[i].row_vectors(), s.layers[j].row_vectors());
        la::SubspaceBuilder target(a->field(), a->dim());
        for (const auto& r : s.layers[i + j].row_vectors()) target.add(r);
        for (const auto& r : prod.rows()) CHECK(target.contains(r));
      }

    // Generators generate.
    std::vector<Vector> gens;
    for (std::size_t g : a->generators()) gens.push_back(a->basis_vector(g));
    std::vector<Vector> span = {a->unit()};
    for (std::size_t round = 0; round <= a->dim(); ++round) {
      auto next = product_span(*a, span, gens);
      for (const auto& r : span) next.add(r);
      span = next.rows();
    }
    CHECK(span_dim(span, a->field(), a->dim()) == a->dim());
  }
}

TEST_CASE("opposite algebra and quotients") {
  auto a3 = linear_quiver(3);
  auto op = a3->opposite();
  CHECK(op->dim() == a3->dim());
  for (std::size_t i = 0; i < a3->dim(); ++i)
    for (std::size_t j = 0; j < a3->dim(); ++j) CHECK(op->product(i, j) == a3->product(j, i));
  CHECK(op->opposite()->spec().mult.size() == a3->spec().mult.size());

  // Killing the long path of A3 gives A3 with the zero relation.
  std::size_t long_path = 5;
  REQUIRE(a3->labels()[long_path] == "a2*a1");
  auto q = quotient_algebra(*a3, {a3->basis_vector(long_path)});
  CHECK(q.algebra->dim() == 5);
  CHECK(q.algebra->radical_series().length == 2);

  auto z = grade_zero_subalgebra(*a3);
  CHECK(z.algebra->dim() == 3);
  CHECK(z.algebra->radical().rows() == 0);
}

TEST_CASE("random structure-constant perturbations are caught") {
  // Flip one structure constant of a valid algebra; the result must either still be valid
  // (then it passes every invariant) or be rejected.
  std::mt19937 rng(5);
  auto base = linear_quiver(3, {1});
  int rejected = 0;
  for (int trial = 0; trial < 30; ++trial) {
    AlgebraSpec s = base->spec();
    auto& e = s.mult[rng() % s.mult.size()];
    e.coef = e.coef + num(kQ, 1 + static_cast<long long>(rng() % 3));
    try {
      auto a = build_algebra(s);
      CHECK(positive_part_nilpotent(*a));
    } catch (const Error&) {
      ++rejected;
    }
  }
  CHECK(rejected > 0);
}
