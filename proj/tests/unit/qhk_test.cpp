#include <doctest.h>

#include "gradecert/gradmod/resolution.hpp"
#include "gradecert/qhk/certify.hpp"
#include "oracles/hochschild.hpp"
#include "support/fixtures.hpp"

using namespace gradecert;
using namespace gradecert::qhk;
using fixtures::linear_quiver;
using fixtures::semisimple;
using fixtures::truncated_poly;
using fixtures::two_cycle;

namespace {

std::vector<std::size_t> dims(const std::vector<GradedModule>& ms) {
  std::vector<std::size_t> out;
  for (const auto& m : ms) out.push_back(m.dim());
  return out;
}

// 0-based vertices: the first vertex of each quiver is the larger weight.
WeightPoset top_first(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> rel;
  for (std::size_t i = 0; i + 1 < n; ++i) rel.push_back({i + 1, i});
  return WeightPoset::from_relations(n, rel);
}

bool not_qh(const AlgebraPtr& a, const WeightPoset& p) {
  try {
    build_qh(a, p);
  } catch (const Error& e) {
    return e.kind() == ErrorKind::NotQuasiHereditary;
  }
  return false;
}

}  // namespace

TEST_CASE("poset basics") {
  auto p = WeightPoset::from_relations(3, {{0, 1}, {1, 2}});
  CHECK(p.less(0, 2));
  CHECK_FALSE(p.less(2, 0));
  CHECK(p.covers().size() == 2);
  CHECK(p.linear_extension() == std::vector<std::size_t>{0, 1, 2});
  CHECK(p.maximal_in({0, 1}) == std::vector<std::size_t>{1});
  CHECK_THROWS_AS(WeightPoset::from_relations(2, {{0, 1}, {1, 0}}), Error);
  CHECK(WeightPoset::chain({2, 0, 1}).less(2, 1));
}

TEST_CASE("standard and costandard modules") {
  SUBCASE("path algebra 1 -> 2 with 2 < 1") {
    auto a = linear_quiver(2);
    auto q = build_qh(a, top_first(2));
    CHECK(q.sys->idempotents[0] == a->basis_vector(0));
    CHECK(q.verified);
    CHECK(dims(q.standards) == std::vector<std::size_t>{2, 1});
    CHECK(dims(q.costandards) == std::vector<std::size_t>{1, 1});
    CHECK(dims(q.grade0_standards) == std::vector<std::size_t>{1, 1});
    for (const auto& n : q.costandards)
      for (int g : n.grades()) CHECK(g <= 0);
  }
  SUBCASE("semisimple") {
    auto q = build_qh(semisimple(3), WeightPoset(3));
    CHECK(dims(q.standards) == std::vector<std::size_t>{1, 1, 1});
    CHECK(dims(q.costandards) == std::vector<std::size_t>{1, 1, 1});
  }
  SUBCASE("local algebras are not quasi-hereditary") {
    CHECK(not_qh(truncated_poly(2), WeightPoset(1)));
    CHECK(not_qh(truncated_poly(3), WeightPoset(1)));
  }
  SUBCASE("orientation matters") {
    // 1 -> 2 is quasi-hereditary for both orders, the two-cycle with b*a = 0 only for 2 < 1.
    CHECK_NOTHROW(build_qh(linear_quiver(2), WeightPoset::from_relations(2, {{0, 1}})));
    CHECK_NOTHROW(build_qh(two_cycle(false), top_first(2)));
    CHECK(not_qh(two_cycle(false), WeightPoset::from_relations(2, {{0, 1}})));
    CHECK(not_qh(two_cycle(true), WeightPoset::from_relations(2, {{0, 1}})));
    CHECK(not_qh(two_cycle(true), top_first(2)));
  }
  SUBCASE("poset size must match") {
    CHECK_THROWS_AS(build_qh(linear_quiver(2), WeightPoset(3)), Error);
  }
}

TEST_CASE("heredity chain agrees with the fast test") {
  struct Case {
    AlgebraPtr a;
    WeightPoset p;
  };
  std::vector<Case> cases = {
      {linear_quiver(2), top_first(2)},
      {linear_quiver(2), WeightPoset::from_relations(2, {{0, 1}})},
      {linear_quiver(3), top_first(3)},
      {linear_quiver(3, {1}), top_first(3)},
      {linear_quiver(3, {1}), WeightPoset::from_relations(3, {{0, 1}, {1, 2}})},
      {two_cycle(false), top_first(2)},
      {two_cycle(false), WeightPoset::from_relations(2, {{0, 1}})},
      {two_cycle(true), top_first(2)},
      {truncated_poly(2), WeightPoset(1)},
      {semisimple(2), WeightPoset(2)},
  };
  for (const auto& c : cases) {
    auto sys = gmod::simples_and_projectives(c.a);
    const bool fast = !not_qh(c.a, c.p);
    const bool deep = !heredity_chain_failure(c.a, *sys, c.p);
    CHECK(fast == deep);
    if (fast) CHECK(build_qh(c.a, c.p, {true}).deep_verified);
  }
}

TEST_CASE("koszul") {
  SUBCASE("dual numbers in grade 1: infinite but periodic resolution") {
    auto r = certify_koszul(truncated_poly(2));
    CHECK(r.verdict == Verdict::Pass);
    REQUIRE_FALSE(r.notes.empty());
  }
  SUBCASE("x^3 = 0 fails at degree 2 with shift 3") {
    auto r = certify_koszul(truncated_poly(3));
    REQUIRE(r.verdict == Verdict::Fail);
    CHECK(*r.witness->degree == 2);
    CHECK(*r.witness->shift == 3);
  }
  SUBCASE("trivial grading with nonsemisimple A_0") {
    auto r = certify_koszul(truncated_poly(2, 0));
    CHECK(r.verdict == Verdict::Fail);
    CHECK(*r.witness->degree == 0);
  }
  SUBCASE("path algebras and their quotients by arrow paths") {
    CHECK(certify_koszul(linear_quiver(3)).verdict == Verdict::Pass);
    CHECK(certify_koszul(linear_quiver(3, {1})).verdict == Verdict::Pass);
    CHECK(certify_koszul(two_cycle(true)).verdict == Verdict::Pass);
  }
  SUBCASE("a zero truncation bound gives an inconclusive verdict, never a pass") {
    CertOptions o;
    o.max_length = 0;
    CHECK(certify_koszul(truncated_poly(2), o).verdict == Verdict::Inconclusive);
  }
}

TEST_CASE("standard koszul") {
  auto q = build_qh(linear_quiver(2), top_first(2));
  CHECK(certify_standard_koszul(q).verdict == Verdict::Pass);
  CHECK(certify_koszul(q.algebra).verdict == Verdict::Pass);

  auto flat = build_qh(linear_quiver(2, {}, la::Field::rationals(), 0), top_first(2));
  auto r = certify_standard_koszul(flat);
  CHECK(r.verdict == Verdict::Fail);
}

TEST_CASE("q-koszul") {
  SUBCASE("trivially graded quasi-hereditary algebras") {
    for (auto a : {linear_quiver(2, {}, la::Field::rationals(), 0), linear_quiver(3, {}, la::Field::rationals(), 0),
                   linear_quiver(3, {1}, la::Field::rationals(), 0)}) {
      auto q = build_qh(a, top_first(a->idempotents()->size()));
      CHECK(certify_q_koszul(q).verdict == Verdict::Pass);
      CHECK(certify_standard_q_koszul(q).verdict == Verdict::Pass);
    }
  }
  SUBCASE("x^3 = 0 fails at i = 2, j = 3") {
    auto r = certify_q_koszul(truncated_poly(3), WeightPoset(1));
    REQUIRE(r.verdict == Verdict::Fail);
    CHECK(*r.witness->degree == 2);
    CHECK(*r.witness->shift == 3);
    CHECK(certify_q_koszul(truncated_poly(3), WeightPoset(1), 1).verdict == Verdict::Pass);
  }
  SUBCASE("koszul algebras are q-koszul") {
    CHECK(certify_q_koszul(truncated_poly(2), WeightPoset(1)).verdict == Verdict::Pass);
    auto q = build_qh(two_cycle(false), top_first(2));
    CHECK(certify_koszul(q.algebra).verdict == Verdict::Pass);
    CHECK(certify_q_koszul(q).verdict == Verdict::Pass);
  }
  SUBCASE("A_0 must be quasi-hereditary") {
    try {
      certify_q_koszul(truncated_poly(2, 0), WeightPoset(1));
      FAIL("expected A0NotQuasiHereditary");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::A0NotQuasiHereditary);
    }
  }
}

TEST_CASE("standard q-koszul matches brute-force ext on the two-cycle") {
  auto q = build_qh(two_cycle(false), top_first(2));
  auto r = certify_standard_q_koszul(q);
  bool off_diagonal = false;
  for (std::size_t l = 0; l < 2; ++l)
    for (std::size_t m = 0; m < 2; ++m)
      for (std::size_t i = 0; i <= 2; ++i)
        for (int j = -1; j <= 4; ++j) {
          const auto a = oracle::hochschild_ext(q.standards[l], gmod::shift(q.grade0_costandards[m], j), i, true);
          const auto b = oracle::hochschild_ext(q.grade0_standards[m], gmod::shift(q.costandards[l], j), i, true);
          const auto ta = gmod::graded_ext(q.standards[l], q.grade0_costandards[m], i, *q.sys);
          const auto tb = gmod::graded_ext(q.grade0_standards[m], q.costandards[l], i, *q.sys);
          CHECK(ta.at(i, j) == a);
          CHECK(tb.at(i, j) == b);
          if ((a || b) && j != static_cast<int>(i)) off_diagonal = true;
        }
  CHECK(r.verdict == (off_diagonal ? Verdict::Fail : Verdict::Pass));
}

TEST_CASE("tight") {
  CHECK(check_tight(truncated_poly(3)).verdict == Verdict::Pass);
  auto r = check_tight(fixtures::grade_gap());
  REQUIRE(r.verdict == Verdict::Fail);
  CHECK(*r.witness->degree == 2);
  CHECK(check_tight(semisimple(2)).verdict == Verdict::Pass);
  CHECK(check_tight(truncated_poly(3, 0)).verdict == Verdict::Pass);
}

TEST_CASE("quadratic") {
  CHECK(check_quadratic(truncated_poly(2)).verdict == Verdict::Pass);
  auto r = check_quadratic(truncated_poly(3));
  REQUIRE(r.verdict == Verdict::Fail);
  CHECK(*r.witness->degree == 3);
  CHECK(check_quadratic(linear_quiver(2)).verdict == Verdict::Pass);
  CHECK(check_quadratic(linear_quiver(4, {1})).verdict == Verdict::Pass);
  CHECK(check_quadratic(two_cycle(true)).verdict == Verdict::Pass);
  CHECK(check_quadratic(truncated_poly(4, 1, la::Field::prime(5))).verdict == Verdict::Fail);
  CHECK_THROWS_AS(check_quadratic(fixtures::grade_gap()), Error);
}

TEST_CASE("implication audit") {
  struct Case {
    AlgebraPtr a;
    WeightPoset p;
  };
  std::vector<Case> cases = {
      {linear_quiver(2), top_first(2)},
      {linear_quiver(3, {1}), top_first(3)},
      {linear_quiver(3, {}, la::Field::rationals(), 0), top_first(3)},
      {two_cycle(false), top_first(2)},
      {two_cycle(true), top_first(2)},
      {truncated_poly(2), WeightPoset(1)},
      {truncated_poly(3), WeightPoset(1)},
      {semisimple(2, la::Field::prime(3)), WeightPoset(2)},
  };
  for (const auto& c : cases) {
    auto audit = implication_audit(c.a, c.p);
    CAPTURE(c.a->name());
    CHECK(audit.ok());
    CHECK(audit.reports.size() == 9);
  }
}

TEST_CASE("verdicts do not depend on refining the poset") {
  // On the path algebra of 1 -> 2 -> 3 with arrows in grade 1, the partial order 3 < 1, 2 < 1 has
  // the chain 3 < 2 < 1 as a refinement preserving quasi-heredity.
  auto a = linear_quiver(3);
  auto partial = WeightPoset::from_relations(3, {{2, 0}, {1, 0}});
  auto chain = top_first(3);
  if (not_qh(a, partial)) return;
  auto qp = build_qh(a, partial);
  auto qc = build_qh(a, chain);
  CHECK(certify_standard_q_koszul(qp).verdict == certify_standard_q_koszul(qc).verdict);
  CHECK(certify_q_koszul(qp).verdict == certify_q_koszul(qc).verdict);
  CHECK(certify_standard_koszul(qp).verdict == certify_standard_koszul(qc).verdict);
}
