#include <doctest.h>

#include <random>

#include "gradecert/forcegr/forcegr.hpp"
#include "support/fixtures.hpp"

using namespace gradecert;
using namespace gradecert::fgr;
using fixtures::linear_quiver;
using fixtures::semisimple;
using fixtures::truncated_poly;

namespace {

// Z[x]/(f) for monic f = x^n + c[n-1] x^{n-1} + ... + c[0], basis 1, x, ..., x^{n-1}.
IntegralOrder monogenic(const std::vector<long>& c, std::uint32_t p, const std::string& name) {
  const std::size_t n = c.size();
  IntegralOrder o;
  o.name = name;
  o.dim = n;
  o.prime = p;
  for (std::size_t i = 0; i < n; ++i) o.labels.push_back(i == 0 ? "1" : "x^" + std::to_string(i));
  // powers[k] = x^k in the basis, k < 2n - 1.
  std::vector<IntVector> powers;
  for (std::size_t k = 0; k < 2 * n - 1; ++k) {
    IntVector v(n, 0);
    if (k < n) {
      v[k] = 1;
    } else {
      const IntVector& prev = powers[k - 1];
      // x * prev: shift up, and x^n = -sum c_i x^i.
      for (std::size_t i = 0; i + 1 < n; ++i) v[i + 1] = prev[i];
      for (std::size_t i = 0; i < n; ++i) v[i] -= prev[n - 1] * c[i];
    }
    powers.push_back(v);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (powers[i + j][k] != 0) o.mult.push_back({i, j, k, powers[i + j][k]});
  o.unit = IntVector(n, 0);
  o.unit[0] = 1;
  return o;
}

IntegralOrder z_times_z(std::uint32_t p) {
  IntegralOrder o;
  o.name = "ZxZ";
  o.dim = 2;
  o.prime = p;
  o.labels = {"e1", "e2"};
  o.mult = {{0, 0, 0, 1}, {1, 1, 1, 1}};
  o.unit = {1, 1};
  return o;
}

std::vector<int> sorted(std::vector<int> g) {
  std::sort(g.begin(), g.end());
  return g;
}

bool same_structure(const alg::GradedAlgebra& a, const alg::GradedAlgebra& b) {
  if (a.dim() != b.dim() || a.grades() != b.grades()) return false;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (a.multiply(a.basis_vector(i), a.basis_vector(j)) != b.multiply(b.basis_vector(i), b.basis_vector(j)))
        return false;
  return true;
}

}  // namespace

TEST_CASE("gr of small algebras") {
  SUBCASE("semisimple stays in grade 0") {
    auto g = gr_algebra(semisimple(3));
    CHECK(g.algebra->grades() == std::vector<int>{0, 0, 0});
    CHECK(same_structure(*g.algebra, *semisimple(3)));
  }
  SUBCASE("k[x]/x^3 gets the polynomial grading") {
    auto g = gr_algebra(truncated_poly(3, 0));
    CHECK(g.algebra->grades() == std::vector<int>{0, 1, 2});
    CHECK(algebra_isomorphism(g.algebra, truncated_poly(3)).status == IsoStatus::Isomorphic);
  }
  SUBCASE("path algebra 1 -> 2 puts the arrow in grade 1") {
    auto g = gr_algebra(linear_quiver(2, {}, la::Field::rationals(), 0));
    CHECK(sorted(g.algebra->grades()) == std::vector<int>{0, 0, 1});
    CHECK(algebra_isomorphism(g.algebra, linear_quiver(2)).status == IsoStatus::Isomorphic);
  }
}

TEST_CASE("gr properties") {
  std::vector<AlgebraPtr> inputs = {truncated_poly(4, 0), linear_quiver(3, {}, la::Field::rationals(), 0),
                                    linear_quiver(4, {2}, la::Field::prime(5), 0), fixtures::two_cycle(false),
                                    fixtures::grade_gap(), semisimple(2, la::Field::prime(3))};
  for (const auto& a : inputs) {
    CAPTURE(a->name());
    auto g = gr_algebra(a);
    CHECK(g.algebra->dim() == a->dim());
    // Grade 0 of gr A is semisimple: the radical is exactly the positive part.
    for (const auto& r : g.algebra->radical().row_vectors()) CHECK(g.algebra->grade_part(r, 0) == g.algebra->zero());
    CHECK(g.algebra->radical().rows() == g.algebra->dim() - g.algebra->indices_of_grade(0).size());
    // gr is idempotent on radically graded input, in the canonical adapted basis.
    auto gg = gr_algebra(g.algebra);
    CHECK(same_structure(*gg.algebra, *g.algebra));
  }
}

TEST_CASE("gr of modules") {
  SUBCASE("semisimple module") {
    auto a = semisimple(2);
    auto g = gr_algebra(a);
    auto m = gr_module(g, gmod::regular_module(a, false));
    CHECK(m.module.grades() == std::vector<int>{0, 0});
  }
  SUBCASE("regular module of k[x]/x^3") {
    auto a = truncated_poly(3, 0);
    auto g = gr_algebra(a);
    auto m = gr_module(g, gmod::regular_module(a));
    CHECK(m.module.grades() == std::vector<int>{0, 1, 2});
    // x raises the grade by one.
    const std::size_t x = g.algebra->indices_of_grade(1).front();
    auto img = m.module.act_basis(x, m.module.basis_vector(0));
    CHECK(m.module.homogeneous_grade(img) == 1);
  }
  SUBCASE("projectives over a hereditary path algebra") {
    auto a = linear_quiver(3, {}, la::Field::rationals(), 0);
    auto g = gr_algebra(a);
    auto sys = gmod::simples_and_projectives(a, false);
    auto p0 = gr_module(g, sys->projectives[0]);
    CHECK(p0.module.grades() == std::vector<int>{0, 1, 2});
  }
  SUBCASE("module over another algebra is rejected") {
    auto g = gr_algebra(truncated_poly(2, 0));
    CHECK_THROWS_AS(gr_module(g, gmod::regular_module(truncated_poly(2, 0))), Error);
  }
}

TEST_CASE("tilde gr showcase") {
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    CAPTURE(p);
    auto nil = tilde_gr(monogenic({0, 0}, p, "Z[x]/x^2"));
    auto split = tilde_gr(monogenic({-static_cast<long>(p), 0}, p, "Z[x]/(x^2-p)"));
    CHECK(nil.algebra->grades() == std::vector<int>{0, 1});
    CHECK(split.algebra->grades() == std::vector<int>{0, 0});
    CHECK(algebra_isomorphism(nil.algebra, split.algebra).status == IsoStatus::NotIsomorphic);
    IsoOptions plain;
    plain.graded = false;
    CHECK(algebra_isomorphism(forget_algebra_grading(nil.algebra), forget_algebra_grading(split.algebra), plain)
              .status == IsoStatus::Isomorphic);
    // gr of the special fibre puts x in grade 1 in both cases (its radical needs p > 2 here).
    if (p == 2) continue;
    auto fibre = gr_algebra(reduction_mod_p(monogenic({-static_cast<long>(p), 0}, p, "f")));
    CHECK(fibre.algebra->grades() == std::vector<int>{0, 1});
  }
  auto zz = tilde_gr(z_times_z(5));
  CHECK(zz.algebra->grades() == std::vector<int>{0, 0});
  CHECK(algebra_isomorphism(zz.algebra, semisimple(2, la::Field::prime(5))).status == IsoStatus::Isomorphic);
}

TEST_CASE("tilde gr on random monogenic orders") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + rng() % 3;
    std::vector<long> c(n);
    for (auto& x : c) x = static_cast<long>(rng() % 7) - 3;
    const std::uint32_t p = std::vector<std::uint32_t>{2, 3, 5}[rng() % 3];
    auto o = monogenic(c, p, "random");
    auto t = tilde_gr(o);
    CAPTURE(trial);
    CHECK(t.algebra->dim() == n);
    // Filtration ranks drop exactly by the layer sizes.
    std::size_t total = 0;
    for (std::size_t i = 0; i + 1 < t.filtration.size(); ++i)
      total += t.filtration[i].rank() - t.filtration[i + 1].rank();
    CHECK(total == n);
    CHECK(t.filtration.back().rank() == 0);
    CHECK(alg::positive_part_nilpotent(*t.algebra));
  }
}

TEST_CASE("isomorphism search") {
  IsoOptions plain;
  plain.graded = false;
  CHECK(algebra_isomorphism(truncated_poly(2), semisimple(2), plain).status == IsoStatus::NotIsomorphic);
  CHECK(algebra_isomorphism(truncated_poly(3), truncated_poly(3)).status == IsoStatus::Isomorphic);
  // Graded versions with x in different grades differ.
  CHECK(algebra_isomorphism(truncated_poly(3, 1), truncated_poly(3, 2)).status == IsoStatus::NotIsomorphic);
  auto a = truncated_poly(2, 1, la::Field::prime(3));
  auto r = algebra_isomorphism(a, a);
  REQUIRE(r.status == IsoStatus::Isomorphic);
  CHECK(r.map->rows() == 2);
}
