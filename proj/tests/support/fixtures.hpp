#pragma once

// Small algebras shared by the unit tests.

#include <string>
#include <vector>

#include "gradecert/algcore/algebra.hpp"
#include "gradecert/algcore/quiver.hpp"

namespace fixtures {

using namespace gradecert;
using namespace gradecert::alg;

inline Scalar num(Field f, long long v) { return Scalar(f, v); }

/// k^n with orthogonal idempotent basis, all in grade 0.
inline AlgebraPtr semisimple(std::size_t n, Field f = Field::rationals()) {
  AlgebraSpec s;
  s.name = "k^" + std::to_string(n);
  s.field = f;
  s.dim = n;
  s.unit = la::zero_vector(f, n);
  std::vector<Vector> idem;
  for (std::size_t i = 0; i < n; ++i) {
    s.labels.push_back("e" + std::to_string(i + 1));
    s.grades.push_back(0);
    s.mult.push_back({i, i, i, num(f, 1)});
    s.unit[i] = num(f, 1);
    idem.push_back(la::unit_vector(f, n, i));
  }
  s.idempotents = idem;
  return build_algebra(s);
}

/// k[x]/(x^n) with x in grade `g`.
inline AlgebraPtr truncated_poly(std::size_t n, int g = 1, Field f = Field::rationals()) {
  AlgebraSpec s;
  s.name = "k[x]/x^" + std::to_string(n);
  s.field = f;
  s.dim = n;
  for (std::size_t i = 0; i < n; ++i) {
    s.labels.push_back(i == 0 ? "1" : (i == 1 ? "x" : "x^" + std::to_string(i)));
    s.grades.push_back(static_cast<int>(i) * g);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; i + j < n; ++j) s.mult.push_back({i, j, i + j, num(f, 1)});
  s.unit = la::unit_vector(f, n, 0);
  return build_algebra(s);
}

/// Linear quiver 1 -> 2 -> ... -> n, arrows a1, a2, ...; `zero_relations` lists
/// starting arrows i (1-based) such that a_{i+1} a_i = 0.
inline AlgebraPtr linear_quiver(std::size_t n, std::vector<std::size_t> zero_relations = {},
                                Field f = Field::rationals(), int arrow_grade = 1) {
  QuiverPresentation q;
  q.name = "A" + std::to_string(n);
  q.field = f;
  q.vertex_count = n;
  for (std::size_t i = 0; i + 1 < n; ++i) q.arrows.push_back({i, i + 1, "a" + std::to_string(i + 1), arrow_grade});
  for (std::size_t i : zero_relations) {
    Relation r;
    r.terms.push_back({num(f, 1), {"a" + std::to_string(i + 1), "a" + std::to_string(i)}});
    q.relations.push_back(r);
  }
  return from_quiver(q);
}

/// 1 <-> 2 with a: 1 -> 2, b: 2 -> 1 and relation b*a = 0 (and optionally a*b = 0).
inline AlgebraPtr two_cycle(bool both_zero, Field f = Field::rationals(), int arrow_grade = 1) {
  QuiverPresentation q;
  q.name = both_zero ? "cycle2-ab-ba" : "cycle2-ba";
  q.field = f;
  q.vertex_count = 2;
  q.arrows = {{0, 1, "a", arrow_grade}, {1, 0, "b", arrow_grade}};
  Relation ba;
  ba.terms.push_back({num(f, 1), {"b", "a"}});
  q.relations.push_back(ba);
  if (both_zero) {
    Relation ab;
    ab.terms.push_back({num(f, 1), {"a", "b"}});
    q.relations.push_back(ab);
  }
  return from_quiver(q);
}

/// Basis {1, x, z} with x in grade 1, z in grade 2 and all products of x, z zero.
inline AlgebraPtr grade_gap(Field f = Field::rationals()) {
  AlgebraSpec s;
  s.name = "gap";
  s.field = f;
  s.dim = 3;
  s.labels = {"1", "x", "z"};
  s.grades = {0, 1, 2};
  for (std::size_t i = 0; i < 3; ++i) {
    s.mult.push_back({0, i, i, num(f, 1)});
    if (i) s.mult.push_back({i, 0, i, num(f, 1)});
  }
  s.unit = la::unit_vector(f, 3, 0);
  return build_algebra(s);
}

inline Vector vec(Field f, std::initializer_list<long long> xs) {
  Vector v;
  for (long long x : xs) v.emplace_back(f, x);
  return v;
}

}  // namespace fixtures
