#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gradecert/algcore/algebra.hpp"

namespace gradecert::alg {

struct Arrow {
  std::size_t source = 0;  // 0-based vertex
  std::size_t target = 0;
  std::string label;
  int grade = 1;
};

/// A linear combination of paths. Each path lists arrow labels in product order,
/// so {"b", "a"} is b*a: traverse a, then b.
struct Relation {
  std::vector<std::pair<Scalar, std::vector<std::string>>> terms;
};

struct QuiverPresentation {
  std::string name;
  Field field;
  std::size_t vertex_count = 0;
  std::vector<Arrow> arrows;
  std::vector<Relation> relations;
  /// Paths of this length plus one must all lie in the relation ideal.
  std::size_t truncation_degree = 8;
};

/// Path algebra modulo the relation ideal, with paths as basis, vertex idempotents and the arrow ideal as radical.
/// Paths multiply as p*q = "q then p", so A e_1 is spanned by paths starting at vertex 1.
AlgebraPtr from_quiver(const QuiverPresentation& q);

}  // namespace gradecert::alg
