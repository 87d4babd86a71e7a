#pragma once

#include <string>
#include <vector>

#include "gradecert/gradmod/module.hpp"
#include "gradecert/qhk/poset.hpp"

namespace gradecert::morita {

using alg::AlgebraPtr;
using gmod::GradedModule;
using la::Vector;

/// M_n(B) with grade(E_ij x) = grade(x). Basis index (i * n + j) * dim B + k holds E_ij b_k.
AlgebraPtr inflate(const AlgebraPtr& b, std::size_t n);

/// E_ij x as an element of inflate(b, n).
Vector matrix_unit(const alg::GradedAlgebra& b, std::size_t n, std::size_t i, std::size_t j, const Vector& x);

/// Throws NotIdempotent.
bool is_full_idempotent(const alg::GradedAlgebra& b, const Vector& e);

/// Grade 0 component of an idempotent; checks it is idempotent and that B e_0 and B e have the same
/// dimension and head. Throws NotIdempotent, or Internal if the checks fail.
Vector grade0_idempotent(const AlgebraPtr& b, const Vector& e);

/// e B e for a full grade 0 idempotent, with the functors N -> eN and Y -> Be (x)_{eBe} Y.
class MoritaCorner {
 public:
  /// Throws NotIdempotent, NotGradeZero or NotFull.
  MoritaCorner(AlgebraPtr b, Vector e);

  const AlgebraPtr& big() const { return b_; }
  const AlgebraPtr& corner() const { return a_; }
  const Vector& idempotent() const { return e_; }
  /// Rows: corner basis elements as elements of B.
  const std::vector<Vector>& embedding() const { return embed_; }

  /// e N with the inherited grading, as a module over the corner.
  GradedModule F(const GradedModule& n) const;
  /// Be (x)_{eBe} Y, graded by total degree.
  GradedModule F_dagger(const GradedModule& y) const;

  /// Pushes a weight poset on the simples of B to the corresponding simples of the corner.
  qhk::WeightPoset transfer_poset(const qhk::WeightPoset& on_b) const;

 private:
  AlgebraPtr b_;
  AlgebraPtr a_;
  Vector e_;
  std::vector<Vector> embed_;
  std::vector<Vector> be_;  // homogeneous basis of B e
  std::shared_ptr<la::BasisSolver> corner_coords_;
  std::shared_ptr<la::BasisSolver> be_coords_;
};

struct EquivalenceCheck {
  std::string subject;
  bool ok = false;
  std::string detail;
};

struct EquivalenceReport {
  std::vector<EquivalenceCheck> checks;
  bool ok() const;
};

/// F_dagger F N ~ N over B and F F_dagger Y ~ Y over the corner, as graded modules, with grade purity kept.
EquivalenceReport verify_equivalence_pair(const MoritaCorner& c, const std::vector<GradedModule>& over_b,
                                          const std::vector<GradedModule>& over_corner);
/// Uses the graded simples and projectives of both sides, and their shifts by 3.
EquivalenceReport verify_equivalence_pair(const MoritaCorner& c);

/// The simples of m = inflate(b, n) are indexed like those of b; checks this and returns the same poset.
qhk::WeightPoset inflate_poset(const AlgebraPtr& b, const AlgebraPtr& m, std::size_t n, const qhk::WeightPoset& on_b);

}  // namespace gradecert::morita
