#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "gradecert/algcore/algebra.hpp"

namespace gradecert::gmod {

using alg::AlgebraPtr;
using la::Field;
using la::Matrix;
using la::Scalar;
using la::SparseMatrix;
using la::Vector;

/// Finite-dimensional left module on a homogeneous basis. action(k) is the matrix of b_k
/// acting on coordinate columns. An ungraded module carries all grades 0 and ignores the
/// algebra grading.
class GradedModule {
 public:
  GradedModule() = default;

  /// Checks the module axioms against the structure constants and the grading.
  static GradedModule make(AlgebraPtr a, std::vector<int> grades, std::vector<SparseMatrix> actions,
                           bool graded = true);
  static GradedModule make_unchecked(AlgebraPtr a, std::vector<int> grades, std::vector<SparseMatrix> actions,
                                     bool graded = true);
  void validate() const;

  const AlgebraPtr& algebra() const { return algebra_; }
  Field field() const { return algebra_->field(); }
  std::size_t dim() const { return grades_.size(); }
  bool graded() const { return graded_; }
  int grade(std::size_t i) const { return grades_[i]; }
  const std::vector<int>& grades() const { return grades_; }
  /// Grade of algebra basis element k as seen by this module (0 when ungraded).
  int algebra_grade(std::size_t k) const { return graded_ ? algebra_->grade(k) : 0; }

  const SparseMatrix& action(std::size_t k) const { return actions_[k]; }
  const std::vector<SparseMatrix>& actions() const { return actions_; }
  Vector act(const Vector& a, const Vector& m) const;
  Vector act_basis(std::size_t k, const Vector& m) const { return actions_[k].apply(m); }

  Vector basis_vector(std::size_t i) const { return la::unit_vector(field(), dim(), i); }
  Vector zero() const { return la::zero_vector(field(), dim()); }
  std::vector<std::size_t> indices_of_grade(int g) const;
  /// Sorted distinct grades carrying basis vectors.
  std::vector<int> grade_support() const;
  std::optional<int> homogeneous_grade(const Vector& v) const;
  Vector grade_part(const Vector& v, int g) const;

 private:
  AlgebraPtr algebra_;
  std::vector<int> grades_;
  std::vector<SparseMatrix> actions_;
  bool graded_ = true;
};

/// M<r>: same action, grades moved up by r.
GradedModule shift(const GradedModule& m, int r);
GradedModule forget_grading(const GradedModule& m);
GradedModule direct_sum(const std::vector<GradedModule>& parts);
/// The regular left module A.
GradedModule regular_module(const AlgebraPtr& a, bool graded = true);

/// Submodule generated by homogeneous vectors; rows of `basis` are homogeneous in ambient coordinates.
struct Submodule {
  GradedModule module;
  std::vector<Vector> basis;
};

/// Basis (grade by grade) of the submodule generated by `gens`.
std::vector<Vector> generated_subspace(const GradedModule& m, const std::vector<Vector>& gens);
Submodule submodule_generated(const GradedModule& m, const std::vector<Vector>& gens);
/// Realizes a subspace already known to be a submodule; basis rows must be homogeneous.
GradedModule submodule_on_basis(const GradedModule& m, const std::vector<Vector>& basis);

struct QuotientModule {
  GradedModule module;
  std::vector<std::size_t> kept;
  std::function<Vector(const Vector&)> project;
};
QuotientModule quotient_module(const GradedModule& m, const std::vector<Vector>& sub_basis);

/// D(M) as a module for the opposite algebra: transposed action, negated grades.
GradedModule dual_module(const GradedModule& m, const AlgebraPtr& opposite);

/// Degree-zero homomorphisms M -> N, each as a dim N x dim M matrix.
std::vector<Matrix> hom_degree_zero(const GradedModule& m, const GradedModule& n);

/// A degree-zero isomorphism M -> N found among seeded combinations of hom_degree_zero, or nullopt.
/// A nullopt is not a proof of non-isomorphism.
std::optional<Matrix> find_graded_isomorphism(const GradedModule& m, const GradedModule& n);

/// Primitive idempotents (one per isomorphism class of simples) with their simples and projective covers.
struct SimpleSystem {
  AlgebraPtr algebra;
  bool graded = true;
  /// Complete set of orthogonal primitive idempotents, homogeneous of grade 0.
  std::vector<Vector> complete;
  /// class_of[i]: simple index of complete[i].
  std::vector<std::size_t> class_of;
  /// e_lambda for each simple index: first member of its class.
  std::vector<Vector> idempotents;
  std::vector<GradedModule> simples;
  std::vector<GradedModule> projectives;
  /// Basis of P(lambda) as elements of A; entry 0 is e_lambda itself.
  std::vector<std::vector<Vector>> projective_basis;
  /// Homogeneous elements of rad A spanning rad A modulo rad^2 A.
  std::vector<Vector> radical_generators;

  std::size_t count() const { return idempotents.size(); }
};

/// Throws RadicalUnavailable, NotSplit or IdempotentsRequired.
std::shared_ptr<const SimpleSystem> simples_and_projectives(const AlgebraPtr& a, bool graded = true);

/// Basis of rad M = rad(A) M.
std::vector<Vector> radical_of(const GradedModule& m, const SimpleSystem& sys);

/// Multiplicity of L(lambda)<g> as a composition factor: dim e_lambda M_g.
std::map<std::pair<std::size_t, int>, std::size_t> graded_character(const GradedModule& m, const SimpleSystem& sys);

/// Head multiplicities: dim e_lambda (M / rad M)_g.
std::map<std::pair<std::size_t, int>, std::size_t> head_multiplicities(const GradedModule& m,
                                                                       const SimpleSystem& sys);

}  // namespace gradecert::gmod
