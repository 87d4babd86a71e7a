#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gradecert/exactla/matrix.hpp"

namespace gradecert::alg {

using la::Field;
using la::Matrix;
using la::Scalar;
using la::Vector;

using SparseVec = std::vector<std::pair<std::size_t, Scalar>>;

/// One structure constant: b_i * b_j has coefficient `coef` on b_k.
struct MultEntry {
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t k = 0;
  Scalar coef;
};

enum class RadicalSource { None, Supplied, ArrowIdeal };

/// Everything needed to build an algebra. Basis vectors are homogeneous; grades are per basis index.
struct AlgebraSpec {
  std::string name;
  Field field;
  std::size_t dim = 0;
  std::vector<std::string> labels;
  std::vector<MultEntry> mult;
  Vector unit;
  std::vector<int> grades;
  std::optional<std::vector<Vector>> idempotents;
  std::optional<std::vector<Vector>> radical_basis;
  RadicalSource radical_source = RadicalSource::None;
};

enum class RadicalRegime { Supplied, ArrowIdeal, TraceForm, Unavailable };

std::string_view to_string(RadicalRegime r);

struct RadicalSeries {
  /// layers[n] has rows spanning rad^n A; layers[0] is the identity, layers[length] is empty.
  std::vector<Matrix> layers;
  std::size_t length = 0;
};

class GradedAlgebra;
using AlgebraPtr = std::shared_ptr<const GradedAlgebra>;

/// Finite-dimensional positively graded algebra given by structure constants on a homogeneous basis.
/// Immutable after build(); the radical cache is filled at most once.
class GradedAlgebra {
 public:
  /// Validates associativity, unit, grading and idempotents; throws on the first violation.
  static AlgebraPtr build(AlgebraSpec spec);

  const std::string& name() const { return spec_.name; }
  Field field() const { return spec_.field; }
  std::size_t dim() const { return spec_.dim; }
  const std::vector<std::string>& labels() const { return spec_.labels; }
  int grade(std::size_t i) const { return spec_.grades[i]; }
  const std::vector<int>& grades() const { return spec_.grades; }
  int max_grade() const;
  const Vector& unit() const { return spec_.unit; }
  const std::optional<std::vector<Vector>>& idempotents() const { return spec_.idempotents; }
  const AlgebraSpec& spec() const { return spec_; }

  const SparseVec& product(std::size_t i, std::size_t j) const { return products_[i * spec_.dim + j]; }
  Vector basis_vector(std::size_t i) const { return la::unit_vector(field(), dim(), i); }
  Vector zero() const { return la::zero_vector(field(), dim()); }
  Vector multiply(const Vector& a, const Vector& b) const;
  /// Matrix of left multiplication by a, acting on coordinate columns.
  la::SparseMatrix left_multiplication(const Vector& a) const;

  /// Grade of a nonzero homogeneous element, nullopt when inhomogeneous or zero.
  std::optional<int> homogeneous_grade(const Vector& v) const;
  Vector grade_part(const Vector& v, int g) const;
  std::vector<std::size_t> indices_of_grade(int g) const;

  RadicalRegime radical_regime() const;
  /// Rows span the Jacobson radical; throws RadicalUnavailable outside the supported regimes.
  const Matrix& radical() const;
  const RadicalSeries& radical_series() const;
  /// A subset of the basis generating the algebra (lifts of a basis of A / rad^2 A).
  const std::vector<std::size_t>& generators() const;

  AlgebraPtr opposite() const;

 private:
  explicit GradedAlgebra(AlgebraSpec spec);
  void validate() const;

  AlgebraSpec spec_;
  std::vector<SparseVec> products_;

  mutable std::once_flag radical_once_;
  mutable std::optional<Matrix> radical_;
  mutable std::once_flag series_once_;
  mutable std::optional<RadicalSeries> series_;
  mutable std::once_flag generators_once_;
  mutable std::vector<std::size_t> generators_;
};

/// build_algebra
AlgebraPtr build_algebra(AlgebraSpec spec);

/// Radical via the regular-representation trace form; valid over Q or F_p with p > dim.
Matrix radical_by_trace_form(const GradedAlgebra& a);

RadicalSeries radical_series(const GradedAlgebra& a);

/// Rows: basis of A_i (empty for negative i).
Matrix grade_component(const GradedAlgebra& a, int i);

/// Span of all products x*y for x in rows of `left`, y in rows of `right`.
la::SubspaceBuilder product_span(const GradedAlgebra& a, const std::vector<Vector>& left,
                                 const std::vector<Vector>& right);

struct Subalgebra {
  AlgebraPtr algebra;
  /// Rows: images of the subalgebra basis in the ambient algebra.
  std::vector<Vector> embedding;
};

/// A_0 as an algebra in its own right (basis = grade-0 basis vectors of A).
Subalgebra grade_zero_subalgebra(const GradedAlgebra& a);

struct Quotient {
  AlgebraPtr algebra;
  /// Ambient basis indices kept as the quotient basis.
  std::vector<std::size_t> kept;
  /// Reduces an ambient vector to quotient coordinates.
  std::function<Vector(const Vector&)> project;
};

/// A / I for a homogeneous two-sided ideal I given by spanning rows.
Quotient quotient_algebra(const GradedAlgebra& a, const std::vector<Vector>& ideal);

/// A_{>0} is nilpotent (checked by powering).
bool positive_part_nilpotent(const GradedAlgebra& a);
/// The projection A -> A_0 is multiplicative, i.e. A / A_{>0} and A_0 have the same structure constants.
bool quotient_by_positive_matches_grade_zero(const GradedAlgebra& a);

}  // namespace gradecert::alg
