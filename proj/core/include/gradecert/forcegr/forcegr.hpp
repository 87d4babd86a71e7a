#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gradecert/exactla/lattice.hpp"
#include "gradecert/gradmod/module.hpp"

namespace gradecert::fgr {

using alg::AlgebraPtr;
using gmod::GradedModule;
using la::IntVector;
using la::Matrix;
using la::Vector;

/// Representatives of one filtration layer F^n / F^{n+1}, with coordinates modulo F^{n+1}.
class LayerCoords {
 public:
  LayerCoords() = default;
  LayerCoords(la::Field f, std::size_t ambient, std::vector<Vector> reps, const std::vector<Vector>& next);

  const std::vector<Vector>& reps() const { return reps_; }
  /// Coefficients on reps() of x in F^n, modulo F^{n+1}.
  Vector coords(const Vector& x) const;

 private:
  std::vector<Vector> reps_;
  std::shared_ptr<la::BasisSolver> solver_;
};

/// Picks representatives of span(layer) modulo span(next) among the reduced rows of `layer`.
std::vector<Vector> layer_representatives(la::Field f, std::size_t ambient, const Matrix& layer, const Matrix& next);

struct GrAlgebra {
  AlgebraPtr source;
  AlgebraPtr algebra;
  /// lifts[k]: element of the source algebra representing gr basis element k.
  std::vector<Vector> lifts;
  /// layers[n]: coordinates for rad^n / rad^{n+1}; gr basis indices of layer n start at offsets[n].
  std::vector<LayerCoords> layers;
  std::vector<std::size_t> offsets;
};

/// gr A = sum of rad^n A / rad^{n+1} A. The input grading is ignored. Throws RadicalUnavailable.
GrAlgebra gr_algebra(const AlgebraPtr& a);

struct GrModule {
  GradedModule module;
  std::vector<Vector> lifts;
};

/// gr M = sum of rad^n M / rad^{n+1} M as a module over g.algebra. `m` must be a module over g.source.
GrModule gr_module(const GrAlgebra& g, const GradedModule& m);

struct IntMult {
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t k = 0;
  mpz_class coef;
};

/// Free Z-module with integer structure constants and a designated prime p.
struct IntegralOrder {
  std::string name;
  std::size_t dim = 0;
  std::vector<std::string> labels;
  std::vector<IntMult> mult;
  IntVector unit;
  std::optional<std::vector<IntVector>> idempotents;
  std::uint32_t prime = 2;
};

/// The order tensored with Q, trivially graded. Validates associativity and the unit.
AlgebraPtr rational_algebra(const IntegralOrder& o);
/// The order tensored with F_p, trivially graded.
AlgebraPtr reduction_mod_p(const IntegralOrder& o);

struct TildeGr {
  AlgebraPtr algebra;
  /// filtration[i] = order meet rad^i of the rational algebra; the last entry is zero.
  std::vector<la::IntegerLattice> filtration;
  /// Integral lift of each output basis element.
  std::vector<IntVector> lifts;
};

/// Graded F_p-algebra from the filtration of the order by the radical powers of its rational algebra.
TildeGr tilde_gr(const IntegralOrder& o);

enum class IsoStatus { Isomorphic, NotIsomorphic, Unknown };
std::string to_string(IsoStatus s);

struct IsoOptions {
  bool graded = true;
  std::uint64_t seed = 0;
  /// Candidate generator images tried before giving up.
  std::size_t budget = 200000;
  /// Seeded samples over Q, where exhaustive enumeration is impossible.
  std::size_t samples = 2000;
  /// Larger algebras are compared by invariants only.
  std::size_t max_search_dim = 8;
};

struct IsoResult {
  IsoStatus status = IsoStatus::Unknown;
  /// Columns are images of the basis of the first algebra, when Isomorphic.
  std::optional<Matrix> map;
  std::string reason;
};

/// Grade dimension vectors, radical layers and centre dimensions first, then a search over images of a
/// generating set. NotIsomorphic only comes from an invariant mismatch.
IsoResult algebra_isomorphism(const AlgebraPtr& a, const AlgebraPtr& b, const IsoOptions& opts = {});

/// The same structure constants with every grade set to 0.
AlgebraPtr forget_algebra_grading(const AlgebraPtr& a);

}  // namespace gradecert::fgr
