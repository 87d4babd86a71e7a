#pragma once

#include <gmpxx.h>

#include <vector>

#include "gradecert/exactla/matrix.hpp"

namespace gradecert::la {

using IntVector = std::vector<mpz_class>;
using IntMatrix = std::vector<IntVector>;  // list of rows

/// Sublattice of Z^n, stored by its row Hermite normal form basis.
class IntegerLattice {
 public:
  IntegerLattice() = default;
  explicit IntegerLattice(std::size_t ambient) : ambient_(ambient) {}

  static IntegerLattice full(std::size_t ambient);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t rank() const { return basis_.size(); }
  const IntMatrix& basis() const { return basis_; }
  bool contains(const IntVector& v) const;

  friend bool operator==(const IntegerLattice&, const IntegerLattice&) = default;

 private:
  friend IntegerLattice hnf(const IntMatrix& rows, std::size_t ambient);
  std::size_t ambient_ = 0;
  IntMatrix basis_;
};

struct HnfTransform {
  IntMatrix hnf;        // same row count as the input; zero rows last
  IntMatrix transform;  // unimodular, transform * input == hnf
  std::size_t rank = 0;
};

/// Row-style Hermite normal form with the unimodular transform that produces it.
/// Pivots are positive and entries above a pivot lie in [0, pivot).
HnfTransform hnf_with_transform(const IntMatrix& rows, std::size_t ambient);

IntegerLattice hnf(const IntMatrix& rows, std::size_t ambient);

/// Lattice points of `lattice` lying in the rational row span of `subspace`.
IntegerLattice lattice_intersect_subspace(const IntegerLattice& lattice, const Matrix& subspace);

/// Converts a rational vector to a primitive integer vector on the same line (zero stays zero).
IntVector clear_denominators(const Vector& v);
Vector to_rational(const IntVector& v);

}  // namespace gradecert::la
