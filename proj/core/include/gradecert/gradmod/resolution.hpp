#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "gradecert/gradmod/module.hpp"

namespace gradecert::gmod {

/// One summand P(lambda)<r> of a resolution term.
struct Summand {
  std::size_t lambda = 0;
  int shift = 0;
  friend bool operator==(const Summand&, const Summand&) = default;
};

struct GradedResolution {
  /// terms[i] lists the summands of P_i; summand blocks appear in this order in the basis of modules[i].
  std::vector<std::vector<Summand>> terms;
  std::vector<GradedModule> modules;
  std::vector<std::vector<std::size_t>> offsets;
  /// augmentation: P_0 -> M as a dim M x dim P_0 matrix.
  Matrix augmentation;
  /// differentials[i] for i >= 1: P_i -> P_{i-1}; differentials[0] is unused and empty.
  std::vector<Matrix> differentials;
  /// A zero syzygy was reached.
  bool terminated = false;
  /// The last computed syzygy was nonzero.
  bool truncated = false;

  std::size_t length() const { return terms.size(); }
};

/// Builds a minimal resolution one projective cover at a time.
class ResolutionStepper {
 public:
  ResolutionStepper(const GradedModule& m, const SimpleSystem& sys);

  /// The current syzygy is zero.
  bool done() const { return syzygy_.empty(); }
  /// Adds the projective cover of the current syzygy as the next term.
  void step();
  /// Basis of the i-th syzygy inside its ambient module (the input for i = 0, else P_{i-1}).
  const std::vector<Vector>& syzygy_basis(std::size_t i) const { return syzygies_[i]; }
  /// The i-th syzygy as a module in its own right.
  GradedModule syzygy_module(std::size_t i) const;
  std::size_t steps() const { return res_.length(); }
  /// Snapshot; terminated/truncated reflect the current syzygy.
  GradedResolution result() const;

 private:
  const SimpleSystem* sys_;
  GradedModule input_;
  GradedResolution res_;
  std::vector<std::vector<Vector>> syzygies_;
  std::vector<Vector> syzygy_;
};

/// Minimal projective resolution, one projective cover per step. Default max_length is dim(A)^2;
/// terms 0..max_length are computed.
GradedResolution minimal_graded_resolution(const GradedModule& m, const SimpleSystem& sys,
                                           std::optional<std::size_t> max_length = std::nullopt);
GradedResolution minimal_graded_resolution(const GradedModule& m,
                                           std::optional<std::size_t> max_length = std::nullopt);

/// entries[(n, j)] = dim ext^n(M, N<j>); zero entries are omitted.
struct ExtTable {
  std::map<std::pair<std::size_t, int>, std::size_t> entries;
  std::size_t max_degree = 0;

  std::size_t at(std::size_t n, int j) const;
  std::size_t total(std::size_t n) const;
};

/// Cohomology of the degree-zero Hom complex on the minimal resolution of m, degrees 0..max_degree.
ExtTable graded_ext(const GradedModule& m, const GradedModule& n, std::size_t max_degree, const SimpleSystem& sys);
ExtTable graded_ext(const GradedModule& m, const GradedModule& n, std::size_t max_degree);
/// Same complex on an existing resolution that reaches at least max_degree + 1 (or terminated).
ExtTable ext_from_resolution(const GradedResolution& res, const GradedModule& n, std::size_t max_degree,
                             const SimpleSystem& sys);

/// dim Ext^i(M, N) for i = 0..max_degree, from an ungraded minimal resolution.
std::vector<std::size_t> ungraded_ext(const GradedModule& m, const GradedModule& n, std::size_t max_degree);

struct LinearityResult {
  bool linear = true;
  /// First offending (i, r): a summand P(lambda)<r> of P_i with r != i.
  std::optional<std::pair<std::size_t, int>> failure;
  bool truncated = false;
};

LinearityResult is_linear(const GradedModule& m, const SimpleSystem& sys,
                          std::optional<std::size_t> max_length = std::nullopt);
LinearityResult is_linear(const GradedModule& m, std::optional<std::size_t> max_length = std::nullopt);

}  // namespace gradecert::gmod
