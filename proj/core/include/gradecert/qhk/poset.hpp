#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace gradecert::qhk {

/// Strict partial order on {0, ..., n-1}, stored as its transitive closure.
class WeightPoset {
 public:
  WeightPoset() = default;
  explicit WeightPoset(std::size_t n) : n_(n), less_(n * n, false) {}

  /// Transitive closure of the given pairs (a < b); throws InvalidArgument on a cycle or bad index.
  static WeightPoset from_relations(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& less);
  /// order[0] < order[1] < ...
  static WeightPoset chain(const std::vector<std::size_t>& order);

  std::size_t size() const { return n_; }
  bool less(std::size_t a, std::size_t b) const { return less_[a * n_ + b]; }
  bool leq(std::size_t a, std::size_t b) const { return a == b || less(a, b); }
  bool comparable(std::size_t a, std::size_t b) const { return leq(a, b) || leq(b, a); }

  /// All pairs a < b, sorted.
  std::vector<std::pair<std::size_t, std::size_t>> relations() const;
  /// Covering pairs only.
  std::vector<std::pair<std::size_t, std::size_t>> covers() const;
  /// Increasing linear extension, smallest index first among ties.
  std::vector<std::size_t> linear_extension() const;
  /// Elements of the subset that are maximal within it.
  std::vector<std::size_t> maximal_in(const std::vector<std::size_t>& subset) const;

  friend bool operator==(const WeightPoset&, const WeightPoset&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<bool> less_;
};

}  // namespace gradecert::qhk
