#include "gradecert/qhk/poset.hpp"

#include <algorithm>
#include <string>

#include "gradecert/error.hpp"

namespace gradecert::qhk {

WeightPoset WeightPoset::from_relations(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& less) {
  WeightPoset p(n);
  for (const auto& [a, b] : less) {
    require(a < n && b < n, ErrorKind::InvalidArgument, "poset relation names an unknown element");
    require(a != b, ErrorKind::InvalidArgument, "poset relation " + std::to_string(a) + " < itself");
    p.less_[a * n + b] = true;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (p.less_[i * n + k])
        for (std::size_t j = 0; j < n; ++j)
          if (p.less_[k * n + j]) p.less_[i * n + j] = true;
  for (std::size_t i = 0; i < n; ++i)
    require(!p.less_[i * n + i], ErrorKind::InvalidArgument, "poset relations contain a cycle through " +
                                                                 std::to_string(i));
  return p;
}

WeightPoset WeightPoset::chain(const std::vector<std::size_t>& order) {
  std::vector<std::pair<std::size_t, std::size_t>> rel;
  for (std::size_t i = 0; i + 1 < order.size(); ++i) rel.emplace_back(order[i], order[i + 1]);
  return from_relations(order.size(), rel);
}

std::vector<std::pair<std::size_t, std::size_t>> WeightPoset::relations() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t a = 0; a < n_; ++a)
    for (std::size_t b = 0; b < n_; ++b)
      if (less(a, b)) out.emplace_back(a, b);
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> WeightPoset::covers() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const auto& [a, b] : relations()) {
    bool cover = true;
    for (std::size_t c = 0; c < n_ && cover; ++c)
      if (less(a, c) && less(c, b)) cover = false;
    if (cover) out.emplace_back(a, b);
  }
  return out;
}

std::vector<std::size_t> WeightPoset::linear_extension() const {
  std::vector<std::size_t> out;
  std::vector<bool> used(n_, false);
  while (out.size() < n_) {
    for (std::size_t a = 0; a < n_; ++a) {
      if (used[a]) continue;
      bool minimal = true;
      for (std::size_t b = 0; b < n_ && minimal; ++b)
        if (!used[b] && less(b, a)) minimal = false;
      if (minimal) {
        used[a] = true;
        out.push_back(a);
        break;
      }
    }
  }
  return out;
}

std::vector<std::size_t> WeightPoset::maximal_in(const std::vector<std::size_t>& subset) const {
  std::vector<std::size_t> out;
  for (std::size_t a : subset) {
    bool maximal = true;
    for (std::size_t b : subset)
      if (less(a, b)) maximal = false;
    if (maximal) out.push_back(a);
  }
  return out;
}

}  // namespace gradecert::qhk
