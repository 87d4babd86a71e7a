#pragma once

// Brute-force Coxeter oracles: word lengths by breadth-first search over products, Bruhat order by the
// subword property, and Kazhdan-Lusztig polynomials by inverting R-polynomials.

#include <algorithm>
#include <map>
#include <unordered_map>
#include <vector>

#include "gradecert/weyl/coxeter.hpp"

namespace oracle {

using gradecert::weyl::CoxElement;
using gradecert::weyl::CoxElementHash;
using gradecert::weyl::GroupPtr;

struct Enumerated {
  std::vector<CoxElement> elements;  // in order of distance
  std::vector<std::size_t> dist;
  std::vector<std::vector<std::size_t>> words;  // one shortest word each
  std::unordered_map<CoxElement, std::size_t, CoxElementHash> index;
};

inline Enumerated bfs(const GroupPtr& g, std::size_t max_len) {
  Enumerated e;
  e.elements.push_back(g->identity());
  e.dist.push_back(0);
  e.words.push_back({});
  e.index.emplace(e.elements[0], 0);
  for (std::size_t i = 0; i < e.elements.size(); ++i) {
    if (e.dist[i] == max_len) continue;
    for (std::size_t s = 0; s < g->generator_count(); ++s) {
      CoxElement y = e.elements[i] * g->generator(s);
      if (e.index.count(y)) continue;
      e.index.emplace(y, e.elements.size());
      e.elements.push_back(y);
      e.dist.push_back(e.dist[i] + 1);
      auto w = e.words[i];
      w.push_back(s);
      e.words.push_back(w);
    }
  }
  return e;
}

/// x <= w iff x is a product of a subword of a reduced word of w.
inline bool subword_leq(const GroupPtr& g, const CoxElement& x, const std::vector<std::size_t>& reduced_w) {
  const std::size_t n = reduced_w.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    CoxElement y = g->identity();
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) y = y * g->generator(reduced_w[i]);
    if (y == x) return true;
  }
  return false;
}

using Poly = std::vector<long long>;

inline Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

inline void poly_add(Poly& a, const Poly& b, long long c = 1) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += c * b[i];
}

inline void poly_trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

/// P_{x,w} for every pair of a finite enumerated group (all elements present), keyed by positions.
inline std::map<std::pair<std::size_t, std::size_t>, Poly> kl_by_r_polynomials(const GroupPtr& g,
                                                                               const Enumerated& e) {
  const std::size_t n = e.elements.size();
  std::vector<std::vector<char>> leq(n, std::vector<char>(n, 0));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t w = 0; w < n; ++w)
      leq[x][w] = e.dist[x] <= e.dist[w] && subword_leq(g, e.elements[x], e.words[w]);
  auto left = [&](std::size_t s, std::size_t x) { return e.index.at(g->generator(s) * e.elements[x]); };

  // R_{x,w}: with sw < w, R = R_{sx,sw} if sx < x, else (q - 1) R_{x,sw} + q R_{sx,sw}.
  std::map<std::pair<std::size_t, std::size_t>, Poly> r;
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;  // already by distance
  for (std::size_t w : order)
    for (std::size_t x = 0; x < n; ++x) {
      if (!leq[x][w]) continue;
      if (x == w) {
        r[{x, w}] = {1};
        continue;
      }
      std::size_t s = 0;
      while (e.dist[left(s, w)] > e.dist[w]) ++s;
      const std::size_t sw = left(s, w), sx = left(s, x);
      auto get = [&](std::size_t a, std::size_t b) { return leq[a][b] ? r.at({a, b}) : Poly{}; };
      Poly out;
      if (e.dist[sx] < e.dist[x]) {
        out = get(sx, sw);
      } else {
        out = poly_mul({-1, 1}, get(x, sw));
        poly_add(out, poly_mul({0, 1}, get(sx, sw)));
      }
      poly_trim(out);
      r[{x, w}] = out;
    }

  // q^{l(w)-l(x)} P_{x,w}(1/q) - P_{x,w} = sum_{x < y <= w} R_{x,y} P_{y,w}; the two sides of the left
  // have disjoint degree ranges, so P is minus the low part of the right.
  std::map<std::pair<std::size_t, std::size_t>, Poly> p;
  for (std::size_t w = 0; w < n; ++w) {
    std::vector<std::size_t> below;
    for (std::size_t x = 0; x < n; ++x)
      if (leq[x][w]) below.push_back(x);
    std::sort(below.begin(), below.end(), [&](std::size_t a, std::size_t b) { return e.dist[a] > e.dist[b]; });
    for (std::size_t x : below) {
      if (x == w) {
        p[{x, w}] = {1};
        continue;
      }
      Poly sum;
      for (std::size_t y : below)
        if (y != x && leq[x][y]) poly_add(sum, poly_mul(r.at({x, y}), p.at({y, w})));
      const std::size_t d = e.dist[w] - e.dist[x];
      Poly out;
      for (std::size_t i = 0; 2 * i + 1 <= d && i < sum.size(); ++i) {
        out.resize(i + 1, 0);
        out[i] = -sum[i];
      }
      poly_trim(out);
      p[{x, w}] = out;
    }
  }
  return p;
}

}  // namespace oracle
