#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gradecert/weyl/coxeter.hpp"

namespace gradecert::weyl {

/// Coefficients of q^0, q^1, ...; empty is the zero polynomial.
using KLPoly = std::vector<long long>;

std::string to_string(const KLPoly& p);

/// Kazhdan-Lusztig polynomials P_{x,w} for all x <= w in a ball. Keeps a reference to the ball.
class KLTable {
 public:
  explicit KLTable(const CoxBall& ball);

  const CoxBall& ball() const { return *ball_; }
  /// By ball index; zero unless x <= w.
  const KLPoly& at(std::size_t x, std::size_t w) const { return table_[w][x]; }
  /// Throws IntervalEscapesBall when w (and so the interval [x, w]) is not in the ball.
  KLPoly polynomial(const CoxElement& x, const CoxElement& w) const;
  /// Coefficient of q^((l(w) - l(x) - 1) / 2) in P_{x,w}, or 0.
  long long mu(std::size_t x, std::size_t w) const;

  /// One row per pair x <= w: x-word,w-word,c0;c1;...
  std::string csv() const;

 private:
  const CoxBall* ball_;
  std::vector<std::vector<KLPoly>> table_;  // [w][x]
};

inline KLTable kl_polynomials(const CoxBall& ball) { return KLTable(ball); }

}  // namespace gradecert::weyl
