#include "gradecert/weyl/kl.hpp"

#include "gradecert/error.hpp"

namespace gradecert::weyl {

namespace {

void trim(KLPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// acc += c * q^shift * p
void add_shifted(KLPoly& acc, const KLPoly& p, std::size_t shift, long long c) {
  if (p.empty() || c == 0) return;
  if (acc.size() < p.size() + shift) acc.resize(p.size() + shift, 0);
  for (std::size_t i = 0; i < p.size(); ++i) acc[i + shift] += c * p[i];
}

}  // namespace

std::string to_string(const KLPoly& p) {
  if (p.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0) continue;
    if (!out.empty()) out += p[i] > 0 ? " + " : " - ";
    else if (p[i] < 0) out += "-";
    const long long a = p[i] < 0 ? -p[i] : p[i];
    if (i == 0 || a != 1) out += std::to_string(a);
    if (i >= 1) out += "q";
    if (i >= 2) out += "^" + std::to_string(i);
  }
  return out;
}

KLTable::KLTable(const CoxBall& ball) : ball_(&ball) {
  const std::size_t n = ball.size();
  table_.assign(n, std::vector<KLPoly>(n));
  auto descent = [&](std::size_t s, std::size_t x) {
    const auto sx = ball.left_mult(s, x);
    return sx && ball.length(*sx) < ball.length(x);
  };
  if (n == 0) return;
  table_[0][0] = {1};
  for (std::size_t w = 1; w < n; ++w) {
    std::size_t s = 0;
    while (!descent(s, w)) ++s;
    const std::size_t v = *ball.left_mult(s, w);
    const std::size_t lw = ball.length(w);
    // z < v with sz < z and mu(z, v) != 0
    std::vector<std::pair<std::size_t, long long>> correction;
    for (std::size_t z = 0; z < n; ++z)
      if (z != v && ball.bruhat_leq(z, v) && descent(s, z))
        if (long long m = mu(z, v); m != 0) correction.emplace_back(z, m);

    for (std::size_t x = 0; x < n; ++x) {
      if (!ball.bruhat_leq(x, w)) continue;
      if (x == w) {
        table_[w][x] = {1};
        continue;
      }
      const std::size_t sx = *ball.left_mult(s, x);  // l(sx) <= l(x) + 1 <= l(w)
      const bool c = ball.length(sx) < ball.length(x);
      KLPoly p;
      add_shifted(p, table_[v][sx], c ? 0 : 1, 1);
      add_shifted(p, table_[v][x], c ? 1 : 0, 1);
      for (auto [z, m] : correction) add_shifted(p, table_[z][x], (lw - ball.length(z)) / 2, -m);
      trim(p);
      table_[w][x] = std::move(p);
    }
  }
}

KLPoly KLTable::polynomial(const CoxElement& x, const CoxElement& w) const {
  const auto wi = ball_->find(w);
  require(wi.has_value(), ErrorKind::IntervalEscapesBall, w.to_string() + " lies outside the ball");
  const auto xi = ball_->find(x);
  if (!xi) return {};  // longer than w, so not below it
  return at(*xi, *wi);
}

long long KLTable::mu(std::size_t x, std::size_t w) const {
  const std::size_t lx = ball_->length(x), lw = ball_->length(w);
  if (lw <= lx || (lw - lx) % 2 == 0) return 0;
  const KLPoly& p = table_[w][x];
  const std::size_t k = (lw - lx - 1) / 2;
  return k < p.size() ? p[k] : 0;
}

std::string KLTable::csv() const {
  std::string out = "x,w,coefficients\n";
  for (std::size_t w = 0; w < table_.size(); ++w)
    for (std::size_t x = 0; x < table_.size(); ++x) {
      const KLPoly& p = table_[w][x];
      if (p.empty()) continue;
      out += ball_->element(x).to_string() + "," + ball_->element(w).to_string() + ",";
      for (std::size_t i = 0; i < p.size(); ++i) out += (i ? ";" : "") + std::to_string(p[i]);
      out += "\n";
    }
  return out;
}

}  // namespace gradecert::weyl
