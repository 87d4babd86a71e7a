#include "gradecert/weyl/weights.hpp"

#include <numeric>

#include "gradecert/error.hpp"

namespace gradecert::weyl {

namespace {

bool is_prime(long long p) {
  if (p < 2) return false;
  for (long long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace

long long ell_of_p(long long p) { return p == 2 ? 4 : p; }

WeightPredicates::WeightPredicates(RootDatum datum, long long p) : datum_(std::move(datum)), p_(p) {
  require(is_prime(p), ErrorKind::InvalidArgument, "p must be prime, got " + std::to_string(p));
}

bool WeightPredicates::is_dominant(const IntVec& lambda) const {
  require(lambda.size() == datum_.rank, ErrorKind::ShapeMismatch, "weight has the wrong rank");
  for (long long x : lambda)
    if (x < 0) return false;
  return true;
}

bool WeightPredicates::is_restricted(const IntVec& lambda) const {
  if (!is_dominant(lambda)) return false;
  for (long long x : lambda)
    if (x >= p_) return false;
  return true;
}

bool WeightPredicates::is_p_regular(const IntVec& lambda) const {
  require(lambda.size() == datum_.rank, ErrorKind::ShapeMismatch, "weight has the wrong rank");
  IntVec shifted = lambda;
  for (std::size_t i = 0; i < shifted.size(); ++i) shifted[i] += datum_.rho[i];
  for (std::size_t k = 0; k < datum_.positive_coroots.size(); ++k)
    if (datum_.pair_coroot(shifted, k) % p_ == 0) return false;
  return true;
}

bool WeightPredicates::in_jantzen_region(const IntVec& lambda) const {
  require(lambda.size() == datum_.rank, ErrorKind::ShapeMismatch, "weight has the wrong rank");
  IntVec shifted = lambda;
  for (std::size_t i = 0; i < shifted.size(); ++i) shifted[i] += datum_.rho[i];
  return datum_.pair_coroot(shifted, datum_.highest_short_root) <= p_ * (p_ - datum_.coxeter_number + 2);
}

bool WeightPredicates::dominance_leq(const IntVec& lambda, const IntVec& mu) const {
  require(lambda.size() == datum_.rank && mu.size() == datum_.rank, ErrorKind::ShapeMismatch,
          "weight has the wrong rank");
  // Coefficients in simple roots: sum_i (mu - lambda)_i omega_i.
  for (std::size_t j = 0; j < datum_.rank; ++j) {
    mpq_class c = 0;
    for (std::size_t i = 0; i < datum_.rank; ++i) c += static_cast<long>(mu[i] - lambda[i]) * datum_.fundamental_weights[i][j];
    if (c < 0 || c.get_den() != 1) return false;
  }
  return true;
}

long long WeightPredicates::sufficient_bound() const {
  long long s = 0;
  for (std::size_t k = 0; k < datum_.positive_coroots.size(); ++k) s += datum_.pair_coroot(datum_.rho, k);
  return (p_ - 1) * s;
}

std::vector<IntVec> WeightPredicates::gamma_res_reg_members(std::optional<long long> bound) const {
  const std::size_t n = datum_.rank;
  const long long b = bound.value_or(sufficient_bound());
  std::vector<IntVec> generators;
  IntVec lam(n, 0);
  // Odometer over [0, top]^n.
  auto sweep = [&](long long top, auto&& visit) {
    std::fill(lam.begin(), lam.end(), 0);
    for (;;) {
      visit(lam);
      std::size_t i = 0;
      while (i < n && lam[i] == top) lam[i++] = 0;
      if (i == n) return;
      ++lam[i];
    }
  };
  sweep(p_ - 1, [&](const IntVec& l) {
    if (is_p_regular(l)) generators.push_back(l);
  });
  std::vector<IntVec> out;
  if (generators.empty() || b < 0) return out;
  sweep(b, [&](const IntVec& l) {
    if (!is_p_regular(l)) return;
    for (const auto& g : generators)
      if (dominance_leq(l, g)) {
        out.push_back(l);
        return;
      }
  });
  return out;
}

}  // namespace gradecert::weyl
