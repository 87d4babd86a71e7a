#pragma once

#include <optional>
#include <vector>

#include "gradecert/weyl/root_datum.hpp"

namespace gradecert::weyl {

/// 4 for p = 2, p otherwise.
long long ell_of_p(long long p);

/// Predicates on weights in fundamental weight coordinates, for a prime p.
class WeightPredicates {
 public:
  /// Throws InvalidArgument unless p is prime.
  WeightPredicates(RootDatum datum, long long p);

  const RootDatum& datum() const { return datum_; }
  long long p() const { return p_; }
  int coxeter_number() const { return datum_.coxeter_number; }
  long long ell_of_p() const { return weyl::ell_of_p(p_); }

  bool is_dominant(const IntVec& lambda) const;
  /// 0 <= <lambda, alpha_i^vee> < p for all simple i.
  bool is_restricted(const IntVec& lambda) const;
  /// <lambda + rho, alpha^vee> is nonzero mod p for every root alpha.
  bool is_p_regular(const IntVec& lambda) const;
  /// <lambda + rho, alpha_0^vee> <= p(p - h + 2), alpha_0 the maximal short root.
  bool in_jantzen_region(const IntVec& lambda) const;
  /// mu - lambda is a nonnegative integer combination of simple roots.
  bool dominance_leq(const IntVec& lambda, const IntVec& mu) const;

  /// p-regular dominant weights below some p-restricted p-regular weight, with all coordinates <= bound.
  /// Without a bound, sufficient_bound() is used and the list is the whole ideal.
  std::vector<IntVec> gamma_res_reg_members(std::optional<long long> bound = std::nullopt) const;
  /// Every member has all coordinates at most (p - 1) <rho, 2 rho^vee>.
  long long sufficient_bound() const;

 private:
  RootDatum datum_;
  long long p_;
};

inline WeightPredicates weight_predicates(const RootDatum& d, long long p) { return WeightPredicates(d, p); }

}  // namespace gradecert::weyl
