#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gradecert/qhk/poset.hpp"
#include "gradecert/weyl/root_datum.hpp"

namespace gradecert::weyl {

class CoxGroup;
using GroupPtr = std::shared_ptr<const CoxGroup>;

/// An element stored as the affine map it induces on weights (fundamental weight coordinates, with the
/// affine reflecting hyperplanes at multiples of CoxGroup::scale()). Equal maps mean equal elements.
class CoxElement {
 public:
  CoxElement() = default;

  const GroupPtr& group() const { return group_; }
  /// Row-major rank x rank matrix.
  const IntVec& linear() const { return m_; }
  const IntVec& translation() const { return t_; }

  IntVec act(const IntVec& lambda) const;
  /// Dot action of W_p: x(lambda + rho) - rho with the translations rescaled to multiples of p.
  IntVec dot(const IntVec& lambda, long long p) const;

  /// Number of reflecting hyperplanes between the base alcove and its image.
  std::size_t length() const;
  bool is_left_descent(std::size_t s) const;
  bool is_right_descent(std::size_t s) const;
  std::vector<std::size_t> left_descents() const;
  std::vector<std::size_t> right_descents() const;
  /// Reduced word, read left to right.
  std::vector<std::size_t> word() const;
  std::string to_string() const;
  CoxElement inverse() const;
  std::size_t hash() const;

  friend CoxElement operator*(const CoxElement& a, const CoxElement& b);
  friend bool operator==(const CoxElement& a, const CoxElement& b) { return a.m_ == b.m_ && a.t_ == b.t_; }
  friend bool operator!=(const CoxElement& a, const CoxElement& b) { return !(a == b); }

 private:
  friend class CoxGroup;
  CoxElement(GroupPtr g, IntVec m, IntVec t) : group_(std::move(g)), m_(std::move(m)), t_(std::move(t)) {}
  IntVec image() const;  // image of the base point rho

  GroupPtr group_;
  IntVec m_;
  IntVec t_;
};

struct CoxElementHash {
  std::size_t operator()(const CoxElement& x) const { return x.hash(); }
};

/// Finite Weyl group W, or the affine Weyl group W_aff = W x| ZPhi^vee generated by s_1..s_n and s_0.
/// Generator s_i (1 <= i <= n) has index i - 1; s_0 has index n.
class CoxGroup : public std::enable_shared_from_this<CoxGroup> {
 public:
  static GroupPtr finite(RootDatum d);
  static GroupPtr affine(RootDatum d);
  /// "A2" or "~A2".
  static GroupPtr parse(const std::string& name);

  const RootDatum& datum() const { return datum_; }
  bool is_affine() const { return affine_; }
  std::size_t generator_count() const { return datum_.rank + (affine_ ? 1 : 0); }
  std::size_t rank() const { return datum_.rank; }
  long long scale() const { return scale_; }
  std::string name() const { return (affine_ ? "~" : "") + datum_.name; }
  std::string generator_name(std::size_t s) const;

  CoxElement identity() const;
  CoxElement generator(std::size_t s) const;
  CoxElement from_word(const std::vector<std::size_t>& word) const;
  /// "e", "s1s2s1", "s0s1"; throws Parse.
  CoxElement parse_word(const std::string& word) const;
  /// "s1,s2" or "" as a set of generator indices; throws Parse.
  std::vector<std::size_t> parse_subset(const std::string& subset) const;

 private:
  CoxGroup(RootDatum d, bool affine);
  friend class CoxElement;

  RootDatum datum_;
  bool affine_;
  long long scale_;
  std::vector<IntVec> gen_m_;
  std::vector<IntVec> gen_t_;
  std::vector<IntVec> root_weights_;
};

/// All elements of length <= radius, with Bruhat order.
class CoxBall {
 public:
  CoxBall(GroupPtr g, std::size_t radius);

  const GroupPtr& group() const { return group_; }
  std::size_t radius() const { return radius_; }
  std::size_t size() const { return elements_.size(); }
  /// Sorted by length.
  const std::vector<CoxElement>& elements() const { return elements_; }
  const CoxElement& element(std::size_t i) const { return elements_[i]; }
  std::size_t length(std::size_t i) const { return lengths_[i]; }
  /// True when no element of the ball has a neighbour outside it, i.e. the ball is the whole (finite) group.
  bool exhausts_group() const { return exhausts_; }

  std::optional<std::size_t> find(const CoxElement& x) const;
  /// s * x and x * s, or nullopt outside the ball.
  std::optional<std::size_t> left_mult(std::size_t s, std::size_t x) const;
  std::optional<std::size_t> right_mult(std::size_t x, std::size_t s) const;

  bool bruhat_leq(std::size_t x, std::size_t w) const { return leq_[x * elements_.size() + w] != 0; }
  /// Pairs (x, w) with x < w and length(w) = length(x) + 1.
  std::vector<std::pair<std::size_t, std::size_t>> covers() const;

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  GroupPtr group_;
  std::size_t radius_;
  std::vector<CoxElement> elements_;
  std::vector<std::size_t> lengths_;
  std::unordered_map<CoxElement, std::size_t, CoxElementHash> index_;
  std::vector<std::size_t> left_, right_;  // [x * gens + s]
  std::vector<char> leq_;
  bool exhausts_ = false;
};

/// Left cosets W_J x (W_J acting on the left) or right cosets x W_J.
enum class Side { Left, Right };
enum class Extremal { Min, Max };

struct CosetRep {
  std::size_t element = 0;  // ball index
  /// Descents of the element on the acting side that lie in J: empty for Min, all of J for Max.
  std::vector<std::size_t> certificate;
};

/// Extremal representatives lying in the ball. Descent sets are exact, so every listed element is certified
/// and every extremal representative of length <= radius is listed. Throws InvalidArgument if W_J is infinite.
std::vector<CosetRep> coset_reps(const CoxBall& ball, const std::vector<std::size_t>& J, Side side,
                                 Extremal extremal);

/// Elements of W_J; throws InvalidArgument if W_J is infinite.
std::vector<CoxElement> parabolic_subgroup(const GroupPtr& g, const std::vector<std::size_t>& J);
CoxElement longest_element(const GroupPtr& g, const std::vector<std::size_t>& J);

struct DoubleCoset {
  CoxElement min_rep;
  CoxElement max_rep;
  /// d^-1 W_J1 d meets W_J2 only in the identity.
  bool regular = false;
  std::size_t size = 0;
};

/// Every (W_J1, W_J2) double coset whose minimal representative lies in the ball. The maximal representative
/// is computed exactly and may lie outside the ball.
std::vector<DoubleCoset> regular_double_cosets(const CoxBall& ball, const std::vector<std::size_t>& J1,
                                               const std::vector<std::size_t>& J2);

/// w_mu x^-1 w_nu.
CoxElement psi(const CoxElement& x, const std::vector<std::size_t>& mu, const std::vector<std::size_t>& nu);

enum class Sign { Minus, Plus };

/// Coset description of I^nu_{mu,-} (x w_mu in (I_nu^max)^-1 and in I_mu^min) and of I^mu_{nu,+}
/// (y w_nu in (I_mu^min)^-1 and in I_nu^max), where I_J^min and I_J^max are the extremal elements of the
/// cosets z W_J. Reading them as cosets W_J z makes this disagree with the double coset description.
bool in_parabolic_singular(const CoxElement& x, const std::vector<std::size_t>& mu, const std::vector<std::size_t>& nu,
                           Sign sign);

struct CoxPoset {
  GroupPtr group;
  std::vector<CoxElement> elements;
  std::vector<std::size_t> ball_index;
  /// Strict order on positions in `elements`.
  qhk::WeightPoset order;
  /// True when the order is the opposite of the Bruhat order.
  bool opposite = false;
  /// Copied from the ball: whether upward Bruhat sets are known to be complete.
  bool window_complete = false;

  std::optional<std::size_t> position(const CoxElement& x) const;
};

/// Sign Minus: maximal representatives of regular (W_nu, W_mu) double cosets in the ball, Bruhat order.
/// Sign Plus: minimal representatives of regular (W_mu, W_nu) double cosets in the ball, opposite Bruhat order.
/// The set is also computed from in_parabolic_singular; disagreement throws ConventionMismatch.
CoxPoset parabolic_singular_posets(const CoxBall& ball, const std::vector<std::size_t>& mu,
                                   const std::vector<std::size_t>& nu, Sign sign);

/// The whole ball under Bruhat order (or its opposite).
CoxPoset bruhat_poset(const CoxBall& ball, bool opposite = false);

/// Elements below w in the poset order. Throws ElementNotInPoset, and UncertifiedAtRadius when the answer
/// runs upward in Bruhat order and the ball does not exhaust the group.
CoxPoset poset_ideal(const CoxPoset& p, const CoxElement& w);
/// Elements above w in the poset order; same errors.
CoxPoset poset_coideal(const CoxPoset& p, const CoxElement& w);

/// One covering pair per line: "x w" with x below w.
std::string edge_list(const CoxPoset& p);

}  // namespace gradecert::weyl
