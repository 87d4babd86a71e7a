#include "gradecert/weyl/coxeter.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <unordered_set>

#include "gradecert/error.hpp"

namespace gradecert::weyl {

namespace {

long long floor_div(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

IntVec mat_mul(const IntVec& a, const IntVec& b, std::size_t n) {
  IntVec c(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const long long x = a[i * n + k];
      if (x == 0) continue;
      for (std::size_t j = 0; j < n; ++j) c[i * n + j] += x * b[k * n + j];
    }
  return c;
}

IntVec mat_vec(const IntVec& a, const IntVec& v, std::size_t n) {
  IntVec out(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i] += a[i * n + j] * v[j];
  return out;
}

void check_subset(const CoxGroup& g, const std::vector<std::size_t>& J) {
  for (std::size_t s : J)
    require(s < g.generator_count(), ErrorKind::InvalidArgument, "generator index out of range");
  if (g.is_affine()) {
    std::set<std::size_t> distinct(J.begin(), J.end());
    require(distinct.size() < g.generator_count(), ErrorKind::InvalidArgument,
            "parabolic subgroup on all affine generators is infinite");
  }
}

}  // namespace

// ---- CoxGroup --------------------------------------------------------------------------------------------

CoxGroup::CoxGroup(RootDatum d, bool affine) : datum_(std::move(d)), affine_(affine) {
  const std::size_t n = datum_.rank;
  scale_ = affine_ ? datum_.coxeter_number : 1;
  auto reflection = [&](const IntVec& alpha, const IntVec& coroot) {
    IntVec m(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      m[i * n + i] = 1;
      for (std::size_t j = 0; j < n; ++j) m[i * n + j] -= alpha[i] * coroot[j];
    }
    return m;
  };
  for (std::size_t s = 0; s < n; ++s) {
    IntVec alpha(n), coroot(n, 0);
    for (std::size_t i = 0; i < n; ++i) alpha[i] = datum_.cartan[i][s];
    coroot[s] = 1;
    gen_m_.push_back(reflection(alpha, coroot));
    gen_t_.push_back(IntVec(n, 0));
  }
  if (affine_) {
    const std::size_t k0 = datum_.highest_short_root;
    const IntVec alpha = datum_.root_weight(k0);
    gen_m_.push_back(reflection(alpha, datum_.positive_coroots[k0]));
    IntVec t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = scale_ * alpha[i];
    gen_t_.push_back(t);
  }
}

GroupPtr CoxGroup::finite(RootDatum d) { return GroupPtr(new CoxGroup(std::move(d), false)); }
GroupPtr CoxGroup::affine(RootDatum d) { return GroupPtr(new CoxGroup(std::move(d), true)); }

GroupPtr CoxGroup::parse(const std::string& name) {
  require(!name.empty(), ErrorKind::Parse, "empty group name");
  if (name[0] == '~') return affine(parse_root_datum(name.substr(1)));
  return finite(parse_root_datum(name));
}

std::string CoxGroup::generator_name(std::size_t s) const {
  return s < datum_.rank ? "s" + std::to_string(s + 1) : "s0";
}

CoxElement CoxGroup::identity() const {
  const std::size_t n = datum_.rank;
  IntVec m(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) m[i * n + i] = 1;
  return CoxElement(shared_from_this(), m, IntVec(n, 0));
}

CoxElement CoxGroup::generator(std::size_t s) const {
  require(s < generator_count(), ErrorKind::InvalidArgument, "generator index out of range");
  return CoxElement(shared_from_this(), gen_m_[s], gen_t_[s]);
}

CoxElement CoxGroup::from_word(const std::vector<std::size_t>& word) const {
  CoxElement x = identity();
  for (auto it = word.rbegin(); it != word.rend(); ++it) x = generator(*it) * x;
  return x;
}

CoxElement CoxGroup::parse_word(const std::string& word) const {
  std::vector<std::size_t> gens;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < word.size() && (std::isspace(static_cast<unsigned char>(word[i])) || word[i] == '*' || word[i] == '.'))
      ++i;
  };
  skip();
  if (word.substr(i) == "e" || i == word.size()) return identity();
  while (i < word.size()) {
    require(word[i] == 's', ErrorKind::Parse, "expected a word in s1, s2, ... in '" + word + "'");
    ++i;
    std::size_t v = 0, digits = 0;
    while (i < word.size() && std::isdigit(static_cast<unsigned char>(word[i]))) {
      v = v * 10 + static_cast<std::size_t>(word[i++] - '0');
      ++digits;
    }
    require(digits > 0, ErrorKind::Parse, "generator without index in '" + word + "'");
    if (v == 0) {
      require(affine_, ErrorKind::Parse, "s0 only exists in affine groups");
      gens.push_back(datum_.rank);
    } else {
      require(v <= datum_.rank, ErrorKind::Parse, "generator index out of range in '" + word + "'");
      gens.push_back(v - 1);
    }
    skip();
  }
  return from_word(gens);
}

std::vector<std::size_t> CoxGroup::parse_subset(const std::string& subset) const {
  std::string cleaned;
  for (char c : subset) cleaned += (c == ',' || c == '{' || c == '}') ? ' ' : c;
  std::istringstream in(cleaned);
  std::set<std::size_t> out;
  std::string tok;
  while (in >> tok) {
    const auto w = parse_word(tok).word();
    require(w.size() == 1, ErrorKind::Parse, "expected a simple reflection, got '" + tok + "'");
    out.insert(w[0]);
  }
  return {out.begin(), out.end()};
}

// ---- CoxElement ------------------------------------------------------------------------------------------

IntVec CoxElement::act(const IntVec& lambda) const {
  const std::size_t n = t_.size();
  IntVec out = mat_vec(m_, lambda, n);
  for (std::size_t i = 0; i < n; ++i) out[i] += t_[i];
  return out;
}

IntVec CoxElement::dot(const IntVec& lambda, long long p) const {
  const std::size_t n = t_.size();
  const long long scale = group_->scale();
  IntVec shifted = lambda;
  for (std::size_t i = 0; i < n; ++i) shifted[i] += 1;
  IntVec out = mat_vec(m_, shifted, n);
  for (std::size_t i = 0; i < n; ++i) out[i] += (t_[i] / scale) * p - 1;
  return out;
}

IntVec CoxElement::image() const { return act(group_->datum().rho); }

std::size_t CoxElement::length() const {
  const RootDatum& d = group_->datum();
  const IntVec img = image();
  std::size_t len = 0;
  for (std::size_t k = 0; k < d.positive_coroots.size(); ++k) {
    const long long b = d.pair_coroot(img, k);
    if (group_->is_affine()) {
      const long long q = floor_div(b, group_->scale());
      len += static_cast<std::size_t>(q < 0 ? -q : q);
    } else if (b < 0) {
      ++len;
    }
  }
  return len;
}

bool CoxElement::is_left_descent(std::size_t s) const {
  const RootDatum& d = group_->datum();
  const IntVec img = image();
  if (s < d.rank) return img[s] < 0;
  return d.pair_coroot(img, d.highest_short_root) > group_->scale();
}

bool CoxElement::is_right_descent(std::size_t s) const { return ((*this) * group_->generator(s)).length() < length(); }

std::vector<std::size_t> CoxElement::left_descents() const {
  std::vector<std::size_t> out;
  for (std::size_t s = 0; s < group_->generator_count(); ++s)
    if (is_left_descent(s)) out.push_back(s);
  return out;
}

std::vector<std::size_t> CoxElement::right_descents() const {
  std::vector<std::size_t> out;
  const std::size_t len = length();
  for (std::size_t s = 0; s < group_->generator_count(); ++s)
    if (((*this) * group_->generator(s)).length() < len) out.push_back(s);
  return out;
}

std::vector<std::size_t> CoxElement::word() const {
  std::vector<std::size_t> out;
  CoxElement x = *this;
  const CoxElement e = group_->identity();
  while (x != e) {
    std::size_t s = 0;
    while (!x.is_left_descent(s)) ++s;
    out.push_back(s);
    x = group_->generator(s) * x;
  }
  return out;
}

std::string CoxElement::to_string() const {
  const auto w = word();
  if (w.empty()) return "e";
  std::string out;
  for (std::size_t s : w) out += group_->generator_name(s);
  return out;
}

CoxElement CoxElement::inverse() const {
  auto w = word();
  std::reverse(w.begin(), w.end());
  return group_->from_word(w);
}

std::size_t CoxElement::hash() const {
  std::size_t h = 1469598103934665603ULL;
  auto mix = [&h](long long v) { h = (h ^ static_cast<std::size_t>(v)) * 1099511628211ULL; };
  for (long long v : m_) mix(v);
  for (long long v : t_) mix(v);
  return h;
}

CoxElement operator*(const CoxElement& a, const CoxElement& b) {
  require(a.group_ && a.group_ == b.group_, ErrorKind::InvalidArgument, "elements of different groups");
  const std::size_t n = a.t_.size();
  IntVec t = mat_vec(a.m_, b.t_, n);
  for (std::size_t i = 0; i < n; ++i) t[i] += a.t_[i];
  return CoxElement(a.group_, mat_mul(a.m_, b.m_, n), std::move(t));
}

// ---- CoxBall ---------------------------------------------------------------------------------------------

CoxBall::CoxBall(GroupPtr g, std::size_t radius) : group_(std::move(g)), radius_(radius) {
  const std::size_t gens = group_->generator_count();
  elements_.push_back(group_->identity());
  lengths_.push_back(0);
  index_.emplace(elements_[0], 0);
  std::size_t layer_begin = 0;
  for (std::size_t len = 1; len <= radius_; ++len) {
    const std::size_t layer_end = elements_.size();
    for (std::size_t x = layer_begin; x < layer_end; ++x)
      for (std::size_t s = 0; s < gens; ++s) {
        if (elements_[x].is_left_descent(s)) continue;
        CoxElement y = group_->generator(s) * elements_[x];
        if (index_.count(y)) continue;
        index_.emplace(y, elements_.size());
        elements_.push_back(std::move(y));
        lengths_.push_back(len);
      }
    layer_begin = layer_end;
    if (layer_begin == elements_.size()) break;
  }

  const std::size_t n = elements_.size();
  left_.assign(n * gens, npos);
  right_.assign(n * gens, npos);
  exhausts_ = true;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t s = 0; s < gens; ++s) {
      if (auto it = index_.find(group_->generator(s) * elements_[x]); it != index_.end()) left_[x * gens + s] = it->second;
      else exhausts_ = false;
      if (auto it = index_.find(elements_[x] * group_->generator(s)); it != index_.end()) right_[x * gens + s] = it->second;
    }

  // x <= w: pick s with sw < w; then x <= w iff sx <= sw when sx < x, and x <= sw otherwise.
  leq_.assign(n * n, 0);
  leq_[0] = 1;
  auto shorter = [&](std::size_t s, std::size_t x) {
    const std::size_t sx = left_[x * gens + s];
    return sx != npos && lengths_[sx] < lengths_[x];
  };
  for (std::size_t w = 1; w < n; ++w) {
    std::size_t s = 0;
    while (!shorter(s, w)) ++s;
    const std::size_t v = left_[w * gens + s];
    for (std::size_t x = 0; x < n; ++x) {
      if (lengths_[x] > lengths_[w]) continue;
      if (x == w) {
        leq_[x * n + w] = 1;
        continue;
      }
      leq_[x * n + w] = shorter(s, x) ? leq_[left_[x * gens + s] * n + v] : leq_[x * n + v];
    }
  }
}

std::optional<std::size_t> CoxBall::find(const CoxElement& x) const {
  auto it = index_.find(x);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> CoxBall::left_mult(std::size_t s, std::size_t x) const {
  const std::size_t v = left_[x * group_->generator_count() + s];
  if (v == npos) return std::nullopt;
  return v;
}

std::optional<std::size_t> CoxBall::right_mult(std::size_t x, std::size_t s) const {
  const std::size_t v = right_[x * group_->generator_count() + s];
  if (v == npos) return std::nullopt;
  return v;
}

std::vector<std::pair<std::size_t, std::size_t>> CoxBall::covers() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t x = 0; x < size(); ++x)
    for (std::size_t w = 0; w < size(); ++w)
      if (lengths_[w] == lengths_[x] + 1 && bruhat_leq(x, w)) out.emplace_back(x, w);
  return out;
}

// ---- cosets ----------------------------------------------------------------------------------------------

std::vector<CosetRep> coset_reps(const CoxBall& ball, const std::vector<std::size_t>& J, Side side,
                                 Extremal extremal) {
  check_subset(*ball.group(), J);
  std::vector<CosetRep> out;
  for (std::size_t x = 0; x < ball.size(); ++x) {
    CosetRep rep;
    rep.element = x;
    for (std::size_t s : J) {
      // A shorter neighbour always lies in the ball, so a missing one is longer.
      const auto y = side == Side::Left ? ball.left_mult(s, x) : ball.right_mult(x, s);
      if (y && ball.length(*y) < ball.length(x)) rep.certificate.push_back(s);
    }
    const bool keep = extremal == Extremal::Min ? rep.certificate.empty() : rep.certificate.size() == J.size();
    if (keep) out.push_back(std::move(rep));
  }
  return out;
}

std::vector<CoxElement> parabolic_subgroup(const GroupPtr& g, const std::vector<std::size_t>& J) {
  check_subset(*g, J);
  std::vector<CoxElement> out = {g->identity()};
  std::unordered_set<CoxElement, CoxElementHash> seen(out.begin(), out.end());
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t s : J) {
      CoxElement y = g->generator(s) * out[i];
      if (seen.insert(y).second) out.push_back(std::move(y));
    }
  return out;
}

CoxElement longest_element(const GroupPtr& g, const std::vector<std::size_t>& J) {
  check_subset(*g, J);
  CoxElement w = g->identity();
  for (;;) {
    auto it = std::find_if(J.begin(), J.end(), [&](std::size_t s) { return !w.is_right_descent(s); });
    if (it == J.end()) return w;
    w = w * g->generator(*it);
  }
}

std::vector<DoubleCoset> regular_double_cosets(const CoxBall& ball, const std::vector<std::size_t>& J1,
                                               const std::vector<std::size_t>& J2) {
  const GroupPtr& g = ball.group();
  const auto w1 = parabolic_subgroup(g, J1);
  const auto w2 = parabolic_subgroup(g, J2);
  const std::unordered_set<CoxElement, CoxElementHash> in_w2(w2.begin(), w2.end());
  const CoxElement long1 = longest_element(g, J1), long2 = longest_element(g, J2);
  const auto mins = coset_reps(ball, J1, Side::Left, Extremal::Min);
  const auto mins_right = coset_reps(ball, J2, Side::Right, Extremal::Min);
  std::vector<char> right_ok(ball.size(), 0);
  for (const auto& r : mins_right) right_ok[r.element] = 1;

  std::vector<DoubleCoset> out;
  for (const auto& r : mins) {
    if (!right_ok[r.element]) continue;
    const CoxElement& d = ball.element(r.element);
    const CoxElement dinv = d.inverse();
    std::size_t meet = 0;
    for (const auto& u : w1)
      if (in_w2.count(dinv * u * d)) ++meet;
    DoubleCoset c;
    c.min_rep = d;
    c.regular = meet == 1;
    c.size = w1.size() * w2.size() / meet;
    if (c.regular) {
      c.max_rep = long1 * d * long2;
      require(c.max_rep.length() == long1.length() + d.length() + long2.length(), ErrorKind::Internal,
              "lengths do not add for the maximal representative of a regular double coset");
    } else {
      c.max_rep = d;
      std::size_t best = d.length();
      for (const auto& u : w1)
        for (const auto& v : w2) {
          CoxElement x = u * d * v;
          const std::size_t len = x.length();
          if (len > best) {
            best = len;
            c.max_rep = std::move(x);
          }
        }
    }
    out.push_back(std::move(c));
  }
  return out;
}

CoxElement psi(const CoxElement& x, const std::vector<std::size_t>& mu, const std::vector<std::size_t>& nu) {
  const GroupPtr& g = x.group();
  return longest_element(g, mu) * x.inverse() * longest_element(g, nu);
}

bool in_parabolic_singular(const CoxElement& x, const std::vector<std::size_t>& mu, const std::vector<std::size_t>& nu,
                           Sign sign) {
  // I_J^min / I_J^max: extremal in the coset z W_J, so the conditions are on right descents of z and on
  // left descents of z^-1.
  const GroupPtr& g = x.group();
  if (sign == Sign::Minus) {
    const CoxElement z = x * longest_element(g, mu);
    for (std::size_t s : nu)
      if (!z.is_left_descent(s)) return false;
    for (std::size_t s : mu)
      if (z.is_right_descent(s)) return false;
    return true;
  }
  const CoxElement z = x * longest_element(g, nu);
  for (std::size_t s : mu)
    if (z.is_left_descent(s)) return false;
  for (std::size_t s : nu)
    if (!z.is_right_descent(s)) return false;
  return true;
}

// ---- posets ----------------------------------------------------------------------------------------------

std::optional<std::size_t> CoxPoset::position(const CoxElement& x) const {
  for (std::size_t i = 0; i < elements.size(); ++i)
    if (elements[i] == x) return i;
  return std::nullopt;
}

namespace {

CoxPoset make_poset(const CoxBall& ball, std::vector<std::size_t> members, bool opposite) {
  std::sort(members.begin(), members.end());
  CoxPoset p;
  p.group = ball.group();
  p.opposite = opposite;
  p.window_complete = ball.exhausts_group();
  p.ball_index = members;
  std::vector<std::pair<std::size_t, std::size_t>> rel;
  for (std::size_t i = 0; i < members.size(); ++i) {
    p.elements.push_back(ball.element(members[i]));
    for (std::size_t j = 0; j < members.size(); ++j)
      if (i != j && ball.bruhat_leq(members[i], members[j]))
        rel.push_back(opposite ? std::make_pair(j, i) : std::make_pair(i, j));
  }
  p.order = qhk::WeightPoset::from_relations(members.size(), rel);
  return p;
}

CoxPoset sub_poset(const CoxPoset& p, const std::vector<std::size_t>& keep) {
  CoxPoset q;
  q.group = p.group;
  q.opposite = p.opposite;
  q.window_complete = p.window_complete;
  std::vector<std::pair<std::size_t, std::size_t>> rel;
  for (std::size_t a = 0; a < keep.size(); ++a) {
    q.elements.push_back(p.elements[keep[a]]);
    q.ball_index.push_back(p.ball_index[keep[a]]);
    for (std::size_t b = 0; b < keep.size(); ++b)
      if (p.order.less(keep[a], keep[b])) rel.emplace_back(a, b);
  }
  q.order = qhk::WeightPoset::from_relations(keep.size(), rel);
  return q;
}

CoxPoset directed_set(const CoxPoset& p, const CoxElement& w, bool below) {
  const auto pos = p.position(w);
  require(pos.has_value(), ErrorKind::ElementNotInPoset, w.to_string() + " is not in the poset");
  // Below in Bruhat order is finite and lies in the ball; above needs the whole group.
  const bool upward = below == p.opposite;
  require(!upward || p.window_complete, ErrorKind::UncertifiedAtRadius,
          "the set runs upward in Bruhat order and the ball does not exhaust the group");
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < p.elements.size(); ++i)
    if (below ? p.order.leq(i, *pos) : p.order.leq(*pos, i)) keep.push_back(i);
  return sub_poset(p, keep);
}

}  // namespace

CoxPoset parabolic_singular_posets(const CoxBall& ball, const std::vector<std::size_t>& mu,
                                   const std::vector<std::size_t>& nu, Sign sign) {
  std::set<std::size_t> by_cosets, by_descents;
  if (sign == Sign::Minus) {
    for (const auto& c : regular_double_cosets(ball, nu, mu))
      if (c.regular)
        if (auto i = ball.find(c.max_rep)) by_cosets.insert(*i);
  } else {
    for (const auto& c : regular_double_cosets(ball, mu, nu))
      if (c.regular) by_cosets.insert(*ball.find(c.min_rep));
  }
  for (std::size_t x = 0; x < ball.size(); ++x)
    if (in_parabolic_singular(ball.element(x), mu, nu, sign)) by_descents.insert(x);
  if (by_cosets != by_descents) {
    std::vector<std::size_t> diff;
    std::set_symmetric_difference(by_cosets.begin(), by_cosets.end(), by_descents.begin(), by_descents.end(),
                                  std::back_inserter(diff));
    fail(ErrorKind::ConventionMismatch, "double coset and coset descriptions disagree at " +
                                            ball.element(diff.front()).to_string() + " (" +
                                            std::to_string(diff.size()) + " elements differ)");
  }
  return make_poset(ball, {by_cosets.begin(), by_cosets.end()}, sign == Sign::Plus);
}

CoxPoset bruhat_poset(const CoxBall& ball, bool opposite) {
  std::vector<std::size_t> all(ball.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return make_poset(ball, all, opposite);
}

CoxPoset poset_ideal(const CoxPoset& p, const CoxElement& w) { return directed_set(p, w, true); }
CoxPoset poset_coideal(const CoxPoset& p, const CoxElement& w) { return directed_set(p, w, false); }

std::string edge_list(const CoxPoset& p) {
  std::string out;
  for (auto [a, b] : p.order.covers()) out += p.elements[a].to_string() + " " + p.elements[b].to_string() + "\n";
  return out;
}

}  // namespace gradecert::weyl
