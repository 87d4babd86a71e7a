#include "gradecert/exactla/scalar.hpp"

#include <charconv>
#include <limits>
#include <numeric>

namespace gradecert {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::NonAssociative: return "NonAssociative";
    case ErrorKind::GradingViolation: return "GradingViolation";
    case ErrorKind::BadUnit: return "BadUnit";
    case ErrorKind::BadIdempotents: return "BadIdempotents";
    case ErrorKind::NotFiniteDimensional: return "NotFiniteDimensional";
    case ErrorKind::RadicalUnavailable: return "RadicalUnavailable";
    case ErrorKind::NotSplit: return "NotSplit";
    case ErrorKind::IdempotentsRequired: return "IdempotentsRequired";
    case ErrorKind::NotQuasiHereditary: return "NotQuasiHereditary";
    case ErrorKind::A0NotQuasiHereditary: return "A0NotQuasiHereditary";
    case ErrorKind::TightnessRequired: return "TightnessRequired";
    case ErrorKind::NotIdempotent: return "NotIdempotent";
    case ErrorKind::NotFull: return "NotFull";
    case ErrorKind::NotGradeZero: return "NotGradeZero";
    case ErrorKind::UncertifiedAtRadius: return "UncertifiedAtRadius";
    case ErrorKind::ConventionMismatch: return "ConventionMismatch";
    case ErrorKind::ElementNotInPoset: return "ElementNotInPoset";
    case ErrorKind::IntervalEscapesBall: return "IntervalEscapesBall";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace gradecert

namespace gradecert::la {

namespace {

__extension__ typedef __int128 i128;

constexpr i128 kMax = std::numeric_limits<std::int64_t>::max();
constexpr i128 kMin = std::numeric_limits<std::int64_t>::min();

bool fits(i128 v) { return v <= kMax && v > kMin; }

i128 abs128(i128 v) { return v < 0 ? -v : v; }

i128 gcd128(i128 a, i128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  b %= p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

std::int64_t reduce_mod(const mpz_class& z, std::uint32_t p) {
  mpz_class r = z % p;
  if (r < 0) r += p;
  return static_cast<std::int64_t>(r.get_ui());
}

mpq_class small_to_mpq(std::int64_t n, std::int64_t d) {
  mpq_class q(mpz_class(static_cast<long>(n)), mpz_class(static_cast<long>(d)));
  q.canonicalize();
  return q;
}

}  // namespace

Field Field::prime(std::uint32_t p) {
  require(is_prime(p), ErrorKind::InvalidArgument, "field characteristic " + std::to_string(p) + " is not prime");
  return Field(p);
}

Field Field::parse(std::string_view text) {
  if (text == "Q") return rationals();
  if (text.substr(0, 3) == "Fp:") {
    std::uint32_t p = 0;
    auto body = text.substr(3);
    auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), p);
    if (ec == std::errc() && ptr == body.data() + body.size()) return prime(p);
  }
  fail(ErrorKind::Parse, "unknown field '" + std::string(text) + "' (expected \"Q\" or \"Fp:<p>\")");
}

std::string Field::to_string() const { return p_ == 0 ? "Q" : "Fp:" + std::to_string(p_); }

Scalar::Scalar(Field f, long long value) : p_(f.characteristic()) {
  if (p_ == 0) {
    num_ = value;
  } else {
    long long r = value % static_cast<long long>(p_);
    if (r < 0) r += p_;
    num_ = r;
  }
}

Scalar Scalar::from_mpq(Field f, const mpq_class& q) {
  Scalar s(f);
  if (f.is_rational()) {
    s.set_big(q);
    return s;
  }
  std::int64_t n = reduce_mod(q.get_num(), s.p_);
  std::int64_t d = reduce_mod(q.get_den(), s.p_);
  require(d != 0, ErrorKind::DivisionByZero, "denominator vanishes modulo " + std::to_string(s.p_));
  s.num_ = static_cast<std::int64_t>(static_cast<std::uint64_t>(n) * pow_mod(d, s.p_ - 2, s.p_) % s.p_);
  return s;
}

Scalar Scalar::parse(Field f, std::string_view text) {
  std::string t(text);
  while (!t.empty() && t.back() == ' ') t.pop_back();
  while (!t.empty() && t.front() == ' ') t.erase(t.begin());
  if (!t.empty() && t.front() == '+') t.erase(t.begin());
  mpq_class q;
  bool ok = !t.empty() && q.set_str(t, 10) == 0;
  if (ok && q.get_den() == 0) ok = false;
  require(ok, ErrorKind::Parse, "cannot parse scalar '" + std::string(text) + "'");
  q.canonicalize();
  return from_mpq(f, q);
}

void Scalar::set_big(mpq_class q) {
  if (q.get_num().fits_slong_p() && q.get_den().fits_slong_p() && q.get_num() != std::numeric_limits<long>::min()) {
    num_ = q.get_num().get_si();
    den_ = q.get_den().get_si();
    big_.reset();
  } else {
    num_ = 0;
    den_ = 1;
    big_ = std::make_shared<const mpq_class>(std::move(q));
  }
}

bool Scalar::is_integer() const {
  if (p_ != 0) return true;
  if (big_) return big_->get_den() == 1;
  return den_ == 1;
}

mpq_class Scalar::to_mpq() const {
  if (big_) return *big_;
  return small_to_mpq(num_, den_);
}

std::string Scalar::to_string() const {
  if (p_ != 0) return std::to_string(num_);
  if (big_) return big_->get_str();
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Scalar Scalar::inverse() const {
  require(!is_zero(), ErrorKind::DivisionByZero, "inverse of zero");
  Scalar r(field());
  if (p_ != 0) {
    r.num_ = static_cast<std::int64_t>(pow_mod(static_cast<std::uint64_t>(num_), p_ - 2, p_));
    return r;
  }
  if (big_) {
    r.set_big(1 / *big_);
    return r;
  }
  if (num_ < 0) {
    if (num_ == std::numeric_limits<std::int64_t>::min()) {
      r.set_big(1 / to_mpq());
      return r;
    }
    r.num_ = -den_;
    r.den_ = -num_;
  } else {
    r.num_ = den_;
    r.den_ = num_;
  }
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  check_same(o);
  if (p_ != 0) {
    std::uint64_t s = static_cast<std::uint64_t>(num_) + static_cast<std::uint64_t>(o.num_);
    if (s >= p_) s -= p_;
    num_ = static_cast<std::int64_t>(s);
    return *this;
  }
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (!big_ && !o.big_) {
    if (den_ == 1 && o.den_ == 1) {
      std::int64_t s;
      if (!__builtin_add_overflow(num_, o.num_, &s) && s != std::numeric_limits<std::int64_t>::min()) {
        num_ = s;
        return *this;
      }
    } else {
      i128 n = static_cast<i128>(num_) * o.den_ + static_cast<i128>(o.num_) * den_;
      i128 d = static_cast<i128>(den_) * o.den_;
      i128 g = gcd128(n, d);
      if (g > 1) {
        n /= g;
        d /= g;
      }
      if (n == 0) d = 1;
      if (fits(n) && fits(d)) {
        num_ = static_cast<std::int64_t>(n);
        den_ = static_cast<std::int64_t>(d);
        return *this;
      }
    }
  }
  set_big(to_mpq() + o.to_mpq());
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
  check_same(o);
  if (p_ != 0) {
    num_ = static_cast<std::int64_t>(static_cast<std::uint64_t>(num_) * static_cast<std::uint64_t>(o.num_) % p_);
    return *this;
  }
  if (is_zero() || o.is_zero()) {
    num_ = 0;
    den_ = 1;
    big_.reset();
    return *this;
  }
  if (!big_ && !o.big_) {
    i128 n = static_cast<i128>(num_) * o.num_;
    i128 d = static_cast<i128>(den_) * o.den_;
    if (d != 1) {
      i128 g = gcd128(n, d);
      if (g > 1) {
        n /= g;
        d /= g;
      }
    }
    if (fits(n) && fits(d)) {
      num_ = static_cast<std::int64_t>(n);
      den_ = static_cast<std::int64_t>(d);
      return *this;
    }
  }
  set_big(to_mpq() * o.to_mpq());
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  check_same(o);
  return *this *= o.inverse();
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  if (p_ != 0) {
    if (num_ != 0) r.num_ = static_cast<std::int64_t>(p_) - num_;
    return r;
  }
  if (big_) {
    r.set_big(-*big_);
    return r;
  }
  r.num_ = -num_;  // num_ is never INT64_MIN on the fast path
  return r;
}

void Scalar::add_product(const Scalar& b, const Scalar& c) {
  if (p_ != 0 && b.p_ == p_ && c.p_ == p_) {
    std::uint64_t prod = static_cast<std::uint64_t>(b.num_) * static_cast<std::uint64_t>(c.num_) % p_;
    std::uint64_t s = static_cast<std::uint64_t>(num_) + prod;
    if (s >= p_) s -= p_;
    num_ = static_cast<std::int64_t>(s);
    return;
  }
  *this += b * c;
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.p_ != b.p_) return false;
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  return false;  // normalized: a value is big only when it does not fit the fast path
}

Vector zero_vector(Field f, std::size_t n) { return Vector(n, Scalar(f)); }

Vector unit_vector(Field f, std::size_t n, std::size_t i) {
  Vector v = zero_vector(f, n);
  v.at(i) = Scalar::one(f);
  return v;
}

bool is_zero(const Vector& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

Vector add(const Vector& a, const Vector& b) {
  require(a.size() == b.size(), ErrorKind::ShapeMismatch, "vector sizes differ");
  Vector r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

Vector sub(const Vector& a, const Vector& b) {
  require(a.size() == b.size(), ErrorKind::ShapeMismatch, "vector sizes differ");
  Vector r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

Vector scale(const Scalar& s, const Vector& v) {
  Vector r = v;
  for (auto& x : r) x *= s;
  return r;
}

void axpy(Vector& v, const Scalar& s, const Vector& w) {
  require(v.size() == w.size(), ErrorKind::ShapeMismatch, "vector sizes differ");
  if (s.is_zero()) return;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!w[i].is_zero()) v[i].add_product(s, w[i]);
}

Scalar dot(const Vector& a, const Vector& b) {
  require(a.size() == b.size() && !a.empty(), ErrorKind::ShapeMismatch, "dot of mismatched vectors");
  Scalar r(a[0].field());
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero() && !b[i].is_zero()) r.add_product(a[i], b[i]);
  return r;
}

std::string to_string(const Vector& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += v[i].to_string();
  }
  return s + "]";
}

}  // namespace gradecert::la
