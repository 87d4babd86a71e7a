#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "gradecert/error.hpp"

namespace gradecert::la {

/// Base field of a computation: the rationals, or F_p for a prime p.
class Field {
 public:
  constexpr Field() = default;

  static constexpr Field rationals() { return Field(); }
  static Field prime(std::uint32_t p);
  /// Accepts "Q" or "Fp:<p>".
  static Field parse(std::string_view text);

  constexpr bool is_rational() const { return p_ == 0; }
  constexpr std::uint32_t characteristic() const { return p_; }
  std::string to_string() const;

  friend constexpr bool operator==(Field, Field) = default;

 private:
  friend class Scalar;
  explicit constexpr Field(std::uint32_t p) : p_(p) {}
  std::uint32_t p_ = 0;
};

/// Exact field element. Rationals use a machine-word fast path and spill into
/// GMP when a result no longer fits; residues live in [0, p).
class Scalar {
 public:
  Scalar() = default;
  explicit Scalar(Field f) : p_(f.characteristic()) {}
  Scalar(Field f, long long value);

  static Scalar zero(Field f) { return Scalar(f); }
  static Scalar one(Field f) { return Scalar(f, 1); }
  static Scalar from_mpq(Field f, const mpq_class& q);
  /// Parses "n", "-n" or "n/d".
  static Scalar parse(Field f, std::string_view text);

  Field field() const { return Field(p_); }
  std::uint32_t characteristic() const { return p_; }

  bool is_zero() const { return !big_ && num_ == 0; }
  bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }
  bool is_integer() const;

  mpq_class to_mpq() const;
  /// Residue for F_p scalars.
  std::uint64_t residue() const { return static_cast<std::uint64_t>(num_); }
  std::string to_string() const;

  Scalar inverse() const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  Scalar operator-() const;

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  /// a += b * c without temporaries on the fast path.
  void add_product(const Scalar& b, const Scalar& c);

 private:
  void check_same(const Scalar& o) const {
    if (p_ != o.p_) fail(ErrorKind::FieldMismatch, "operands live in different fields");
  }
  void set_big(mpq_class q);
  void normalize_big();

  std::uint32_t p_ = 0;
  // For Q: num_/den_ in lowest terms with den_ > 0 unless big_ is set.
  // For F_p: num_ is the residue and den_ == 1.
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::shared_ptr<const mpq_class> big_;
};

using Vector = std::vector<Scalar>;

Vector zero_vector(Field f, std::size_t n);
Vector unit_vector(Field f, std::size_t n, std::size_t i);
bool is_zero(const Vector& v);
Vector add(const Vector& a, const Vector& b);
Vector sub(const Vector& a, const Vector& b);
Vector scale(const Scalar& s, const Vector& v);
/// v += s * w
void axpy(Vector& v, const Scalar& s, const Vector& w);
Scalar dot(const Vector& a, const Vector& b);
std::string to_string(const Vector& v);

}  // namespace gradecert::la
