#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace borel {

/// Characteristic of the ground field: 0 for Q, otherwise a prime p.
using Characteristic = std::uint32_t;

bool is_prime(std::uint64_t p);

/// Exact element of Q or F_p.
///
/// The characteristic travels with the value. Binary operations between
/// scalars of different characteristic throw UsageError. In characteristic
/// p the value is kept as a residue in [0, p); in characteristic 0 it is a
/// canonical GMP rational.
class FieldScalar {
 public:
  FieldScalar() = default;
  FieldScalar(Characteristic p, long value);
  FieldScalar(Characteristic p, const mpq_class& value);

  static FieldScalar zero(Characteristic p) { return FieldScalar(p, 0L); }
  static FieldScalar one(Characteristic p) { return FieldScalar(p, 1L); }
  /// Parses "a" or "a/b". In characteristic p the fraction is reduced mod p.
  static FieldScalar parse(Characteristic p, std::string_view text);

  Characteristic characteristic() const { return p_; }
  bool is_zero() const;
  bool is_one() const;

  /// Residue in [0, p). Only meaningful in characteristic p.
  std::uint64_t residue() const { return r_; }
  /// Rational value. Only meaningful in characteristic 0.
  const mpq_class& rational() const { return q_; }

  FieldScalar operator-() const;
  FieldScalar& operator+=(const FieldScalar& o);
  FieldScalar& operator-=(const FieldScalar& o);
  FieldScalar& operator*=(const FieldScalar& o);
  FieldScalar& operator/=(const FieldScalar& o);
  FieldScalar inverse() const;
  FieldScalar pow(std::uint64_t e) const;

  friend FieldScalar operator+(FieldScalar a, const FieldScalar& b) { return a += b; }
  friend FieldScalar operator-(FieldScalar a, const FieldScalar& b) { return a -= b; }
  friend FieldScalar operator*(FieldScalar a, const FieldScalar& b) { return a *= b; }
  friend FieldScalar operator/(FieldScalar a, const FieldScalar& b) { return a /= b; }

  friend bool operator==(const FieldScalar& a, const FieldScalar& b);

  /// Canonical text: integer residue for F_p, "a" or "a/b" for Q.
  std::string to_string() const;

 private:
  void check_same(const FieldScalar& o) const;

  Characteristic p_ = 0;
  std::uint64_t r_ = 0;
  mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const FieldScalar& s);

}  // namespace borel
