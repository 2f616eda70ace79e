#include "borel/scalar.hpp"

#include <ostream>

#include "borel/errors.hpp"

namespace borel {

namespace {

std::uint64_t mod_reduce(const mpz_class& z, Characteristic p) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), p);
  return r.get_ui();
}

std::uint64_t mod_pow(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
  std::uint64_t acc = 1 % p;
  b %= p;
  while (e != 0) {
    if (e & 1U) acc = acc * b % p;
    b = b * b % p;
    e >>= 1U;
  }
  return acc;
}

}  // namespace

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

FieldScalar::FieldScalar(Characteristic p, long value) : p_(p) {
  if (p_ == 0) {
    q_ = value;
  } else {
    long m = value % static_cast<long>(p_);
    if (m < 0) m += static_cast<long>(p_);
    r_ = static_cast<std::uint64_t>(m);
  }
}

FieldScalar::FieldScalar(Characteristic p, const mpq_class& value) : p_(p) {
  if (p_ == 0) {
    q_ = value;
    q_.canonicalize();
    return;
  }
  const std::uint64_t den = mod_reduce(value.get_den(), p_);
  if (den == 0) {
    throw NotPIntegral("denominator " + value.get_den().get_str() + " is divisible by " +
                       std::to_string(p_));
  }
  const std::uint64_t num = mod_reduce(value.get_num(), p_);
  r_ = num * mod_pow(den, p_ - 2, p_) % p_;
}

FieldScalar FieldScalar::parse(Characteristic p, std::string_view text) {
  mpq_class q;
  if (q.set_str(std::string(text), 10) != 0) {
    throw UsageError("malformed scalar '" + std::string(text) + "'");
  }
  if (q.get_den() == 0) throw UsageError("zero denominator in '" + std::string(text) + "'");
  q.canonicalize();
  return FieldScalar(p, q);
}

bool FieldScalar::is_zero() const { return p_ == 0 ? sgn(q_) == 0 : r_ == 0; }

bool FieldScalar::is_one() const { return p_ == 0 ? q_ == 1 : r_ == 1 % p_; }

void FieldScalar::check_same(const FieldScalar& o) const {
  if (p_ != o.p_) {
    throw UsageError("characteristic mismatch: " + std::to_string(p_) + " vs " +
                     std::to_string(o.p_));
  }
}

FieldScalar FieldScalar::operator-() const {
  FieldScalar out = *this;
  if (p_ == 0) {
    out.q_ = -q_;
  } else {
    out.r_ = r_ == 0 ? 0 : p_ - r_;
  }
  return out;
}

FieldScalar& FieldScalar::operator+=(const FieldScalar& o) {
  check_same(o);
  if (p_ == 0) {
    q_ += o.q_;
  } else {
    r_ = (r_ + o.r_) % p_;
  }
  return *this;
}

FieldScalar& FieldScalar::operator-=(const FieldScalar& o) {
  check_same(o);
  if (p_ == 0) {
    q_ -= o.q_;
  } else {
    r_ = (r_ + p_ - o.r_) % p_;
  }
  return *this;
}

FieldScalar& FieldScalar::operator*=(const FieldScalar& o) {
  check_same(o);
  if (p_ == 0) {
    q_ *= o.q_;
  } else {
    r_ = r_ * o.r_ % p_;
  }
  return *this;
}

FieldScalar FieldScalar::inverse() const {
  if (is_zero()) throw UsageError("division by zero");
  FieldScalar out = *this;
  if (p_ == 0) {
    out.q_ = 1 / q_;
  } else {
    out.r_ = mod_pow(r_, p_ - 2, p_);
  }
  return out;
}

FieldScalar& FieldScalar::operator/=(const FieldScalar& o) {
  check_same(o);
  return *this *= o.inverse();
}

FieldScalar FieldScalar::pow(std::uint64_t e) const {
  FieldScalar acc = one(p_);
  FieldScalar b = *this;
  while (e != 0) {
    if (e & 1U) acc *= b;
    b *= b;
    e >>= 1U;
  }
  return acc;
}

bool operator==(const FieldScalar& a, const FieldScalar& b) {
  if (a.p_ != b.p_) return false;
  return a.p_ == 0 ? a.q_ == b.q_ : a.r_ == b.r_;
}

std::string FieldScalar::to_string() const {
  return p_ == 0 ? q_.get_str() : std::to_string(r_);
}

std::ostream& operator<<(std::ostream& os, const FieldScalar& s) { return os << s.to_string(); }

}  // namespace borel
