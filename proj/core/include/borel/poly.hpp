#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "borel/scalar.hpp"

namespace borel {

/// Largest matrix size supported (desk scale).
inline constexpr int kMaxN = 6;
inline constexpr int kMatrixSlots = kMaxN * kMaxN;
inline constexpr int kAuxSlots = 28;
inline constexpr int kSlots = kMatrixSlots + kAuxSlots;

/// A polynomial variable.
///
/// Rows and columns in 1..n name the matrix unit e_{row,col}. Row 0 names an
/// auxiliary variable with index `col` (used for the free variables t of the
/// Jacobian rings); auxiliary variables order after every matrix variable.
struct VarId {
  int row = 1;
  int col = 1;

  static VarId aux(int index) { return {0, index}; }
  static VarId from_slot(int slot);

  bool is_aux() const { return row == 0; }
  bool is_diagonal() const { return row > 0 && row == col; }
  int slot() const;

  friend bool operator==(const VarId&, const VarId&) = default;
  friend auto operator<=>(const VarId& a, const VarId& b) { return a.slot() <=> b.slot(); }
};

std::string to_string(const VarId& v);

/// Exponent vector over the fixed variable universe.
///
/// Ordered graded-lexicographically: total degree first, then lexicographic
/// on slots in row-major order with an earlier variable dominating.
class Monomial {
 public:
  Monomial() = default;
  static Monomial of(VarId v, unsigned exponent = 1);

  unsigned exponent(VarId v) const { return exps_[static_cast<std::size_t>(v.slot())]; }
  unsigned exponent_at(int slot) const { return exps_[static_cast<std::size_t>(slot)]; }
  unsigned degree() const { return degree_; }
  bool is_one() const { return degree_ == 0; }

  void set_exponent(VarId v, unsigned exponent);
  /// Nonzero (variable, exponent) pairs in slot order.
  std::vector<std::pair<VarId, unsigned>> factors() const;

  Monomial operator*(const Monomial& o) const;
  bool divides(const Monomial& o) const;
  /// Requires divides(o); returns o / *this.
  Monomial quotient_of(const Monomial& o) const;

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.degree_ == b.degree_ && a.exps_ == b.exps_;
  }
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b);

 private:
  std::array<std::uint8_t, kSlots> exps_{};
  std::uint16_t degree_ = 0;
};

/// Sparse polynomial with exact coefficients, canonical by construction.
class Poly {
 public:
  using TermMap = std::map<Monomial, FieldScalar>;

  explicit Poly(Characteristic p = 0) : p_(p) {}

  static Poly constant(const FieldScalar& c);
  static Poly constant(Characteristic p, long c) { return constant(FieldScalar(p, c)); }
  static Poly variable(Characteristic p, VarId v);
  static Poly term(const FieldScalar& c, const Monomial& m);

  Characteristic characteristic() const { return p_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  /// Coefficient of m (zero if absent).
  FieldScalar coefficient(const Monomial& m) const;

  /// Largest monomial under the canonical order; requires a nonzero poly.
  const std::pair<const Monomial, FieldScalar>& leading_term() const;
  /// Total degree; -1 for the zero polynomial.
  int degree() const;
  bool is_homogeneous() const;
  bool uses_aux_variables() const;

  void add_term(const Monomial& m, const FieldScalar& c);

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const FieldScalar& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const FieldScalar& c) { return a *= c; }
  friend Poly operator*(const FieldScalar& c, Poly a) { return a *= c; }
  friend bool operator==(const Poly& a, const Poly& b) {
    return a.p_ == b.p_ && a.terms_ == b.terms_;
  }

  /// Human-readable form, largest term first, e.g. "e1,3*e2,4 - e1,4*e2,3".
  std::string to_string() const;

 private:
  void check_same(const Poly& o) const;

  Characteristic p_;
  TermMap terms_;
};

enum class PolyOp { add, mul };

/// Sum or product; throws UsageError on characteristic mismatch.
Poly poly_arith(const Poly& a, const Poly& b, PolyOp op);
Poly poly_pow(const Poly& f, unsigned m);

/// Exact determinant by cofactor expansion memoized on column subsets.
Poly det_poly_matrix(const std::vector<std::vector<Poly>>& m);

/// Images of a derivation on variables.
using DerivationTable = std::map<VarId, Poly>;

/// Leibniz extension of the table to f. Every variable of f must have an image.
Poly apply_derivation(const DerivationTable& d, const Poly& f);
/// Same, with images produced on demand.
Poly apply_derivation(const std::function<Poly(VarId)>& image, const Poly& f);

Poly partial_derivative(const Poly& f, VarId v);

/// Rewrites f, a polynomial in p-th powers of the variables, in the variables
/// u = e^p (same VarIds, exponents divided by p). Throws NotAPthPower.
Poly frobenius_coords(const Poly& f, Characteristic p);

/// Returns q with f = q * g when g divides f exactly.
std::optional<Poly> divide_exact(const Poly& f, const Poly& g);

/// Replaces variables by polynomials; variables missing from the table stay.
Poly substitute(const Poly& f, const std::map<VarId, Poly>& images);

/// Maps every coefficient through `fn` into characteristic `target`.
Poly map_coefficients(const Poly& f, Characteristic target,
                      const std::function<FieldScalar(const FieldScalar&)>& fn);

nlohmann::ordered_json to_json(const Poly& f);
Poly poly_from_json(const nlohmann::json& j);

}  // namespace borel
