#pragma once

#include <map>
#include <string>
#include <vector>

#include "borel/poly.hpp"

namespace borel {

/// The two Borel algebras: g (upper triangular in gl_n) and b (its trace-zero
/// part, a Borel of sl_n).
enum class Algebra { g, b };

/// Acting subalgebras used by the invariant computations.
enum class Subalgebra { g, b, n };

std::string to_string(Algebra a);
std::string to_string(Subalgebra s);

/// Finite linear combination of matrix units e_{i,j} in gl_n.
class LieElem {
 public:
  LieElem(int n, Characteristic p);

  static LieElem unit(int n, Characteristic p, int i, int j);
  /// eps(i,i) = e_{i,i} - e_{n,n}, the Cartan basis of b.
  static LieElem epsilon(int n, Characteristic p, int i);

  int n() const { return n_; }
  Characteristic characteristic() const { return p_; }
  const std::map<VarId, FieldScalar>& coefficients() const { return coeffs_; }
  FieldScalar coefficient(int i, int j) const;
  bool is_zero() const { return coeffs_.empty(); }

  void add(int i, int j, const FieldScalar& c);
  LieElem& operator+=(const LieElem& o);
  LieElem& operator-=(const LieElem& o);
  LieElem& operator*=(const FieldScalar& c);
  friend LieElem operator+(LieElem a, const LieElem& b) { return a += b; }
  friend LieElem operator-(LieElem a, const LieElem& b) { return a -= b; }
  friend LieElem operator*(const FieldScalar& c, LieElem a) { return a *= c; }
  friend bool operator==(const LieElem& a, const LieElem& b) {
    return a.n_ == b.n_ && a.p_ == b.p_ && a.coeffs_ == b.coeffs_;
  }

  FieldScalar trace() const;
  bool in_n() const;
  bool in_g() const;
  /// Strictly upper part plus a trace-zero diagonal.
  bool in_b() const;
  bool is_diagonal() const;

  /// The element as a degree-1 polynomial of S(gl_n).
  Poly to_poly() const;
  std::string to_string() const;

 private:
  void check_same(const LieElem& o) const;

  int n_;
  Characteristic p_;
  std::map<VarId, FieldScalar> coeffs_;
};

LieElem bracket(const LieElem& a, const LieElem& b);

/// Ordered basis: g is e_{i,j} (i <= j) row-major; b is eps(1,1..n-1,n-1)
/// followed by the strictly upper units row-major; n is the strictly upper units.
std::vector<LieElem> basis(int n, Characteristic p, Subalgebra s);
std::vector<LieElem> basis(int n, Characteristic p, Algebra a);

/// {e_a, e_b} as a degree-one polynomial.
Poly bracket_variables(VarId a, VarId b, Characteristic p);

/// ad x extended to S(gl_n) as a derivation.
Poly adjoint_apply(const LieElem& x, const Poly& f);

/// Poisson bracket of S(gl_n) extending the Lie bracket on variables.
Poly poisson(const Poly& f, const Poly& g);

/// Linear functional vanishing on the derived algebra, stored on the Cartan
/// basis: e_{i,i} (i = 1..n) for g, eps(i,i) (i = 1..n-1) for b.
struct Weight {
  Algebra algebra = Algebra::g;
  int n = 0;
  std::vector<FieldScalar> values;

  static Weight zero(Algebra a, int n, Characteristic p);

  FieldScalar operator()(const LieElem& x) const;
  bool is_zero() const;
  Weight operator+(const Weight& o) const;
  friend bool operator==(const Weight&, const Weight&) = default;
  std::string to_string() const;
};

/// Weight of a semi-invariant; throws NotSemiInvariant.
Weight weight_of(const Poly& f, Algebra a, int n);

/// c with ad x(f) = c f, if f is an eigenvector of ad x.
std::optional<FieldScalar> eigenvalue(const LieElem& x, const Poly& f);

}  // namespace borel
