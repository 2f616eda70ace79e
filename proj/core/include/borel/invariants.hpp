#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "borel/lie.hpp"
#include "borel/poly.hpp"

namespace borel {

/// h = floor((n - 1) / 2), the number of M(k) / c(k,l) families.
constexpr int h_of(int n) { return (n - 1) / 2; }

enum class GeneratorKind { c0, C, D, T_minor, S_minor, T, M, c_kl, D_B, M_B, c_B_kl };

struct GeneratorId {
  GeneratorKind kind = GeneratorKind::c0;
  int k = 0;
  int l = 0;
  int i = 0;
  int j = 0;

  friend bool operator==(const GeneratorId&, const GeneratorId&) = default;
};

std::string to_string(GeneratorKind kind);
GeneratorKind parse_generator_kind(std::string_view text);
/// e.g. "c_kl(k=1,l=1)".
std::string to_string(const GeneratorId& id);
/// Throws UsageError when id's indices fall outside the ranges valid for (n, p).
void validate(const GeneratorId& id, int n, unsigned p);

/// Outcome of an exact identity check; `detail` names the first differing term.
struct IdentityCheck {
  bool holds = false;
  std::string detail;
};
IdentityCheck compare_polys(const Poly& lhs, const Poly& rhs);

Poly build_c0(int n, Characteristic p);
/// Determinant of the k-th right upper block (rows 1..k, columns n-k+1..n).
Poly build_C(int n, int k, Characteristic p);
LieElem build_D(int n, int k, Characteristic p);
Poly build_T_minor(int n, int k, int i, int j, Characteristic p);
Poly build_S_minor(int n, int k, int i, int j, Characteristic p);
Poly build_T(int n, int k, Characteristic p);
/// M(k) = C(k)D(k) + T(k); the zero polynomial for k = n/2 with n even.
Poly build_M(int n, int k, Characteristic p);

/// Block determinants without the index-range checks, for the separating
/// derivation facts that reach outside the tabulated ranges.
/// Row i of the k-th block replaced by e_{source_row, n-k+1..n}.
Poly block_with_row(int n, int k, int i, int source_row, Characteristic p);
/// Column i of the k-th block replaced by e_{source_row, 1..k}.
Poly block_with_column(int n, int k, int i, int source_row, Characteristic p);

struct CarrySplit {
  int s = 0;  ///< carry, 0 or 1
  int r = 0;  ///< remainder in 0..p-1
};
/// i + j = p*s + r.
CarrySplit rs_decompose(int i, int j, unsigned p);

/// c(k,l) = C(k)^{p-l} M(k)^l with the integer p as exponent parameter,
/// built over the field of characteristic `field` (p itself or 0).
Poly build_c_kl(int n, int k, int l, unsigned p, Characteristic field);
inline Poly build_c_kl(int n, int k, int l, unsigned p) { return build_c_kl(n, k, l, p, p); }

/// c(k,i)c(k,j) == c(k,r)C(k)^{p(1-s)}M(k)^{ps} as polynomials.
IdentityCheck check_relation(int n, int k, int i, int j, unsigned p);

struct CentralDecomposition {
  LieElem trace_zero;
  FieldScalar alpha;
};
/// x = trace_zero + alpha*c0 with alpha = trace(x)/n. Throws NMustBeInvertible.
CentralDecomposition decompose_central(const LieElem& x);

LieElem build_D_B(int n, int k, Characteristic p);
/// alpha = 2k/n, the c0-coefficient of D(k).
FieldScalar central_coefficient(int n, int k, Characteristic p);
/// M_B(k) = C(k)D_B(k) + T(k).
Poly build_M_B(int n, int k, Characteristic p);
Poly build_c_B_kl(int n, int k, int l, unsigned p, Characteristic field);
inline Poly build_c_B_kl(int n, int k, int l, unsigned p) { return build_c_B_kl(n, k, l, p, p); }

/// Sum over i of binom(l,i) alpha^{l-i} c_B(k,i) c0^{l-i}, which reconstructs c(k,l).
Poly expand_c_kl_over_c0(int n, int k, int l, unsigned p);
/// The same sum with c_B(k,i)^i in place of c_B(k,i), as printed in the source.
Poly expand_c_kl_over_c0_printed(int n, int k, int l, unsigned p);

/// Catalog entry point: builds any generator as a polynomial of S(gl_n).
/// D and D_B come back as degree-one polynomials.
Poly build_generator(const GeneratorId& id, int n, unsigned p, Characteristic field);
inline Poly build_generator(const GeneratorId& id, int n, unsigned p) {
  return build_generator(id, n, p, p);
}

/// Every valid generator id for (n, p); c-kinds and B-kinds only when p > 0
/// and (for B-kinds) p does not divide n.
std::vector<GeneratorId> all_generators(int n, unsigned p);

}  // namespace borel
