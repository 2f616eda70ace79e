#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "borel/lie.hpp"
#include "borel/pbw.hpp"
#include "borel/poly.hpp"

namespace borel {

inline constexpr std::size_t kDefaultScaleGuard = 50000;

/// Guard on the number of monomials (or PBW words) a solve may use.
/// BOREL_SCALE_GUARD overrides the default.
std::size_t scale_guard();

/// Degree-d slice of an invariant subspace of S(algebra), written in S(gl_n).
/// For b the Cartan coordinates eps(i,i) appear as e_ii - e_nn.
struct GradedSpace {
  int n = 0;
  Characteristic characteristic = 0;
  Algebra algebra = Algebra::g;
  Subalgebra acting = Subalgebra::g;
  int degree = 0;
  std::vector<Poly> basis;

  std::size_t dimension() const { return basis.size(); }
};

/// Homogeneous degree-d monomials in the algebra's coordinates, ascending.
std::vector<Monomial> degree_monomials(int n, Algebra algebra, int d);

/// Kernel of f -> ad x(f) over every basis x of `acting`, on degree-d
/// polynomials in the algebra's variables. Throws TooLarge.
GradedSpace invariant_space(int n, Characteristic p, Algebra algebra, Subalgebra acting, int d,
                            std::size_t guard = scale_guard());

struct WeightSpace {
  Weight weight;
  GradedSpace space;
};

struct SemiInvariantSplit {
  GradedSpace n_invariants;
  std::vector<WeightSpace> pieces;

  std::size_t pieces_dimension() const;
};

/// S(algebra)^n in degree d split into simultaneous eigenspaces of the
/// diagonal part; each piece is solved independently of the split.
SemiInvariantSplit semiinvariant_space(int n, Characteristic p, int d, Algebra algebra = Algebra::g,
                                       std::size_t guard = scale_guard());

/// Basis of {u in U_d : [x,u] = 0 for every basis letter x}.
std::vector<PBWElem> center_space_U(int n, Characteristic p, int d, Algebra algebra = Algebra::g,
                                    std::size_t guard = scale_guard());

/// True when f is a linear combination of `basis`.
bool in_span(const std::vector<Poly>& basis, const Poly& f);

/// Coefficients of prod 1/(1-t^deg) up to t^max_degree.
std::vector<std::size_t> free_algebra_dims(const std::vector<int>& degrees, int max_degree);
/// Hilbert function of S_p(g)[c0] tensored with span{prod_k c(k,l_k)}: a
/// free S_p(g)-module with basis c0^a prod_k c(k,l_k), a, l_k in 0..p-1,
/// where c(k,0) stands for 1.
std::vector<std::size_t> center_module_dims(int n, unsigned p, int max_degree);

enum class JacobianKind { center, center_variant, semicenter, semicenter_variant };
std::string to_string(JacobianKind kind);

/// Polynomials phi of R = S_p(g)[t...] in u-coordinates (u_ij standing for
/// e_ij^p and sharing its VarId) and the ordered variables x.
struct JacobianSpec {
  JacobianKind which = JacobianKind::center;
  int n = 0;
  unsigned p = 0;
  int k = 0;  ///< replaced block for the variants
  std::vector<std::string> phi_names;
  std::vector<Poly> phi;
  std::vector<VarId> x;
};

/// Throws UsageError for p = 0 or out-of-range k.
JacobianSpec make_jacobian_spec(JacobianKind which, int n, unsigned p, int k = 0);

struct JacobianOutcome {
  bool holds = false;
  Poly det;
  std::string detail;
};

/// Determinant of d(phi)/dx compared with the closed form of `which`:
///  center:             -prod_k C(k)^{2p(p-1)}
///  center_variant:     det + C(k-1)^{p(2p-1)} M(k)^{2p(p-2)} T(k)^p divisible by C(k)^p
///  semicenter:         +-prod_{k<h} C(k)^{2p} C(h)^{ip}, i = 1 (n odd) or 2 (n even)
///  semicenter_variant: +-prod_{l<k} C(l)^{2p} T_k(k,k+1)^{ap} prod_{k<l<h} C(l)^{2p} C(h)^{bp}
///                      for some a, b in {1,2}
/// Closed forms are pushed to u-coordinates with frobenius_coords.
JacobianOutcome jacobian_check(const JacobianSpec& spec, std::size_t guard = scale_guard());

enum class Status { pass, fail, skipped };
std::string to_string(Status s);

/// One line of a verification report.
struct CheckResult {
  std::string check;
  nlohmann::ordered_json params;
  Status status = Status::pass;
  std::string detail;
};
nlohmann::ordered_json to_json(const CheckResult& r);

/// Poisson-bracket separating facts: T-minor triangularity on the upper
/// diagonals, the C(k)/e_kk brackets, and the annihilation facts for
/// ad e_{n-k+1,k}. Anti-diagonal and lower positions have no minor inside
/// the quantified index range; they are reported as skipped with the raw
/// S-minor bracket attached.
std::vector<CheckResult> separating_checks(int n, Characteristic p);

/// Region 1..6 of an upper position (s,t), s < t, relative to block k:
///   1: s < t <= k             2: s <= k < t <= n-k      3: s <= k, t > n-k
///   4: k < s < t <= n-k       5: k < s <= n-k < t       6: n-k < s < t
int region_of(int n, int k, int s, int t);

/// ad e_{s,t} of T_k(i,j), T(k), D(k), C(k) and M(k), and ad e_{s,s} of the
/// same, compared symbolically with the case tables, one entry per
/// (object, k, region). Covers k = 1..h.
std::vector<CheckResult> region_table_checks(int n, Characteristic p);

/// Coefficient-wise reduction Q -> F_p. Throws NotPIntegral.
Poly rho_p_reduce(const Poly& f, Characteristic p);

}  // namespace borel
