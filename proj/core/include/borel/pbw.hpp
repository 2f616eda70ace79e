#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "borel/invariants.hpp"
#include "borel/lie.hpp"
#include "borel/poly.hpp"

namespace borel {

/// A PBW word: nondecreasing basis indices, one char per letter.
using Word = std::string;

/// Words ordered by length, then lexicographically on letters.
struct WordOrder {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

using WordTerms = std::vector<std::pair<Word, FieldScalar>>;

/// Structure data of U(g) or U(b) for a fixed (n, p), plus the memo of
/// word-times-letter normal forms. Instances are shared by the elements
/// they create; the memo is guarded internally.
class PBWAlgebra {
 public:
  static std::shared_ptr<const PBWAlgebra> make(Algebra algebra, int n, Characteristic p);

  Algebra algebra() const { return algebra_; }
  int n() const { return n_; }
  Characteristic characteristic() const { return p_; }
  int dimension() const { return static_cast<int>(basis_.size()); }
  const LieElem& basis_element(int letter) const { return basis_.at(static_cast<std::size_t>(letter)); }
  /// (i, j) label of a letter; for b the Cartan letters are labelled (i, i) meaning eps(i,i).
  std::pair<int, int> label(int letter) const;
  int letter_of(int i, int j) const;
  bool is_cartan(int letter) const;

  /// [a, b] in basis coordinates.
  const std::vector<std::pair<int, FieldScalar>>& bracket(int a, int b) const;
  /// Coordinates of x; throws UsageError if x is outside the algebra.
  std::vector<std::pair<int, FieldScalar>> coordinates(const LieElem& x) const;
  /// Image of a letter in S(gl_n).
  Poly letter_poly(int letter) const;

  /// Normal form of (sorted word) * letter.
  const WordTerms& mul_word_letter(const Word& w, int letter) const;

  bool same_as(const PBWAlgebra& o) const {
    return algebra_ == o.algebra_ && n_ == o.n_ && p_ == o.p_;
  }

  PBWAlgebra(Algebra algebra, int n, Characteristic p);

 private:
  const WordTerms& mul_word_letter_locked(const Word& w, int letter) const;

  Algebra algebra_;
  int n_;
  Characteristic p_;
  std::vector<LieElem> basis_;
  std::vector<std::vector<std::vector<std::pair<int, FieldScalar>>>> structure_;
  mutable std::recursive_mutex memo_mutex_;
  mutable std::unordered_map<std::string, WordTerms> memo_;
};

using AlgebraHandle = std::shared_ptr<const PBWAlgebra>;

/// Element of U(g) or U(b) in PBW normal form.
class PBWElem {
 public:
  using TermMap = std::map<Word, FieldScalar, WordOrder>;

  explicit PBWElem(AlgebraHandle algebra);
  static PBWElem scalar(AlgebraHandle algebra, const FieldScalar& c);
  static PBWElem letter(AlgebraHandle algebra, int letter);

  const PBWAlgebra& algebra() const { return *alg_; }
  const AlgebraHandle& handle() const { return alg_; }
  Characteristic characteristic() const { return alg_->characteristic(); }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Maximal word length; -1 for zero.
  int filtration_degree() const;

  void add_term(const Word& w, const FieldScalar& c);
  PBWElem& operator+=(const PBWElem& o);
  PBWElem& operator-=(const PBWElem& o);
  PBWElem& operator*=(const FieldScalar& c);
  friend PBWElem operator+(PBWElem a, const PBWElem& b) { return a += b; }
  friend PBWElem operator-(PBWElem a, const PBWElem& b) { return a -= b; }
  friend PBWElem operator*(PBWElem a, const FieldScalar& c) { return a *= c; }
  friend PBWElem operator*(const PBWElem& a, const PBWElem& b);
  friend bool operator==(const PBWElem& a, const PBWElem& b);

  std::string to_string() const;

 private:
  void check_same(const PBWElem& o) const;

  AlgebraHandle alg_;
  TermMap terms_;
};

/// Normal form of an arbitrary (unsorted) word with a coefficient.
PBWElem normal_form(const AlgebraHandle& algebra, const std::vector<int>& word,
                    const FieldScalar& coeff);
PBWElem u_mul(const PBWElem& a, const PBWElem& b);
PBWElem u_pow(const PBWElem& a, unsigned m);
/// a*b - b*a.
PBWElem commutator(const PBWElem& a, const PBWElem& b);

/// Embeds x (which must lie in the algebra) as a degree-one element.
PBWElem lift_lie(const AlgebraHandle& algebra, const LieElem& x);
/// Maps each monomial to its sorted word. Only meaningful for polynomials
/// whose variables pairwise commute in U (e.g. the block determinants).
PBWElem lift_commuting_poly(const AlgebraHandle& algebra, const Poly& f);

/// Evaluates the defining formula of a generator inside U. B-kinds live in
/// U(b); every other kind in U(g). S-minors are not elements of U(g).
PBWElem lift_generator(const GeneratorId& id, int n, unsigned p, const AlgebraHandle& algebra);
PBWElem lift_generator(const GeneratorId& id, int n, unsigned p);

bool is_central(const PBWElem& u);
/// Throws NotSemiCentral.
Weight semicentral_weight(const PBWElem& u);
/// Top filtration component read as a polynomial of S(gl_n). Throws on zero.
Poly gr_map(const PBWElem& u);

/// {e_ii^p - e_ii} and {e_ij^p, i<j} for g; {eps_ii^p - eps_ii} and {e_ij^p} for b.
std::vector<PBWElem> build_Zp_generators(int n, unsigned p, Algebra algebra);

/// z(k,i)z(k,j) == z(k,r)C(k)^{p(1-s)}M(k)^{ps} in U(g).
IdentityCheck check_relation_U(int n, int k, int i, int j, unsigned p);
IdentityCheck compare_elems(const PBWElem& lhs, const PBWElem& rhs);

/// z_B(k,l) = C(k)^{p-l} M_B(k)^l in U(b).
PBWElem build_zB(int n, int k, int l, unsigned p);

nlohmann::ordered_json to_json(const PBWElem& u);
PBWElem pbw_from_json(const nlohmann::json& j);

}  // namespace borel
