#include "borel/pbw.hpp"

#include <algorithm>
#include <sstream>

#include "borel/errors.hpp"

namespace borel {

namespace {

char to_char(int letter) { return static_cast<char>(letter); }
int to_letter(char c) { return static_cast<unsigned char>(c); }

}  // namespace

// --- PBWAlgebra ------------------------------------------------------------

PBWAlgebra::PBWAlgebra(Algebra algebra, int n, Characteristic p)
    : algebra_(algebra), n_(n), p_(p), basis_(basis(n, p, algebra)) {
  if (p != 0 && !is_prime(p)) throw UsageError("characteristic must be 0 or a prime");
  if (algebra == Algebra::b && p != 0 && n % static_cast<int>(p) == 0) {
    throw NMustBeInvertible("U(b) needs p not dividing n");
  }
  const auto d = basis_.size();
  structure_.assign(d, std::vector<std::vector<std::pair<int, FieldScalar>>>(d));
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) {
      structure_[a][b] = coordinates(borel::bracket(basis_[a], basis_[b]));
    }
  }
}

std::shared_ptr<const PBWAlgebra> PBWAlgebra::make(Algebra algebra, int n, Characteristic p) {
  return std::make_shared<const PBWAlgebra>(algebra, n, p);
}

std::pair<int, int> PBWAlgebra::label(int letter) const {
  const LieElem& x = basis_element(letter);
  if (algebra_ == Algebra::b && is_cartan(letter)) return {letter + 1, letter + 1};
  const auto& v = x.coefficients().begin()->first;
  return {v.row, v.col};
}

bool PBWAlgebra::is_cartan(int letter) const { return basis_element(letter).is_diagonal(); }

int PBWAlgebra::letter_of(int i, int j) const {
  for (int a = 0; a < dimension(); ++a) {
    if (label(a) == std::pair{i, j}) return a;
  }
  throw UsageError("no basis letter labelled (" + std::to_string(i) + "," + std::to_string(j) + ")");
}

const std::vector<std::pair<int, FieldScalar>>& PBWAlgebra::bracket(int a, int b) const {
  return structure_.at(static_cast<std::size_t>(a)).at(static_cast<std::size_t>(b));
}

std::vector<std::pair<int, FieldScalar>> PBWAlgebra::coordinates(const LieElem& x) const {
  if (x.n() != n_ || x.characteristic() != p_) throw UsageError("element of another algebra");
  std::vector<std::pair<int, FieldScalar>> out;
  if (algebra_ == Algebra::g) {
    if (!x.in_g()) throw UsageError(x.to_string() + " is not in g");
    for (int a = 0; a < dimension(); ++a) {
      const auto& v = basis_[static_cast<std::size_t>(a)].coefficients().begin()->first;
      const FieldScalar c = x.coefficient(v.row, v.col);
      if (!c.is_zero()) out.emplace_back(a, c);
    }
    return out;
  }
  if (!x.in_b()) throw UsageError(x.to_string() + " is not in b");
  // Trace-zero diagonal: sum_{i<n} x_ii eps(i,i).
  for (int a = 0; a < dimension(); ++a) {
    const auto [i, j] = label(a);
    const FieldScalar c = x.coefficient(i, j);
    if (!c.is_zero()) out.emplace_back(a, c);
  }
  return out;
}

Poly PBWAlgebra::letter_poly(int letter) const { return basis_element(letter).to_poly(); }

const WordTerms& PBWAlgebra::mul_word_letter(const Word& w, int letter) const {
  std::lock_guard lock(memo_mutex_);
  return mul_word_letter_locked(w, letter);
}

const WordTerms& PBWAlgebra::mul_word_letter_locked(const Word& w, int letter) const {
  std::string key = w;
  key.push_back(to_char(letter));
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;

  WordTerms result;
  if (w.empty() || to_letter(w.back()) <= letter) {
    result.emplace_back(key, FieldScalar::one(p_));
  } else {
    // w = w' y with y > x:  w' y x = (w' x) y + w' [y, x].
    const int y = to_letter(w.back());
    const Word prefix = w.substr(0, w.size() - 1);
    std::map<Word, FieldScalar, WordOrder> acc;
    const auto accumulate = [&](const WordTerms& terms, const FieldScalar& scale) {
      for (const auto& [word, c] : terms) {
        auto [it, inserted] = acc.try_emplace(word, c * scale);
        if (!inserted) it->second += c * scale;
      }
    };
    const WordTerms first = mul_word_letter_locked(prefix, letter);
    for (const auto& [v, c] : first) accumulate(mul_word_letter_locked(v, y), c);
    for (const auto& [z, c] : bracket(y, letter)) accumulate(mul_word_letter_locked(prefix, z), c);
    for (auto& [word, c] : acc) {
      if (!c.is_zero()) result.emplace_back(word, c);
    }
  }
  return memo_.emplace(std::move(key), std::move(result)).first->second;
}

// --- PBWElem ---------------------------------------------------------------

PBWElem::PBWElem(AlgebraHandle algebra) : alg_(std::move(algebra)) {
  if (!alg_) throw UsageError("PBWElem needs an algebra");
}

PBWElem PBWElem::scalar(AlgebraHandle algebra, const FieldScalar& c) {
  PBWElem out(std::move(algebra));
  out.add_term(Word{}, c);
  return out;
}

PBWElem PBWElem::letter(AlgebraHandle algebra, int letter) {
  const Characteristic p = algebra->characteristic();
  if (letter < 0 || letter >= algebra->dimension()) throw UsageError("letter out of range");
  PBWElem out(std::move(algebra));
  out.add_term(Word(1, to_char(letter)), FieldScalar::one(p));
  return out;
}

int PBWElem::filtration_degree() const {
  return terms_.empty() ? -1 : static_cast<int>(terms_.rbegin()->first.size());
}

void PBWElem::add_term(const Word& w, const FieldScalar& c) {
  if (c.characteristic() != characteristic()) throw UsageError("characteristic mismatch");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void PBWElem::check_same(const PBWElem& o) const {
  if (!alg_->same_as(*o.alg_)) throw UsageError("elements of different enveloping algebras");
}

PBWElem& PBWElem::operator+=(const PBWElem& o) {
  check_same(o);
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

PBWElem& PBWElem::operator-=(const PBWElem& o) {
  check_same(o);
  for (const auto& [w, c] : o.terms_) add_term(w, -c);
  return *this;
}

PBWElem& PBWElem::operator*=(const FieldScalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, v] : terms_) v *= c;
  return *this;
}

PBWElem operator*(const PBWElem& a, const PBWElem& b) { return u_mul(a, b); }

bool operator==(const PBWElem& a, const PBWElem& b) {
  return a.alg_->same_as(*b.alg_) && a.terms_ == b.terms_;
}

std::string PBWElem::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (!first) os << " + ";
    first = false;
    os << it->second.to_string();
    for (char ch : it->first) {
      const auto [i, j] = alg_->label(to_letter(ch));
      os << "*" << (alg_->algebra() == Algebra::b && alg_->is_cartan(to_letter(ch)) ? "eps" : "e")
         << i << "," << j;
    }
  }
  return os.str();
}

// --- free functions --------------------------------------------------------

PBWElem normal_form(const AlgebraHandle& algebra, const std::vector<int>& word,
                    const FieldScalar& coeff) {
  WordTerms current{{Word{}, coeff}};
  for (int letter : word) {
    if (letter < 0 || letter >= algebra->dimension()) throw UsageError("letter out of range");
    std::map<Word, FieldScalar, WordOrder> next;
    for (const auto& [w, c] : current) {
      for (const auto& [v, d] : algebra->mul_word_letter(w, letter)) {
        auto [it, inserted] = next.try_emplace(v, c * d);
        if (!inserted) it->second += c * d;
      }
    }
    current.clear();
    for (auto& [w, c] : next) {
      if (!c.is_zero()) current.emplace_back(w, c);
    }
  }
  PBWElem out(algebra);
  for (const auto& [w, c] : current) out.add_term(w, c);
  return out;
}

PBWElem u_mul(const PBWElem& a, const PBWElem& b) {
  if (!a.algebra().same_as(b.algebra())) throw UsageError("u_mul: algebra mismatch");
  const PBWAlgebra& alg = a.algebra();
  PBWElem out(a.handle());
  for (const auto& [wb, cb] : b.terms()) {
    // Right-multiply every word of a by the letters of wb in turn.
    std::map<Word, FieldScalar, WordOrder> current(a.terms().begin(), a.terms().end());
    for (char ch : wb) {
      std::map<Word, FieldScalar, WordOrder> next;
      for (const auto& [w, c] : current) {
        for (const auto& [v, d] : alg.mul_word_letter(w, to_letter(ch))) {
          auto [it, inserted] = next.try_emplace(v, c * d);
          if (!inserted) it->second += c * d;
        }
      }
      current.clear();
      for (auto& [w, c] : next) {
        if (!c.is_zero()) current.emplace(w, c);
      }
    }
    for (const auto& [w, c] : current) out.add_term(w, c * cb);
  }
  return out;
}

PBWElem u_pow(const PBWElem& a, unsigned m) {
  PBWElem acc = PBWElem::scalar(a.handle(), FieldScalar::one(a.characteristic()));
  PBWElem base = a;
  while (m != 0) {
    if (m & 1U) acc = u_mul(acc, base);
    m >>= 1U;
    if (m != 0) base = u_mul(base, base);
  }
  return acc;
}

PBWElem commutator(const PBWElem& a, const PBWElem& b) { return u_mul(a, b) - u_mul(b, a); }

PBWElem lift_lie(const AlgebraHandle& algebra, const LieElem& x) {
  PBWElem out(algebra);
  for (const auto& [letter, c] : algebra->coordinates(x)) out.add_term(Word(1, to_char(letter)), c);
  return out;
}

PBWElem lift_commuting_poly(const AlgebraHandle& algebra, const Poly& f) {
  if (f.characteristic() != algebra->characteristic()) {
    throw UsageError("lift: characteristic mismatch");
  }
  PBWElem out(algebra);
  for (const auto& [m, c] : f.terms()) {
    Word w;
    for (const auto& [v, e] : m.factors()) {
      if (v.is_aux() || v.row > v.col) throw UsageError(to_string(v) + " is not in g");
      if (algebra->algebra() == Algebra::b && v.is_diagonal()) {
        throw UsageError("diagonal variable " + to_string(v) + " has no letter in U(b)");
      }
      w.append(e, to_char(algebra->letter_of(v.row, v.col)));
    }
    std::sort(w.begin(), w.end(), [](char x, char y) { return to_letter(x) < to_letter(y); });
    out.add_term(w, c);
  }
  return out;
}

namespace {

PBWElem lift_T(const AlgebraHandle& alg, int n, int k) {
  const Characteristic p = alg->characteristic();
  PBWElem out(alg);
  for (int i = 1; i <= k; ++i) {
    for (int j = k + 1; j <= n - k; ++j) {
      out += u_mul(lift_lie(alg, LieElem::unit(n, p, i, j)),
                   lift_commuting_poly(alg, block_with_row(n, k, i, j, p)));
    }
  }
  return out;
}

PBWElem lift_M(const AlgebraHandle& alg, int n, int k, bool sl_side) {
  const Characteristic p = alg->characteristic();
  if (!sl_side && n % 2 == 0 && k == n / 2) return PBWElem(alg);
  const PBWElem c = lift_commuting_poly(alg, build_C(n, k, p));
  const LieElem d = sl_side ? build_D_B(n, k, p) : build_D(n, k, p);
  return u_mul(c, lift_lie(alg, d)) + lift_T(alg, n, k);
}

}  // namespace

PBWElem lift_generator(const GeneratorId& id, int n, unsigned p, const AlgebraHandle& alg) {
  validate(id, n, p);
  if (alg->n() != n || alg->characteristic() != p) {
    throw UsageError("lift_generator: algebra does not match (n, p)");
  }
  switch (id.kind) {
    case GeneratorKind::c0: {
      LieElem x(n, p);
      for (int i = 1; i <= n; ++i) x.add(i, i, FieldScalar::one(p));
      return lift_lie(alg, x);
    }
    case GeneratorKind::C:
      return lift_commuting_poly(alg, build_C(n, id.k, p));
    case GeneratorKind::D:
      return lift_lie(alg, build_D(n, id.k, p));
    case GeneratorKind::T_minor:
      return lift_commuting_poly(alg, build_T_minor(n, id.k, id.i, id.j, p));
    case GeneratorKind::S_minor:
      throw UsageError("S-minors involve lower-triangular variables and are not in U(g)");
    case GeneratorKind::T:
      return lift_T(alg, n, id.k);
    case GeneratorKind::M:
      return lift_M(alg, n, id.k, false);
    case GeneratorKind::c_kl: {
      const PBWElem c = lift_commuting_poly(alg, build_C(n, id.k, p));
      const PBWElem m = lift_M(alg, n, id.k, false);
      return u_mul(u_pow(c, p - static_cast<unsigned>(id.l)), u_pow(m, static_cast<unsigned>(id.l)));
    }
    case GeneratorKind::D_B:
      return lift_lie(alg, build_D_B(n, id.k, p));
    case GeneratorKind::M_B:
      return lift_M(alg, n, id.k, true);
    case GeneratorKind::c_B_kl: {
      const PBWElem c = lift_commuting_poly(alg, build_C(n, id.k, p));
      const PBWElem m = lift_M(alg, n, id.k, true);
      return u_mul(u_pow(c, p - static_cast<unsigned>(id.l)), u_pow(m, static_cast<unsigned>(id.l)));
    }
  }
  throw UsageError("unknown generator kind");
}

PBWElem lift_generator(const GeneratorId& id, int n, unsigned p) {
  const bool sl_kind = id.kind == GeneratorKind::D_B || id.kind == GeneratorKind::M_B ||
                       id.kind == GeneratorKind::c_B_kl;
  return lift_generator(id, n, p, PBWAlgebra::make(sl_kind ? Algebra::b : Algebra::g, n, p));
}

bool is_central(const PBWElem& u) {
  const auto& alg = u.handle();
  for (int x = 0; x < alg->dimension(); ++x) {
    if (!commutator(PBWElem::letter(alg, x), u).is_zero()) return false;
  }
  return true;
}

Weight semicentral_weight(const PBWElem& u) {
  if (u.is_zero()) throw UsageError("semicentral_weight: zero element");
  const auto& alg = u.handle();
  const Characteristic p = alg->characteristic();
  Weight w = Weight::zero(alg->algebra(), alg->n(), p);
  std::size_t cartan = 0;
  const auto& [lw, lc] = *u.terms().rbegin();
  for (int x = 0; x < alg->dimension(); ++x) {
    const PBWElem image = commutator(PBWElem::letter(alg, x), u);
    FieldScalar lambda = FieldScalar::zero(p);
    if (!image.is_zero()) {
      auto it = image.terms().find(lw);
      if (it != image.terms().end()) lambda = it->second / lc;
      if (!(image == u * lambda)) {
        throw NotSemiCentral("[" + alg->basis_element(x).to_string() + ", u] is not a multiple of u");
      }
    }
    if (alg->is_cartan(x)) {
      w.values.at(cartan++) = lambda;
    } else if (!lambda.is_zero()) {
      throw NotSemiCentral("nilpotent letter acts by a nonzero scalar");
    }
  }
  return w;
}

Poly gr_map(const PBWElem& u) {
  if (u.is_zero()) throw UsageError("gr of the zero element");
  const PBWAlgebra& alg = u.algebra();
  const auto top = static_cast<std::size_t>(u.filtration_degree());
  Poly out(alg.characteristic());
  for (const auto& [w, c] : u.terms()) {
    if (w.size() != top) continue;
    Poly term = Poly::constant(c);
    for (char ch : w) term = term * alg.letter_poly(to_letter(ch));
    out += term;
  }
  return out;
}

std::vector<PBWElem> build_Zp_generators(int n, unsigned p, Algebra algebra) {
  if (p == 0) throw UsageError("Z_p needs a positive characteristic");
  const auto alg = PBWAlgebra::make(algebra, n, p);
  std::vector<PBWElem> out;
  for (int x = 0; x < alg->dimension(); ++x) {
    const PBWElem e = PBWElem::letter(alg, x);
    PBWElem gen = u_pow(e, p);
    if (alg->is_cartan(x)) gen -= e;
    out.push_back(std::move(gen));
  }
  return out;
}

IdentityCheck compare_elems(const PBWElem& lhs, const PBWElem& rhs) {
  const PBWElem diff = lhs - rhs;
  if (diff.is_zero()) return {true, ""};
  PBWElem lead(diff.handle());
  lead.add_term(diff.terms().rbegin()->first, diff.terms().rbegin()->second);
  return {false, "first differing term: " + lead.to_string()};
}

IdentityCheck check_relation_U(int n, int k, int i, int j, unsigned p) {
  const CarrySplit sr = rs_decompose(i, j, p);
  const auto alg = PBWAlgebra::make(Algebra::g, n, p);
  const auto z = [&](int l) { return lift_generator({GeneratorKind::c_kl, k, l}, n, p, alg); };
  const PBWElem c = lift_generator({GeneratorKind::C, k}, n, p, alg);
  const PBWElem m = lift_generator({GeneratorKind::M, k}, n, p, alg);
  const PBWElem lhs = u_mul(z(i), z(j));
  const PBWElem rhs = u_mul(u_mul(z(sr.r), u_pow(c, p * static_cast<unsigned>(1 - sr.s))),
                            u_pow(m, p * static_cast<unsigned>(sr.s)));
  return compare_elems(lhs, rhs);
}

PBWElem build_zB(int n, int k, int l, unsigned p) {
  return lift_generator({GeneratorKind::c_B_kl, k, l}, n, p, PBWAlgebra::make(Algebra::b, n, p));
}

nlohmann::ordered_json to_json(const PBWElem& u) {
  const PBWAlgebra& alg = u.algebra();
  nlohmann::ordered_json j;
  j["algebra"] = to_string(alg.algebra());
  j["n"] = alg.n();
  j["char"] = alg.characteristic();
  auto terms = nlohmann::ordered_json::array();
  for (auto it = u.terms().rbegin(); it != u.terms().rend(); ++it) {
    nlohmann::ordered_json t;
    t["coeff"] = it->second.to_string();
    auto word = nlohmann::ordered_json::array();
    for (char ch : it->first) {
      const auto [i, jj] = alg.label(to_letter(ch));
      word.push_back({i, jj});
    }
    t["word"] = std::move(word);
    terms.push_back(std::move(t));
  }
  j["terms"] = std::move(terms);
  return j;
}

PBWElem pbw_from_json(const nlohmann::json& j) {
  try {
    const std::string tag = j.at("algebra").get<std::string>();
    if (tag != "g" && tag != "b") throw UsageError("algebra must be \"g\" or \"b\"");
    const auto alg = PBWAlgebra::make(tag == "g" ? Algebra::g : Algebra::b, j.at("n").get<int>(),
                                      j.at("char").get<Characteristic>());
    PBWElem out(alg);
    for (const auto& t : j.at("terms")) {
      std::vector<int> word;
      for (const auto& letter : t.at("word")) {
        word.push_back(alg->letter_of(letter.at(0).get<int>(), letter.at(1).get<int>()));
      }
      out += normal_form(alg, word, FieldScalar::parse(alg->characteristic(),
                                                       t.at("coeff").get<std::string>()));
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("malformed PBW JSON: ") + e.what());
  }
}

}  // namespace borel
