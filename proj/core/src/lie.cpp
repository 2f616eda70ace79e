#include "borel/lie.hpp"

#include <sstream>

#include "borel/errors.hpp"

namespace borel {

std::string to_string(Algebra a) { return a == Algebra::g ? "g" : "b"; }

std::string to_string(Subalgebra s) {
  switch (s) {
    case Subalgebra::g:
      return "g";
    case Subalgebra::b:
      return "b";
    case Subalgebra::n:
      return "n";
  }
  return "?";
}

LieElem::LieElem(int n, Characteristic p) : n_(n), p_(p) {
  if (n < 1 || n > kMaxN) throw UsageError("matrix size must lie in 1.." + std::to_string(kMaxN));
}

LieElem LieElem::unit(int n, Characteristic p, int i, int j) {
  LieElem out(n, p);
  out.add(i, j, FieldScalar::one(p));
  return out;
}

LieElem LieElem::epsilon(int n, Characteristic p, int i) {
  if (i < 1 || i >= n) throw UsageError("eps(i,i) needs 1 <= i <= n-1");
  LieElem out(n, p);
  out.add(i, i, FieldScalar::one(p));
  out.add(n, n, -FieldScalar::one(p));
  return out;
}

FieldScalar LieElem::coefficient(int i, int j) const {
  auto it = coeffs_.find(VarId{i, j});
  return it == coeffs_.end() ? FieldScalar::zero(p_) : it->second;
}

void LieElem::add(int i, int j, const FieldScalar& c) {
  if (i < 1 || i > n_ || j < 1 || j > n_) throw UsageError("matrix unit index out of range");
  if (c.characteristic() != p_) throw UsageError("characteristic mismatch in LieElem");
  if (c.is_zero()) return;
  auto [it, inserted] = coeffs_.try_emplace(VarId{i, j}, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) coeffs_.erase(it);
  }
}

void LieElem::check_same(const LieElem& o) const {
  if (n_ != o.n_) throw UsageError("Lie elements of different sizes");
  if (p_ != o.p_) throw UsageError("Lie elements of different characteristic");
}

LieElem& LieElem::operator+=(const LieElem& o) {
  check_same(o);
  for (const auto& [v, c] : o.coeffs_) add(v.row, v.col, c);
  return *this;
}

LieElem& LieElem::operator-=(const LieElem& o) {
  check_same(o);
  for (const auto& [v, c] : o.coeffs_) add(v.row, v.col, -c);
  return *this;
}

LieElem& LieElem::operator*=(const FieldScalar& c) {
  if (c.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  for (auto& [v, x] : coeffs_) x *= c;
  return *this;
}

FieldScalar LieElem::trace() const {
  FieldScalar t = FieldScalar::zero(p_);
  for (const auto& [v, c] : coeffs_) {
    if (v.row == v.col) t += c;
  }
  return t;
}

bool LieElem::in_n() const {
  for (const auto& [v, c] : coeffs_) {
    if (v.row >= v.col) return false;
  }
  return true;
}

bool LieElem::in_g() const {
  for (const auto& [v, c] : coeffs_) {
    if (v.row > v.col) return false;
  }
  return true;
}

bool LieElem::in_b() const { return in_g() && trace().is_zero(); }

bool LieElem::is_diagonal() const {
  for (const auto& [v, c] : coeffs_) {
    if (v.row != v.col) return false;
  }
  return true;
}

Poly LieElem::to_poly() const {
  Poly out(p_);
  for (const auto& [v, c] : coeffs_) out.add_term(Monomial::of(v), c);
  return out;
}

std::string LieElem::to_string() const { return to_poly().to_string(); }

LieElem bracket(const LieElem& a, const LieElem& b) {
  if (a.n() != b.n()) throw UsageError("bracket: size mismatch");
  if (a.characteristic() != b.characteristic()) {
    throw UsageError("bracket: characteristic mismatch");
  }
  // [e_{a,b}, e_{c,d}] = delta_{bc} e_{a,d} - delta_{da} e_{c,b}
  LieElem out(a.n(), a.characteristic());
  for (const auto& [x, cx] : a.coefficients()) {
    for (const auto& [y, cy] : b.coefficients()) {
      const FieldScalar c = cx * cy;
      if (x.col == y.row) out.add(x.row, y.col, c);
      if (y.col == x.row) out.add(y.row, x.col, -c);
    }
  }
  return out;
}

std::vector<LieElem> basis(int n, Characteristic p, Subalgebra s) {
  std::vector<LieElem> out;
  if (s == Subalgebra::b) {
    for (int i = 1; i < n; ++i) out.push_back(LieElem::epsilon(n, p, i));
  }
  for (int i = 1; i <= n; ++i) {
    for (int j = i; j <= n; ++j) {
      if (i == j && s != Subalgebra::g) continue;
      out.push_back(LieElem::unit(n, p, i, j));
    }
  }
  return out;
}

std::vector<LieElem> basis(int n, Characteristic p, Algebra a) {
  return basis(n, p, a == Algebra::g ? Subalgebra::g : Subalgebra::b);
}

Poly bracket_variables(VarId a, VarId b, Characteristic p) {
  Poly out(p);
  if (a.is_aux() || b.is_aux()) return out;
  const FieldScalar one = FieldScalar::one(p);
  if (a.col == b.row) out.add_term(Monomial::of(VarId{a.row, b.col}), one);
  if (b.col == a.row) out.add_term(Monomial::of(VarId{b.row, a.col}), -one);
  return out;
}

Poly adjoint_apply(const LieElem& x, const Poly& f) {
  if (x.characteristic() != f.characteristic()) {
    throw UsageError("adjoint_apply: characteristic mismatch");
  }
  const Characteristic p = f.characteristic();
  return apply_derivation(
      [&](VarId v) {
        Poly out(p);
        for (const auto& [u, c] : x.coefficients()) {
          Poly b = bracket_variables(u, v, p);
          b *= c;
          out += b;
        }
        return out;
      },
      f);
}

Poly poisson(const Poly& f, const Poly& g) {
  if (f.characteristic() != g.characteristic()) {
    throw UsageError("poisson: characteristic mismatch");
  }
  const Characteristic p = f.characteristic();
  std::map<VarId, Poly> df;
  std::map<VarId, Poly> dg;
  for (const auto& [m, c] : f.terms()) {
    for (const auto& [v, e] : m.factors()) {
      if (!df.contains(v)) df.emplace(v, partial_derivative(f, v));
    }
  }
  for (const auto& [m, c] : g.terms()) {
    for (const auto& [v, e] : m.factors()) {
      if (!dg.contains(v)) dg.emplace(v, partial_derivative(g, v));
    }
  }
  Poly out(p);
  for (const auto& [a, da] : df) {
    for (const auto& [b, db] : dg) {
      Poly br = bracket_variables(a, b, p);
      if (br.is_zero()) continue;
      out += da * db * br;
    }
  }
  return out;
}

// --- weights ---------------------------------------------------------------

Weight Weight::zero(Algebra a, int n, Characteristic p) {
  const int len = a == Algebra::g ? n : n - 1;
  return Weight{a, n, std::vector<FieldScalar>(static_cast<std::size_t>(len), FieldScalar::zero(p))};
}

FieldScalar Weight::operator()(const LieElem& x) const {
  if (values.empty()) return FieldScalar::zero(x.characteristic());
  FieldScalar out = FieldScalar::zero(x.characteristic());
  if (algebra == Algebra::b && !x.trace().is_zero()) {
    throw UsageError("weight of b evaluated outside b");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    const int idx = static_cast<int>(i) + 1;
    out += values[i] * x.coefficient(idx, idx);
  }
  return out;
}

bool Weight::is_zero() const {
  for (const auto& v : values) {
    if (!v.is_zero()) return false;
  }
  return true;
}

Weight Weight::operator+(const Weight& o) const {
  if (algebra != o.algebra || n != o.n || values.size() != o.values.size()) {
    throw UsageError("adding weights of different algebras");
  }
  Weight out = *this;
  for (std::size_t i = 0; i < values.size(); ++i) out.values[i] += o.values[i];
  return out;
}

std::string Weight::to_string() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i != 0) os << ", ";
    os << values[i].to_string();
  }
  os << ")";
  return os.str();
}

std::optional<FieldScalar> eigenvalue(const LieElem& x, const Poly& f) {
  if (f.is_zero()) throw UsageError("eigenvalue of the zero polynomial");
  const Poly image = adjoint_apply(x, f);
  const auto& [lm, lc] = f.leading_term();
  const FieldScalar c = image.coefficient(lm) / lc;
  if (image == c * f) return c;
  return std::nullopt;
}

Weight weight_of(const Poly& f, Algebra a, int n) {
  if (f.is_zero()) throw UsageError("weight_of: zero polynomial");
  const Characteristic p = f.characteristic();
  Weight w = Weight::zero(a, n, p);
  const auto cartan_size = static_cast<int>(w.values.size());
  int cartan_index = 0;
  for (const LieElem& x : basis(n, p, a)) {
    const auto c = eigenvalue(x, f);
    if (!c) throw NotSemiInvariant("ad " + x.to_string() + " does not act by a scalar");
    if (x.is_diagonal()) {
      if (cartan_index >= cartan_size) throw UsageError("unexpected Cartan element");
      w.values[static_cast<std::size_t>(cartan_index++)] = *c;
    } else if (!c->is_zero()) {
      throw NotSemiInvariant("nilpotent element " + x.to_string() + " acts by a nonzero scalar");
    }
  }
  return w;
}

}  // namespace borel
