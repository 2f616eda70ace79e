#include "borel/poly.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <sstream>
#include <unordered_map>

#include "borel/errors.hpp"

namespace borel {

VarId VarId::from_slot(int slot) {
  if (slot < 0 || slot >= kSlots) throw UsageError("variable slot out of range");
  if (slot >= kMatrixSlots) return aux(slot - kMatrixSlots);
  return {slot / kMaxN + 1, slot % kMaxN + 1};
}

int VarId::slot() const {
  if (row == 0) {
    if (col < 0 || col >= kAuxSlots) throw UsageError("auxiliary variable index out of range");
    return kMatrixSlots + col;
  }
  if (row < 1 || row > kMaxN || col < 1 || col > kMaxN) {
    throw UsageError("matrix variable (" + std::to_string(row) + "," + std::to_string(col) +
                     ") outside the supported size");
  }
  return (row - 1) * kMaxN + (col - 1);
}

std::string to_string(const VarId& v) {
  if (v.is_aux()) return "t" + std::to_string(v.col);
  return "e" + std::to_string(v.row) + "," + std::to_string(v.col);
}

// --- Monomial --------------------------------------------------------------

Monomial Monomial::of(VarId v, unsigned exponent) {
  Monomial m;
  m.set_exponent(v, exponent);
  return m;
}

void Monomial::set_exponent(VarId v, unsigned exponent) {
  if (exponent > 255) throw UsageError("exponent overflow (> 255)");
  auto& slot = exps_[static_cast<std::size_t>(v.slot())];
  degree_ = static_cast<std::uint16_t>(degree_ - slot + exponent);
  slot = static_cast<std::uint8_t>(exponent);
}

std::vector<std::pair<VarId, unsigned>> Monomial::factors() const {
  std::vector<std::pair<VarId, unsigned>> out;
  if (degree_ == 0) return out;
  for (int s = 0; s < kSlots; ++s) {
    if (exps_[static_cast<std::size_t>(s)] != 0) {
      out.emplace_back(VarId::from_slot(s), exps_[static_cast<std::size_t>(s)]);
    }
  }
  return out;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial out;
  for (std::size_t s = 0; s < exps_.size(); ++s) {
    const unsigned e = exps_[s] + o.exps_[s];
    if (e > 255) throw UsageError("exponent overflow (> 255)");
    out.exps_[s] = static_cast<std::uint8_t>(e);
  }
  out.degree_ = static_cast<std::uint16_t>(degree_ + o.degree_);
  return out;
}

bool Monomial::divides(const Monomial& o) const {
  if (degree_ > o.degree_) return false;
  for (std::size_t s = 0; s < exps_.size(); ++s) {
    if (exps_[s] > o.exps_[s]) return false;
  }
  return true;
}

Monomial Monomial::quotient_of(const Monomial& o) const {
  Monomial out;
  for (std::size_t s = 0; s < exps_.size(); ++s) {
    out.exps_[s] = static_cast<std::uint8_t>(o.exps_[s] - exps_[s]);
  }
  out.degree_ = static_cast<std::uint16_t>(o.degree_ - degree_);
  return out;
}

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
  if (a.degree_ != b.degree_) return a.degree_ <=> b.degree_;
  const int c = std::memcmp(a.exps_.data(), b.exps_.data(), a.exps_.size());
  return c <=> 0;
}

// --- Poly ------------------------------------------------------------------

Poly Poly::constant(const FieldScalar& c) {
  Poly out(c.characteristic());
  out.add_term(Monomial{}, c);
  return out;
}

Poly Poly::variable(Characteristic p, VarId v) {
  return term(FieldScalar::one(p), Monomial::of(v));
}

Poly Poly::term(const FieldScalar& c, const Monomial& m) {
  Poly out(c.characteristic());
  out.add_term(m, c);
  return out;
}

FieldScalar Poly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? FieldScalar::zero(p_) : it->second;
}

const std::pair<const Monomial, FieldScalar>& Poly::leading_term() const {
  if (terms_.empty()) throw UsageError("leading term of the zero polynomial");
  return *terms_.rbegin();
}

int Poly::degree() const {
  return terms_.empty() ? -1 : static_cast<int>(terms_.rbegin()->first.degree());
}

bool Poly::is_homogeneous() const {
  if (terms_.empty()) return true;
  return terms_.begin()->first.degree() == terms_.rbegin()->first.degree();
}

bool Poly::uses_aux_variables() const {
  for (const auto& [m, c] : terms_) {
    for (int s = kMatrixSlots; s < kSlots; ++s) {
      if (m.exponent_at(s) != 0) return true;
    }
  }
  return false;
}

void Poly::add_term(const Monomial& m, const FieldScalar& c) {
  if (c.characteristic() != p_) throw UsageError("characteristic mismatch in add_term");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void Poly::check_same(const Poly& o) const {
  if (p_ != o.p_) {
    throw UsageError("characteristic mismatch: " + std::to_string(p_) + " vs " +
                     std::to_string(o.p_));
  }
}

Poly Poly::operator-() const {
  Poly out(p_);
  for (const auto& [m, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), m, -c);
  return out;
}

Poly& Poly::operator+=(const Poly& o) {
  check_same(o);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  check_same(o);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly& Poly::operator*=(const FieldScalar& c) {
  if (c.characteristic() != p_) throw UsageError("characteristic mismatch in scaling");
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  a.check_same(b);
  Poly out(a.p_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
  }
  return out;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    std::string coeff = c.to_string();
    bool negative = p_ == 0 && !coeff.empty() && coeff[0] == '-';
    if (negative) coeff.erase(0, 1);
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    const auto factors = m.factors();
    const bool unit = coeff == "1";
    if (!unit || factors.empty()) os << coeff;
    bool need_star = !unit;
    for (const auto& [v, e] : factors) {
      if (need_star) os << "*";
      os << borel::to_string(v);
      if (e != 1) os << "^" << e;
      need_star = true;
    }
  }
  return os.str();
}

// --- free functions --------------------------------------------------------

Poly poly_arith(const Poly& a, const Poly& b, PolyOp op) {
  return op == PolyOp::add ? a + b : a * b;
}

Poly poly_pow(const Poly& f, unsigned m) {
  Poly acc = Poly::constant(f.characteristic(), 1);
  Poly base = f;
  while (m != 0) {
    if (m & 1U) acc = acc * base;
    m >>= 1U;
    if (m != 0) base = base * base;
  }
  return acc;
}

Poly det_poly_matrix(const std::vector<std::vector<Poly>>& m) {
  const std::size_t k = m.size();
  for (const auto& row : m) {
    if (row.size() != k) throw UsageError("det_poly_matrix: matrix is not square");
  }
  if (k > 20) throw UsageError("det_poly_matrix: matrix too large for cofactor expansion");
  if (k == 0) return Poly::constant(0, 1);
  const Characteristic p = m[0][0].characteristic();
  for (const auto& row : m) {
    for (const auto& e : row) {
      if (e.characteristic() != p) throw UsageError("det_poly_matrix: mixed characteristics");
    }
  }

  // minor[mask] = determinant of the bottom popcount(mask) rows restricted to
  // the columns in mask. Filled by increasing popcount.
  std::unordered_map<std::uint32_t, Poly> minor;
  minor.emplace(0U, Poly::constant(p, 1));
  std::vector<std::uint32_t> layer{0U};
  for (std::size_t size = 1; size <= k; ++size) {
    const std::size_t row = k - size;
    std::vector<std::uint32_t> next;
    for (std::uint32_t mask = 0; mask < (1U << k); ++mask) {
      if (static_cast<std::size_t>(std::popcount(mask)) != size) continue;
      Poly acc(p);
      int position = 0;
      for (std::size_t c = 0; c < k; ++c) {
        if ((mask & (1U << c)) == 0) continue;
        const Poly& entry = m[row][c];
        if (!entry.is_zero()) {
          const Poly& sub = minor.at(mask & ~(1U << c));
          if (!sub.is_zero()) {
            Poly prod = entry * sub;
            if (position % 2 == 0) {
              acc += prod;
            } else {
              acc -= prod;
            }
          }
        }
        ++position;
      }
      minor.emplace(mask, std::move(acc));
      next.push_back(mask);
    }
    for (auto mask : layer) {
      if (mask != 0) minor.erase(mask);
    }
    layer = std::move(next);
  }
  return minor.at((1U << k) - 1U);
}

Poly apply_derivation(const std::function<Poly(VarId)>& image, const Poly& f) {
  Poly out(f.characteristic());
  std::map<VarId, Poly> cache;
  for (const auto& [m, c] : f.terms()) {
    for (const auto& [v, e] : m.factors()) {
      auto it = cache.find(v);
      if (it == cache.end()) it = cache.emplace(v, image(v)).first;
      const Poly& dv = it->second;
      if (dv.is_zero()) continue;
      Monomial rest = m;
      rest.set_exponent(v, e - 1);
      FieldScalar coeff = c * FieldScalar(f.characteristic(), static_cast<long>(e));
      if (coeff.is_zero()) continue;
      for (const auto& [md, cd] : dv.terms()) out.add_term(rest * md, coeff * cd);
    }
  }
  return out;
}

Poly apply_derivation(const DerivationTable& d, const Poly& f) {
  return apply_derivation(
      [&](VarId v) -> Poly {
        auto it = d.find(v);
        if (it == d.end()) {
          throw UsageError("derivation has no image for variable " + to_string(v));
        }
        if (it->second.characteristic() != f.characteristic()) {
          throw UsageError("characteristic mismatch in derivation image");
        }
        return it->second;
      },
      f);
}

Poly partial_derivative(const Poly& f, VarId v) {
  Poly out(f.characteristic());
  for (const auto& [m, c] : f.terms()) {
    const unsigned e = m.exponent(v);
    if (e == 0) continue;
    Monomial rest = m;
    rest.set_exponent(v, e - 1);
    out.add_term(rest, c * FieldScalar(f.characteristic(), static_cast<long>(e)));
  }
  return out;
}

Poly frobenius_coords(const Poly& f, Characteristic p) {
  if (p == 0 || !is_prime(p)) throw UsageError("frobenius_coords needs a prime p");
  if (f.characteristic() != p) throw UsageError("frobenius_coords: characteristic mismatch");
  Poly out(p);
  for (const auto& [m, c] : f.terms()) {
    Monomial u;
    for (const auto& [v, e] : m.factors()) {
      if (e % p != 0) {
        throw NotAPthPower("exponent " + std::to_string(e) + " of " + to_string(v) +
                           " is not divisible by " + std::to_string(p));
      }
      u.set_exponent(v, e / p);
    }
    out.add_term(u, c);
  }
  return out;
}

std::optional<Poly> divide_exact(const Poly& f, const Poly& g) {
  if (f.characteristic() != g.characteristic()) {
    throw UsageError("divide_exact: characteristic mismatch");
  }
  if (g.is_zero()) throw UsageError("divide_exact: division by zero");
  const auto& [lm, lc] = g.leading_term();
  const FieldScalar lc_inv = lc.inverse();
  Poly rest = f;
  Poly quotient(f.characteristic());
  while (!rest.is_zero()) {
    const auto [rm, rc] = rest.leading_term();
    if (!lm.divides(rm)) return std::nullopt;
    Poly step = Poly::term(rc * lc_inv, lm.quotient_of(rm));
    quotient += step;
    rest -= step * g;
  }
  return quotient;
}

Poly substitute(const Poly& f, const std::map<VarId, Poly>& images) {
  const Characteristic p = f.characteristic();
  Poly out(p);
  for (const auto& [m, c] : f.terms()) {
    Poly acc = Poly::constant(c);
    Monomial kept;
    for (const auto& [v, e] : m.factors()) {
      auto it = images.find(v);
      if (it == images.end()) {
        kept.set_exponent(v, e);
      } else {
        acc = acc * poly_pow(it->second, e);
      }
    }
    acc = acc * Poly::term(FieldScalar::one(p), kept);
    out += acc;
  }
  return out;
}

Poly map_coefficients(const Poly& f, Characteristic target,
                      const std::function<FieldScalar(const FieldScalar&)>& fn) {
  Poly out(target);
  for (const auto& [m, c] : f.terms()) out.add_term(m, fn(c));
  return out;
}

nlohmann::ordered_json to_json(const Poly& f) {
  nlohmann::ordered_json j;
  j["char"] = f.characteristic();
  auto terms = nlohmann::ordered_json::array();
  for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
    nlohmann::ordered_json t;
    t["coeff"] = it->second.to_string();
    auto vars = nlohmann::ordered_json::array();
    for (const auto& [v, e] : it->first.factors()) vars.push_back({v.row, v.col, e});
    t["vars"] = std::move(vars);
    terms.push_back(std::move(t));
  }
  j["terms"] = std::move(terms);
  return j;
}

Poly poly_from_json(const nlohmann::json& j) {
  try {
    const auto p = j.at("char").get<Characteristic>();
    if (p != 0 && !is_prime(p)) throw UsageError("char must be 0 or a prime");
    Poly out(p);
    for (const auto& t : j.at("terms")) {
      Monomial m;
      for (const auto& v : t.at("vars")) {
        const VarId id{v.at(0).get<int>(), v.at(1).get<int>()};
        const unsigned e = v.at(2).get<unsigned>();
        if (e == 0) throw UsageError("zero exponent in serialized monomial");
        m.set_exponent(id, m.exponent(id) + e);
      }
      out.add_term(m, FieldScalar::parse(p, t.at("coeff").get<std::string>()));
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("malformed polynomial JSON: ") + e.what());
  }
}

}  // namespace borel
