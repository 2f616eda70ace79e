#include "borel/linalg.hpp"

#include <algorithm>
#include <map>
#include <variant>

#include "borel/errors.hpp"

namespace borel {

namespace {

// Characteristics fit in 32 bits, so residue products fit in 64.
std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) { return (a * b) % p; }

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  while (e != 0) {
    if (e & 1U) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1U;
  }
  return r;
}

struct ModOps {
  using Elem = std::uint64_t;
  std::uint64_t p;

  bool is_zero(Elem a) const { return a == 0; }

  // x*a - y*b
  std::vector<std::pair<int, Elem>> combine(const std::vector<std::pair<int, Elem>>& a, Elem x,
                                            const std::vector<std::pair<int, Elem>>& b,
                                            Elem y) const {
    std::vector<std::pair<int, Elem>> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0;
    std::size_t j = 0;
    const Elem ny = (p - y % p) % p;
    while (i < a.size() || j < b.size()) {
      if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
        out.emplace_back(a[i].first, mulmod(a[i].second, x, p));
        ++i;
      } else if (i == a.size() || b[j].first < a[i].first) {
        out.emplace_back(b[j].first, mulmod(b[j].second, ny, p));
        ++j;
      } else {
        const Elem v = (mulmod(a[i].second, x, p) + mulmod(b[j].second, ny, p)) % p;
        if (v != 0) out.emplace_back(a[i].first, v);
        ++i;
        ++j;
      }
    }
    std::erase_if(out, [](const auto& e) { return e.second == 0; });
    return out;
  }

  void normalize(std::vector<std::pair<int, Elem>>& row) const {
    if (row.empty()) return;
    const Elem inv = powmod(row.front().second, p - 2, p);
    for (auto& e : row) e.second = mulmod(e.second, inv, p);
  }

  // Reduce a by pivot row b at column c (b monic there).
  std::vector<std::pair<int, Elem>> eliminate(const std::vector<std::pair<int, Elem>>& a, Elem ac,
                                              const std::vector<std::pair<int, Elem>>& b, Elem) const {
    return combine(a, 1, b, ac);
  }

  FieldScalar ratio(Elem num, Elem den) const {
    return FieldScalar(static_cast<Characteristic>(p),
                       static_cast<long>(mulmod(num, powmod(den, p - 2, p), p)));
  }
};

struct IntOps {
  using Elem = mpz_class;

  bool is_zero(const Elem& a) const { return a == 0; }

  std::vector<std::pair<int, Elem>> combine(const std::vector<std::pair<int, Elem>>& a, const Elem& x,
                                            const std::vector<std::pair<int, Elem>>& b,
                                            const Elem& y) const {
    std::vector<std::pair<int, Elem>> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.size() || j < b.size()) {
      if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
        out.emplace_back(a[i].first, a[i].second * x);
        ++i;
      } else if (i == a.size() || b[j].first < a[i].first) {
        out.emplace_back(b[j].first, -(b[j].second * y));
        ++j;
      } else {
        Elem v = a[i].second * x - b[j].second * y;
        if (v != 0) out.emplace_back(a[i].first, std::move(v));
        ++i;
        ++j;
      }
    }
    return out;
  }

  void normalize(std::vector<std::pair<int, Elem>>& row) const {
    if (row.empty()) return;
    mpz_class g = 0;
    for (const auto& e : row) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.second.get_mpz_t());
      if (g == 1) break;
    }
    if (row.front().second < 0) g = -g;
    if (g != 1) {
      for (auto& e : row) mpz_divexact(e.second.get_mpz_t(), e.second.get_mpz_t(), g.get_mpz_t());
    }
  }

  std::vector<std::pair<int, Elem>> eliminate(const std::vector<std::pair<int, Elem>>& a, const Elem& ac,
                                              const std::vector<std::pair<int, Elem>>& b,
                                              const Elem& bc) const {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), ac.get_mpz_t(), bc.get_mpz_t());
    auto out = combine(a, bc / g, b, ac / g);
    normalize(out);
    return out;
  }

  FieldScalar ratio(const Elem& num, const Elem& den) const { return FieldScalar(0, mpq_class(num, den)); }
};

template <class Ops>
class EchelonT {
 public:
  using Elem = typename Ops::Elem;
  using Row = std::vector<std::pair<int, Elem>>;

  EchelonT(Ops ops, int columns) : ops_(std::move(ops)), columns_(columns) {}

  static const Elem* find(const Row& r, int col) {
    auto it = std::lower_bound(r.begin(), r.end(), col,
                               [](const auto& e, int c) { return e.first < c; });
    return it != r.end() && it->first == col ? &it->second : nullptr;
  }

  bool insert(Row row) {
    std::vector<std::pair<int, Elem>> hits;
    for (const auto& [c, v] : row) {
      if (pivot_.contains(c)) hits.emplace_back(c, v);
    }
    // Pivot rows vanish on every other pivot column, so the hits stay valid.
    for (const auto& [c, v] : hits) {
      const Row& pr = rows_[pivot_.at(c)];
      const Elem* current = find(row, c);
      if (current == nullptr) continue;
      row = ops_.eliminate(row, *current, pr, pr.front().second);
    }
    ops_.normalize(row);
    if (row.empty()) return false;
    const int c = row.front().first;
    for (Row& q : rows_) {
      const Elem* qc = find(q, c);
      if (qc == nullptr) continue;
      q = ops_.eliminate(q, *qc, row, row.front().second);
    }
    pivot_.emplace(c, rows_.size());
    rows_.push_back(std::move(row));
    return true;
  }

  std::size_t rank() const { return rows_.size(); }

  std::vector<int> pivot_columns() const {
    std::vector<int> out;
    for (const auto& [c, r] : pivot_) out.push_back(c);
    return out;
  }

  std::vector<SparseVec> kernel(Characteristic p) const {
    std::map<int, SparseVec> by_free;
    for (int f = 0; f < columns_; ++f) {
      if (!pivot_.contains(f)) by_free[f].emplace_back(f, FieldScalar::one(p));
    }
    for (const auto& [pc, idx] : pivot_) {
      const Row& r = rows_[idx];
      for (std::size_t t = 1; t < r.size(); ++t) {
        by_free.at(r[t].first).emplace_back(pc, -ops_.ratio(r[t].second, r.front().second));
      }
    }
    std::vector<SparseVec> out;
    out.reserve(by_free.size());
    for (auto& [f, v] : by_free) {
      std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      out.push_back(std::move(v));
    }
    return out;
  }

 private:
  Ops ops_;
  int columns_;
  std::vector<Row> rows_;
  std::map<int, std::size_t> pivot_;
};

}  // namespace

struct Echelon::Impl {
  std::variant<EchelonT<ModOps>, EchelonT<IntOps>> e;
};

Echelon::Echelon(Characteristic p, int columns) : p_(p), columns_(columns) {
  if (columns < 0) throw UsageError("negative column count");
  if (p == 0) {
    impl_ = std::make_unique<Impl>(Impl{EchelonT<IntOps>(IntOps{}, columns)});
  } else {
    if (!is_prime(p)) throw UsageError("characteristic must be 0 or a prime");
    impl_ = std::make_unique<Impl>(Impl{EchelonT<ModOps>(ModOps{p}, columns)});
  }
}

Echelon::~Echelon() = default;
Echelon::Echelon(Echelon&&) noexcept = default;
Echelon& Echelon::operator=(Echelon&&) noexcept = default;

bool Echelon::insert(const SparseVec& row) {
  for (std::size_t t = 0; t < row.size(); ++t) {
    if (row[t].first < 0 || row[t].first >= columns_) throw UsageError("column out of range");
    if (t > 0 && row[t - 1].first >= row[t].first) throw UsageError("row columns must increase");
    if (row[t].second.characteristic() != p_) throw UsageError("characteristic mismatch");
  }
  if (p_ != 0) {
    EchelonT<ModOps>::Row r;
    for (const auto& [c, v] : row) {
      if (!v.is_zero()) r.emplace_back(c, v.residue());
    }
    return std::get<EchelonT<ModOps>>(impl_->e).insert(std::move(r));
  }
  mpz_class den = 1;
  for (const auto& [c, v] : row) {
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.rational().get_den_mpz_t());
  }
  EchelonT<IntOps>::Row r;
  for (const auto& [c, v] : row) {
    if (v.is_zero()) continue;
    r.emplace_back(c, v.rational().get_num() * (den / v.rational().get_den()));
  }
  return std::get<EchelonT<IntOps>>(impl_->e).insert(std::move(r));
}

std::size_t Echelon::rank() const {
  return std::visit([](const auto& e) { return e.rank(); }, impl_->e);
}

std::vector<int> Echelon::pivot_columns() const {
  return std::visit([](const auto& e) { return e.pivot_columns(); }, impl_->e);
}

std::vector<SparseVec> Echelon::kernel() const {
  return std::visit([this](const auto& e) { return e.kernel(p_); }, impl_->e);
}

std::vector<SparseVec> kernel_basis(Characteristic p, int columns, const std::vector<SparseVec>& rows) {
  Echelon e(p, columns);
  for (const auto& r : rows) e.insert(r);
  return e.kernel();
}

}  // namespace borel
