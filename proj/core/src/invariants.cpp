#include "borel/invariants.hpp"

#include <sstream>

#include "borel/errors.hpp"

namespace borel {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw UsageError(what);
}

void check_size(int n) {
  require(n >= 1 && n <= kMaxN, "n must lie in 1.." + std::to_string(kMaxN));
}

void check_prime(unsigned p) {
  require(p > 0 && is_prime(p), "p must be a prime, got " + std::to_string(p));
}

Poly var(Characteristic p, int i, int j) { return Poly::variable(p, VarId{i, j}); }

// Rows 1..k, columns n-k+1..n.
std::vector<std::vector<Poly>> right_upper_block(int n, int k, Characteristic p) {
  std::vector<std::vector<Poly>> m(static_cast<std::size_t>(k));
  for (int r = 1; r <= k; ++r) {
    for (int c = n - k + 1; c <= n; ++c) m[static_cast<std::size_t>(r - 1)].push_back(var(p, r, c));
  }
  return m;
}

}  // namespace

std::string to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::c0:
      return "c0";
    case GeneratorKind::C:
      return "C";
    case GeneratorKind::D:
      return "D";
    case GeneratorKind::T_minor:
      return "T_minor";
    case GeneratorKind::S_minor:
      return "S_minor";
    case GeneratorKind::T:
      return "T";
    case GeneratorKind::M:
      return "M";
    case GeneratorKind::c_kl:
      return "c_kl";
    case GeneratorKind::D_B:
      return "D_B";
    case GeneratorKind::M_B:
      return "M_B";
    case GeneratorKind::c_B_kl:
      return "c_B_kl";
  }
  return "?";
}

GeneratorKind parse_generator_kind(std::string_view text) {
  for (auto kind : {GeneratorKind::c0, GeneratorKind::C, GeneratorKind::D, GeneratorKind::T_minor,
                    GeneratorKind::S_minor, GeneratorKind::T, GeneratorKind::M,
                    GeneratorKind::c_kl, GeneratorKind::D_B, GeneratorKind::M_B,
                    GeneratorKind::c_B_kl}) {
    if (to_string(kind) == text) return kind;
  }
  throw UsageError("unknown generator kind '" + std::string(text) + "'");
}

std::string to_string(const GeneratorId& id) {
  std::ostringstream os;
  os << to_string(id.kind);
  switch (id.kind) {
    case GeneratorKind::c0:
      break;
    case GeneratorKind::C:
    case GeneratorKind::D:
    case GeneratorKind::T:
    case GeneratorKind::M:
    case GeneratorKind::D_B:
    case GeneratorKind::M_B:
      os << "(k=" << id.k << ")";
      break;
    case GeneratorKind::T_minor:
    case GeneratorKind::S_minor:
      os << "(k=" << id.k << ",i=" << id.i << ",j=" << id.j << ")";
      break;
    case GeneratorKind::c_kl:
    case GeneratorKind::c_B_kl:
      os << "(k=" << id.k << ",l=" << id.l << ")";
      break;
  }
  return os.str();
}

void validate(const GeneratorId& id, int n, unsigned p) {
  check_size(n);
  const int h = h_of(n);
  const int half = n / 2;
  const auto in = [](int v, int lo, int hi) { return v >= lo && v <= hi; };
  const std::string name = to_string(id);
  switch (id.kind) {
    case GeneratorKind::c0:
      return;
    case GeneratorKind::C:
      require(in(id.k, 1, half), name + ": need 1 <= k <= floor(n/2)");
      return;
    case GeneratorKind::M:
      require(in(id.k, 1, half), name + ": need 1 <= k <= floor(n/2)");
      return;
    case GeneratorKind::D:
    case GeneratorKind::T:
      require(in(id.k, 1, h), name + ": need 1 <= k <= h");
      return;
    case GeneratorKind::T_minor:
      require(in(id.k, 1, h) && in(id.i, 1, id.k) && in(id.j, id.k + 1, n - id.k),
              name + ": need 1 <= i <= k, k+1 <= j <= n-k");
      return;
    case GeneratorKind::S_minor:
      require(in(id.k, 1, half) && in(id.i, 1, id.k) && in(id.j, id.k, n - id.k),
              name + ": need 1 <= i <= k, k <= j <= n-k");
      return;
    case GeneratorKind::c_kl:
      check_prime(p);
      require(in(id.k, 1, h) && in(id.l, 0, static_cast<int>(p) - 1),
              name + ": need 1 <= k <= h, 0 <= l <= p-1");
      return;
    case GeneratorKind::D_B:
    case GeneratorKind::M_B:
      require(in(id.k, 1, h), name + ": need 1 <= k <= h");
      if (p != 0 && n % static_cast<int>(p) == 0) {
        throw NMustBeInvertible(name + ": p divides n");
      }
      return;
    case GeneratorKind::c_B_kl:
      check_prime(p);
      require(in(id.k, 1, h) && in(id.l, 0, static_cast<int>(p) - 1),
              name + ": need 1 <= k <= h, 0 <= l <= p-1");
      if (n % static_cast<int>(p) == 0) throw NMustBeInvertible(name + ": p divides n");
      return;
  }
}

IdentityCheck compare_polys(const Poly& lhs, const Poly& rhs) {
  const Poly diff = lhs - rhs;
  if (diff.is_zero()) return {true, ""};
  const auto& [m, c] = diff.leading_term();
  return {false, "first differing term: " + Poly::term(c, m).to_string()};
}

Poly build_c0(int n, Characteristic p) {
  check_size(n);
  Poly out(p);
  for (int i = 1; i <= n; ++i) out += var(p, i, i);
  return out;
}

Poly build_C(int n, int k, Characteristic p) {
  validate({GeneratorKind::C, k}, n, p);
  return det_poly_matrix(right_upper_block(n, k, p));
}

LieElem build_D(int n, int k, Characteristic p) {
  validate({GeneratorKind::D, k}, n, p);
  LieElem out(n, p);
  for (int i = 1; i <= k; ++i) {
    out.add(i, i, FieldScalar::one(p));
    out.add(n - i + 1, n - i + 1, FieldScalar::one(p));
  }
  return out;
}

Poly block_with_row(int n, int k, int i, int source_row, Characteristic p) {
  check_size(n);
  require(k >= 1 && k <= n && i >= 1 && i <= k && source_row >= 1 && source_row <= n,
          "block_with_row: index out of range");
  auto m = right_upper_block(n, k, p);
  auto& row = m[static_cast<std::size_t>(i - 1)];
  for (int c = 0; c < k; ++c) row[static_cast<std::size_t>(c)] = var(p, source_row, n - k + 1 + c);
  return det_poly_matrix(m);
}

Poly block_with_column(int n, int k, int i, int source_row, Characteristic p) {
  check_size(n);
  require(k >= 1 && k <= n && i >= 1 && i <= k && source_row >= 1 && source_row <= n,
          "block_with_column: index out of range");
  auto m = right_upper_block(n, k, p);
  for (int r = 0; r < k; ++r) {
    m[static_cast<std::size_t>(r)][static_cast<std::size_t>(i - 1)] = var(p, source_row, r + 1);
  }
  return det_poly_matrix(m);
}

Poly build_T_minor(int n, int k, int i, int j, Characteristic p) {
  validate({GeneratorKind::T_minor, k, 0, i, j}, n, p);
  return block_with_row(n, k, i, j, p);
}

Poly build_S_minor(int n, int k, int i, int j, Characteristic p) {
  validate({GeneratorKind::S_minor, k, 0, i, j}, n, p);
  return block_with_column(n, k, i, n - j + 1, p);
}

Poly build_T(int n, int k, Characteristic p) {
  validate({GeneratorKind::T, k}, n, p);
  Poly out(p);
  for (int i = 1; i <= k; ++i) {
    for (int j = k + 1; j <= n - k; ++j) out += var(p, i, j) * block_with_row(n, k, i, j, p);
  }
  return out;
}

Poly build_M(int n, int k, Characteristic p) {
  validate({GeneratorKind::M, k}, n, p);
  if (n % 2 == 0 && k == n / 2) return Poly(p);
  return build_C(n, k, p) * build_D(n, k, p).to_poly() + build_T(n, k, p);
}

CarrySplit rs_decompose(int i, int j, unsigned p) {
  check_prime(p);
  const int pi = static_cast<int>(p);
  require(i >= 0 && i < pi && j >= 0 && j < pi, "rs_decompose: need 0 <= i, j <= p-1");
  const int sum = i + j;
  return {sum / pi, sum % pi};
}

Poly build_c_kl(int n, int k, int l, unsigned p, Characteristic field) {
  validate({GeneratorKind::c_kl, k, l}, n, p);
  require(field == 0 || field == p, "build_c_kl: field must have characteristic 0 or p");
  const auto pl = static_cast<unsigned>(static_cast<int>(p) - l);
  return poly_pow(build_C(n, k, field), pl) *
         poly_pow(build_M(n, k, field), static_cast<unsigned>(l));
}

IdentityCheck check_relation(int n, int k, int i, int j, unsigned p) {
  const CarrySplit sr = rs_decompose(i, j, p);
  const Poly lhs = build_c_kl(n, k, i, p) * build_c_kl(n, k, j, p);
  const Poly rhs = build_c_kl(n, k, sr.r, p) *
                   poly_pow(build_C(n, k, p), p * static_cast<unsigned>(1 - sr.s)) *
                   poly_pow(build_M(n, k, p), p * static_cast<unsigned>(sr.s));
  return compare_polys(lhs, rhs);
}

CentralDecomposition decompose_central(const LieElem& x) {
  if (!x.is_diagonal()) throw UsageError("decompose_central: element is not diagonal");
  const int n = x.n();
  const Characteristic p = x.characteristic();
  if (p != 0 && n % static_cast<int>(p) == 0) {
    throw NMustBeInvertible("decompose_central: p = " + std::to_string(p) + " divides n = " +
                            std::to_string(n));
  }
  const FieldScalar alpha = x.trace() / FieldScalar(p, n);
  LieElem rest = x;
  for (int i = 1; i <= n; ++i) rest.add(i, i, -alpha);
  return {rest, alpha};
}

LieElem build_D_B(int n, int k, Characteristic p) {
  validate({GeneratorKind::D_B, k}, n, p);
  return decompose_central(build_D(n, k, p)).trace_zero;
}

FieldScalar central_coefficient(int n, int k, Characteristic p) {
  validate({GeneratorKind::D_B, k}, n, p);
  return decompose_central(build_D(n, k, p)).alpha;
}

Poly build_M_B(int n, int k, Characteristic p) {
  validate({GeneratorKind::M_B, k}, n, p);
  return build_C(n, k, p) * build_D_B(n, k, p).to_poly() + build_T(n, k, p);
}

Poly build_c_B_kl(int n, int k, int l, unsigned p, Characteristic field) {
  validate({GeneratorKind::c_B_kl, k, l}, n, p);
  require(field == 0 || field == p, "build_c_B_kl: field must have characteristic 0 or p");
  const auto pl = static_cast<unsigned>(static_cast<int>(p) - l);
  return poly_pow(build_C(n, k, field), pl) *
         poly_pow(build_M_B(n, k, field), static_cast<unsigned>(l));
}

namespace {

Poly expand_with(int n, int k, int l, unsigned p, bool printed) {
  validate({GeneratorKind::c_B_kl, k, l}, n, p);
  const FieldScalar alpha = central_coefficient(n, k, p);
  const Poly c0 = build_c0(n, p);
  Poly out(p);
  long binom = 1;
  for (int i = 0; i <= l; ++i) {
    if (i > 0) binom = binom * (l - i + 1) / i;
    Poly coeff = build_c_B_kl(n, k, i, p);
    if (printed) coeff = poly_pow(coeff, static_cast<unsigned>(i));
    Poly term = coeff * poly_pow(c0, static_cast<unsigned>(l - i));
    term *= alpha.pow(static_cast<std::uint64_t>(l - i)) * FieldScalar(p, binom);
    out += term;
  }
  return out;
}

}  // namespace

Poly expand_c_kl_over_c0(int n, int k, int l, unsigned p) { return expand_with(n, k, l, p, false); }

Poly expand_c_kl_over_c0_printed(int n, int k, int l, unsigned p) {
  return expand_with(n, k, l, p, true);
}

Poly build_generator(const GeneratorId& id, int n, unsigned p, Characteristic field) {
  validate(id, n, p);
  require(field == 0 || field == p, "build_generator: field must have characteristic 0 or p");
  switch (id.kind) {
    case GeneratorKind::c0:
      return build_c0(n, field);
    case GeneratorKind::C:
      return build_C(n, id.k, field);
    case GeneratorKind::D:
      return build_D(n, id.k, field).to_poly();
    case GeneratorKind::T_minor:
      return build_T_minor(n, id.k, id.i, id.j, field);
    case GeneratorKind::S_minor:
      return build_S_minor(n, id.k, id.i, id.j, field);
    case GeneratorKind::T:
      return build_T(n, id.k, field);
    case GeneratorKind::M:
      return build_M(n, id.k, field);
    case GeneratorKind::c_kl:
      return build_c_kl(n, id.k, id.l, p, field);
    case GeneratorKind::D_B:
      return build_D_B(n, id.k, field).to_poly();
    case GeneratorKind::M_B:
      return build_M_B(n, id.k, field);
    case GeneratorKind::c_B_kl:
      return build_c_B_kl(n, id.k, id.l, p, field);
  }
  throw UsageError("unknown generator kind");
}

std::vector<GeneratorId> all_generators(int n, unsigned p) {
  check_size(n);
  const int h = h_of(n);
  const bool b_side = p == 0 || n % static_cast<int>(p) != 0;
  std::vector<GeneratorId> out;
  out.push_back({GeneratorKind::c0});
  for (int k = 1; k <= n / 2; ++k) out.push_back({GeneratorKind::C, k});
  for (int k = 1; k <= h; ++k) {
    out.push_back({GeneratorKind::D, k});
    out.push_back({GeneratorKind::T, k});
    out.push_back({GeneratorKind::M, k});
    for (int i = 1; i <= k; ++i) {
      for (int j = k + 1; j <= n - k; ++j) out.push_back({GeneratorKind::T_minor, k, 0, i, j});
    }
  }
  for (int k = 1; k <= n / 2; ++k) {
    for (int i = 1; i <= k; ++i) {
      for (int j = k; j <= n - k; ++j) out.push_back({GeneratorKind::S_minor, k, 0, i, j});
    }
  }
  if (b_side) {
    for (int k = 1; k <= h; ++k) {
      out.push_back({GeneratorKind::D_B, k});
      out.push_back({GeneratorKind::M_B, k});
    }
  }
  if (p > 0) {
    for (int k = 1; k <= h; ++k) {
      for (int l = 0; l < static_cast<int>(p); ++l) {
        out.push_back({GeneratorKind::c_kl, k, l});
        if (b_side) out.push_back({GeneratorKind::c_B_kl, k, l});
      }
    }
  }
  return out;
}

}  // namespace borel
