#include <doctest.h>

#include <random>

#include "borel/errors.hpp"
#include "borel/pbw.hpp"

using namespace borel;

namespace {

PBWElem random_elem(std::mt19937& rng, const AlgebraHandle& alg, int terms, int max_len) {
  std::uniform_int_distribution<int> letter(0, alg->dimension() - 1);
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<long> coeff(-2, 2);
  PBWElem u(alg);
  for (int t = 0; t < terms; ++t) {
    std::vector<int> w(static_cast<std::size_t>(len(rng)));
    for (int& x : w) x = letter(rng);
    u += normal_form(alg, w, FieldScalar(alg->characteristic(), coeff(rng)));
  }
  return u;
}

PBWElem word_elem(const AlgebraHandle& alg, const std::vector<int>& w) {
  PBWElem u = PBWElem::scalar(alg, FieldScalar::one(alg->characteristic()));
  for (int x : w) u = u_mul(u, PBWElem::letter(alg, x));
  return u;
}

}  // namespace

TEST_CASE("straightening a transposed pair") {
  const auto alg = PBWAlgebra::make(Algebra::g, 3, 0);
  const int e11 = alg->letter_of(1, 1);
  const int e12 = alg->letter_of(1, 2);
  const PBWElem lhs = normal_form(alg, {e12, e11}, FieldScalar::one(0));
  const PBWElem rhs = normal_form(alg, {e11, e12}, FieldScalar::one(0)) - PBWElem::letter(alg, e12);
  CHECK(lhs == rhs);
  CHECK(commutator(PBWElem::letter(alg, e11), PBWElem::letter(alg, e12)) == PBWElem::letter(alg, e12));
}

TEST_CASE("normal forms are confluent under random swap orders") {
  std::mt19937 rng(41);
  for (Algebra a : {Algebra::g, Algebra::b}) {
    for (Characteristic p : {0U, 3U}) {
      const auto alg = PBWAlgebra::make(a, 4, p);
      std::uniform_int_distribution<int> letter(0, alg->dimension() - 1);
      for (int trial = 0; trial < 40; ++trial) {
        std::vector<int> w(static_cast<std::size_t>(2 + trial % 5));
        for (int& x : w) x = letter(rng);
        const PBWElem direct = normal_form(alg, w, FieldScalar::one(p));
        CHECK(direct == word_elem(alg, w));
        std::uniform_int_distribution<std::size_t> pos(0, w.size() - 2);
        const std::size_t i = pos(rng);
        // w = u x y v = u y x v + u [x,y] v
        std::vector<int> swapped = w;
        std::swap(swapped[i], swapped[i + 1]);
        PBWElem alt = normal_form(alg, swapped, FieldScalar::one(p));
        for (const auto& [z, c] : alg->bracket(w[i], w[i + 1])) {
          std::vector<int> shorter(w.begin(), w.begin() + static_cast<long>(i));
          shorter.push_back(z);
          shorter.insert(shorter.end(), w.begin() + static_cast<long>(i) + 2, w.end());
          alt += normal_form(alg, shorter, c);
        }
        CHECK(direct == alt);
      }
    }
  }
}

TEST_CASE("multiplication is associative and gr is multiplicative") {
  std::mt19937 rng(43);
  for (Characteristic p : {0U, 2U}) {
    const auto alg = PBWAlgebra::make(Algebra::g, 3, p);
    for (int trial = 0; trial < 15; ++trial) {
      const PBWElem a = random_elem(rng, alg, 3, 3);
      const PBWElem b = random_elem(rng, alg, 3, 3);
      const PBWElem c = random_elem(rng, alg, 2, 2);
      CHECK((a * b) * c == a * (b * c));
      if (a.is_zero() || b.is_zero()) continue;
      const PBWElem ab = a * b;
      CHECK(ab.filtration_degree() <= a.filtration_degree() + b.filtration_degree());
      const Poly prod = gr_map(a) * gr_map(b);
      if (!prod.is_zero()) CHECK(gr_map(ab) == prod);
    }
  }
}

TEST_CASE("central elements of U(g)") {
  for (unsigned p : {2U, 3U}) {
    const auto alg = PBWAlgebra::make(Algebra::g, 3, p);
    const PBWElem z0 = lift_generator({GeneratorKind::c0}, 3, p, alg);
    CHECK(is_central(z0));
    for (int l = 0; l < static_cast<int>(p); ++l) {
      const PBWElem z = lift_generator({GeneratorKind::c_kl, 1, l}, 3, p, alg);
      CHECK(is_central(z));
      const Poly g = gr_map(z);
      CHECK(g == build_c_kl(3, 1, l, p));
      for (const auto& x : basis(3, p, Subalgebra::g)) CHECK(adjoint_apply(x, g).is_zero());
    }
    const auto zp = build_Zp_generators(3, p, Algebra::g);
    CHECK(zp.size() == 6);
    for (std::size_t x = 0; x < zp.size(); ++x) {
      CHECK(is_central(zp[x]));
      CHECK(gr_map(zp[x]) == poly_pow(alg->letter_poly(static_cast<int>(x)), p));
    }
  }
  CHECK_FALSE(is_central(PBWElem::letter(PBWAlgebra::make(Algebra::g, 3, 0), 1)));
}

TEST_CASE("relations in U(g)") {
  CHECK(check_relation_U(3, 1, 1, 1, 2).holds);
  CHECK(check_relation_U(4, 1, 0, 0, 3).holds);
  CHECK(check_relation_U(5, 2, 1, 2, 3).holds);
}

TEST_CASE("Borel of sl_n in U") {
  CHECK(is_central(build_zB(3, 1, 0, 2)));
  CHECK(is_central(build_zB(3, 1, 1, 2)));
  CHECK(is_central(build_zB(5, 2, 2, 3)));
  const auto alg = PBWAlgebra::make(Algebra::b, 5, 3);
  for (int k = 1; k <= 2; ++k) {
    const PBWElem c = lift_generator({GeneratorKind::C, k}, 5, 3, alg);
    const PBWElem m = lift_generator({GeneratorKind::M_B, k}, 5, 3, alg);
    CHECK(c * m == m * c);
  }
  for (const auto& z : build_Zp_generators(5, 3, Algebra::b)) CHECK(is_central(z));
  CHECK_THROWS_AS(PBWAlgebra::make(Algebra::b, 4, 2), NMustBeInvertible);
  CHECK_THROWS_AS(build_zB(3, 1, 1, 3), NMustBeInvertible);
}

TEST_CASE("constructed semi-central elements commute") {
  for (int n = 3; n <= 5; ++n) {
    for (Characteristic p : {0U, 2U, 3U}) {
      const auto alg = PBWAlgebra::make(Algebra::g, n, p);
      std::vector<PBWElem> gens = {lift_generator({GeneratorKind::c0}, n, p, alg)};
      for (int k = 1; k <= n / 2; ++k) gens.push_back(lift_generator({GeneratorKind::C, k}, n, p, alg));
      for (int k = 1; k <= h_of(n); ++k) gens.push_back(lift_generator({GeneratorKind::M, k}, n, p, alg));
      for (std::size_t a = 0; a < gens.size(); ++a) {
        for (std::size_t b = a + 1; b < gens.size(); ++b) CHECK(commutator(gens[a], gens[b]).is_zero());
      }
    }
  }
}

TEST_CASE("entries of a block commute, so the determinant lift is order-free") {
  const auto alg = PBWAlgebra::make(Algebra::g, 6, 0);
  for (int k = 1; k <= 3; ++k) {
    for (int r1 = 1; r1 <= k; ++r1) {
      for (int c1 = 7 - k; c1 <= 6; ++c1) {
        for (int r2 = 1; r2 <= k; ++r2) {
          for (int c2 = 7 - k; c2 <= 6; ++c2) {
            CHECK(alg->bracket(alg->letter_of(r1, c1), alg->letter_of(r2, c2)).empty());
          }
        }
      }
    }
  }
}

TEST_CASE("semi-central weights") {
  const auto alg = PBWAlgebra::make(Algebra::g, 4, 0);
  const PBWElem c1 = lift_generator({GeneratorKind::C, 1}, 4, 0, alg);
  CHECK(semicentral_weight(c1) == weight_of(build_C(4, 1, 0), Algebra::g, 4));
  const PBWElem m1 = lift_generator({GeneratorKind::M, 1}, 4, 0, alg);
  CHECK(semicentral_weight(m1) == weight_of(build_M(4, 1, 0), Algebra::g, 4));
  CHECK_THROWS_AS(semicentral_weight(PBWElem::letter(alg, alg->letter_of(1, 2))), NotSemiCentral);
}

TEST_CASE("PBW JSON round trip") {
  const PBWElem z = lift_generator({GeneratorKind::c_kl, 1, 1}, 3, 2);
  const std::string text = to_json(z).dump();
  const PBWElem back = pbw_from_json(nlohmann::json::parse(text));
  CHECK(back == z);
  CHECK(to_json(back).dump() == text);
  const PBWElem zb = build_zB(5, 1, 1, 3);
  CHECK(pbw_from_json(nlohmann::json::parse(to_json(zb).dump())) == zb);
}
