#include <doctest.h>

#include <algorithm>
#include <random>

#include "borel/errors.hpp"
#include "borel/poly.hpp"
#include "support.hpp"

using namespace borel;
using borel::testing::var;

TEST_CASE("field scalars are exact in both characteristics") {
  const FieldScalar a = FieldScalar::parse(0, "2/3");
  const FieldScalar b = FieldScalar::parse(0, "-5/6");
  CHECK((a + b).to_string() == "-1/6");
  CHECK((a * b).to_string() == "-5/9");
  CHECK((a / b).to_string() == "-4/5");

  const FieldScalar x(7, 3);
  CHECK((x * x.inverse()).is_one());
  CHECK((FieldScalar(7, 7)).is_zero());
  CHECK(FieldScalar(7, -1).residue() == 6);
  CHECK(FieldScalar::parse(5, "2/3").residue() == 4);
  for (long v = 0; v < 5; ++v) {
    FieldScalar s = FieldScalar::zero(5);
    for (int i = 0; i < 5; ++i) s += FieldScalar(5, v);
    CHECK(s.is_zero());
  }
  CHECK_THROWS_AS(FieldScalar(2, 1) + FieldScalar(3, 1), UsageError);
  CHECK_THROWS_AS(FieldScalar::zero(3).inverse(), Error);
}

TEST_CASE("polynomial ring axioms on random inputs") {
  std::mt19937 rng(11);
  for (Characteristic p : {0U, 2U, 3U}) {
    for (int trial = 0; trial < 20; ++trial) {
      const Poly a = borel::testing::random_poly(rng, p, 3, 4, 3);
      const Poly b = borel::testing::random_poly(rng, p, 3, 4, 3);
      const Poly c = borel::testing::random_poly(rng, p, 3, 4, 3);
      CHECK(a + b == b + a);
      CHECK(a * b == b * a);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK((a - a).is_zero());
      CHECK(poly_arith(a, b, PolyOp::mul) == a * b);
      CHECK(poly_pow(a, 3) == a * a * a);
    }
  }
}

TEST_CASE("zero coefficients are never stored") {
  Poly f = var(0, 1, 2) + var(0, 2, 3);
  f -= var(0, 2, 3);
  CHECK(f.size() == 1);
  CHECK((var(2, 1, 1) + var(2, 1, 1)).is_zero());
  CHECK_THROWS_AS(var(2, 1, 1) + var(3, 1, 1), UsageError);
}

TEST_CASE("canonical order is graded lexicographic") {
  const Monomial e11 = Monomial::of(VarId{1, 1});
  const Monomial e12 = Monomial::of(VarId{1, 2});
  const Monomial e22sq = Monomial::of(VarId{2, 2}, 2);
  CHECK(e12 < e11);
  CHECK(e11 < e22sq);
  CHECK(Monomial() < e12);
  const Poly f = var(0, 1, 2) + var(0, 1, 1) + poly_pow(var(0, 2, 2), 2);
  CHECK(f.to_string() == "e2,2^2 + e1,1 + e1,2");
}

TEST_CASE("determinant agrees with the permutation sum") {
  std::mt19937 rng(5);
  for (Characteristic p : {0U, 3U}) {
    for (int size = 1; size <= 3; ++size) {
      for (int trial = 0; trial < 15; ++trial) {
        const auto m = borel::testing::random_matrix(rng, p, size);
        CHECK(det_poly_matrix(m) == borel::testing::leibniz_det(m, p));
      }
    }
  }
  CHECK(det_poly_matrix({}) == Poly::constant(0, 1));
}

TEST_CASE("a derivation of a determinant is the sum over columns") {
  std::mt19937 rng(17);
  for (int size = 2; size <= 3; ++size) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto m = borel::testing::random_matrix(rng, 0, size);
      DerivationTable d;
      for (int i = 1; i <= 3; ++i) {
        for (int j = 1; j <= 3; ++j) d[VarId{i, j}] = borel::testing::random_poly(rng, 0, 3, 2, 1);
      }
      Poly rhs(0);
      for (int col = 0; col < size; ++col) {
        auto mc = m;
        for (auto& row : mc) row[static_cast<std::size_t>(col)] = apply_derivation(d, row[static_cast<std::size_t>(col)]);
        rhs += det_poly_matrix(mc);
      }
      CHECK(apply_derivation(d, det_poly_matrix(m)) == rhs);
    }
  }
}

TEST_CASE("partial derivatives follow the power rule") {
  const Poly f = poly_pow(var(0, 1, 2), 3) * var(0, 2, 3);
  CHECK(partial_derivative(f, VarId{1, 2}) == Poly::constant(0, 3) * poly_pow(var(0, 1, 2), 2) * var(0, 2, 3));
  CHECK(partial_derivative(f, VarId{1, 1}).is_zero());
  CHECK(partial_derivative(poly_pow(var(3, 1, 1), 3), VarId{1, 1}).is_zero());
}

TEST_CASE("Frobenius coordinates form a ring map on p-th powers") {
  std::mt19937 rng(23);
  for (Characteristic p : {2U, 3U}) {
    std::map<VarId, Poly> to_pth;
    for (int i = 1; i <= 3; ++i) {
      for (int j = 1; j <= 3; ++j) to_pth[VarId{i, j}] = poly_pow(var(p, i, j), p);
    }
    for (int trial = 0; trial < 10; ++trial) {
      const Poly f = borel::testing::random_poly(rng, p, 3, 3, 2);
      const Poly g = borel::testing::random_poly(rng, p, 3, 3, 2);
      const Poly a = substitute(f, to_pth);
      const Poly b = substitute(g, to_pth);
      CHECK(frobenius_coords(a, p) == f);
      CHECK(frobenius_coords(a + b, p) == frobenius_coords(a, p) + frobenius_coords(b, p));
      CHECK(frobenius_coords(a * b, p) == frobenius_coords(a, p) * frobenius_coords(b, p));
      CHECK(frobenius_coords(poly_pow(f, p), p) == f);
    }
    CHECK_THROWS_AS(frobenius_coords(var(p, 1, 2), p), NotAPthPower);
  }
}

TEST_CASE("exact division and substitution") {
  const Poly x = var(0, 1, 2);
  const Poly y = var(0, 2, 3);
  const Poly f = (x + y) * (x - y);
  REQUIRE(divide_exact(f, x + y).has_value());
  CHECK(*divide_exact(f, x + y) == x - y);
  CHECK_FALSE(divide_exact(f, x).has_value());
  CHECK(substitute(x * y, {{VarId{1, 2}, y}}) == y * y);
}

TEST_CASE("JSON serialization round-trips bit-exactly") {
  std::mt19937 rng(29);
  for (Characteristic p : {0U, 5U}) {
    for (int trial = 0; trial < 10; ++trial) {
      Poly f = borel::testing::random_poly(rng, p, 4, 5, 3);
      if (p == 0) f *= FieldScalar::parse(0, "-7/12");
      const std::string text = to_json(f).dump();
      const Poly g = poly_from_json(nlohmann::json::parse(text));
      CHECK(g == f);
      CHECK(to_json(g).dump() == text);
    }
  }
  const Poly c0 = var(0, 1, 1) + var(0, 2, 2);
  CHECK(to_json(c0).dump() == R"({"char":0,"terms":[{"coeff":"1","vars":[[1,1,1]]},{"coeff":"1","vars":[[2,2,1]]}]})");
}
