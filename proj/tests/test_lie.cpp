#include <doctest.h>

#include "borel/errors.hpp"
#include "borel/invariants.hpp"
#include "borel/lie.hpp"
#include "support.hpp"

using namespace borel;
using borel::testing::var;

TEST_CASE("matrix unit brackets") {
  const auto e = [](int i, int j) { return LieElem::unit(4, 0, i, j); };
  CHECK(bracket(e(1, 2), e(2, 3)) == e(1, 3));
  CHECK(bracket(e(2, 3), e(1, 2)) == LieElem(4, 0) - e(1, 3));
  CHECK(bracket(e(1, 1), e(1, 2)) == e(1, 2));
  CHECK(bracket(e(1, 2), e(3, 4)).is_zero());
  CHECK(bracket_variables(VarId{1, 2}, VarId{2, 1}, 0) == var(0, 1, 1) - var(0, 2, 2));
}

TEST_CASE("Jacobi identity on basis triples") {
  for (Characteristic p : {0U, 2U}) {
    const auto xs = basis(3, p, Subalgebra::g);
    for (const auto& a : xs) {
      for (const auto& b : xs) {
        for (const auto& c : xs) {
          const LieElem j = bracket(a, bracket(b, c)) + bracket(b, bracket(c, a)) + bracket(c, bracket(a, b));
          CHECK(j.is_zero());
        }
      }
    }
  }
}

TEST_CASE("bases of g, b and n") {
  CHECK(basis(4, 0, Subalgebra::g).size() == 10);
  CHECK(basis(4, 0, Subalgebra::b).size() == 9);
  CHECK(basis(4, 0, Subalgebra::n).size() == 6);
  for (const auto& x : basis(4, 0, Subalgebra::b)) CHECK(x.in_b());
  CHECK(LieElem::epsilon(3, 0, 1) == LieElem::unit(3, 0, 1, 1) - LieElem::unit(3, 0, 3, 3));
}

TEST_CASE("adjoint action is a derivation matching the Poisson bracket") {
  const Poly f = var(0, 1, 2) * var(0, 2, 3) + poly_pow(var(0, 1, 3), 2);
  for (const auto& x : basis(3, 0, Subalgebra::g)) {
    CHECK(adjoint_apply(x, f) == poisson(x.to_poly(), f));
  }
  const LieElem e12 = LieElem::unit(3, 0, 1, 2);
  CHECK(adjoint_apply(e12, var(0, 2, 3)) == var(0, 1, 3));
}

TEST_CASE("Poisson bracket is antisymmetric and satisfies Jacobi") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const Poly f = borel::testing::random_poly(rng, 0, 3, 3, 2);
    const Poly g = borel::testing::random_poly(rng, 0, 3, 3, 2);
    const Poly h = borel::testing::random_poly(rng, 0, 3, 2, 2);
    CHECK(poisson(f, g) == -poisson(g, f));
    CHECK((poisson(f, poisson(g, h)) + poisson(g, poisson(h, f)) + poisson(h, poisson(f, g))).is_zero());
    CHECK(poisson(f, g * h) == poisson(f, g) * h + g * poisson(f, h));
  }
}

TEST_CASE("weights of semi-invariants") {
  const Poly c1 = build_C(4, 1, 0);
  const Weight w = weight_of(c1, Algebra::g, 4);
  CHECK(w.values[0] == FieldScalar(0, 1));
  CHECK(w.values[1].is_zero());
  CHECK(w.values[3] == FieldScalar(0, -1));
  CHECK(weight_of(c1 * c1, Algebra::g, 4) == w + w);
  CHECK(weight_of(build_c0(4, 0), Algebra::g, 4).is_zero());

  const Weight wb = weight_of(c1, Algebra::b, 4);
  CHECK(wb.values.size() == 3);
  CHECK(wb.values[0] == FieldScalar(0, 2));
  CHECK(wb.values[1] == FieldScalar(0, 1));

  CHECK_THROWS_AS(weight_of(var(0, 1, 2), Algebra::g, 3), NotSemiInvariant);
  CHECK(eigenvalue(LieElem::unit(3, 0, 1, 1), var(0, 1, 2)) == FieldScalar(0, 1));
  CHECK_FALSE(eigenvalue(LieElem::unit(3, 0, 1, 2), var(0, 2, 3)).has_value());
}
