#pragma once

#include <random>
#include <vector>

#include "borel/poly.hpp"

namespace borel::testing {

inline Poly var(Characteristic p, int i, int j) { return Poly::variable(p, VarId{i, j}); }

/// Sparse random polynomial in the matrix variables of a small n, with small
/// integer coefficients and degree at most max_degree.
inline Poly random_poly(std::mt19937& rng, Characteristic p, int n, int terms, int max_degree) {
  std::uniform_int_distribution<int> idx(1, n);
  std::uniform_int_distribution<int> deg(0, max_degree);
  std::uniform_int_distribution<long> coeff(-3, 3);
  Poly f(p);
  for (int t = 0; t < terms; ++t) {
    Monomial m;
    const int d = deg(rng);
    for (int s = 0; s < d; ++s) m = m * Monomial::of(VarId{idx(rng), idx(rng)});
    f.add_term(m, FieldScalar(p, coeff(rng)));
  }
  return f;
}

inline std::vector<std::vector<Poly>> random_matrix(std::mt19937& rng, Characteristic p, int size) {
  std::vector<std::vector<Poly>> m(static_cast<std::size_t>(size));
  for (auto& row : m) {
    for (int c = 0; c < size; ++c) row.push_back(random_poly(rng, p, 3, 2, 2));
  }
  return m;
}

/// Determinant by the permutation sum.
inline Poly leibniz_det(const std::vector<std::vector<Poly>>& m, Characteristic p) {
  const int size = static_cast<int>(m.size());
  std::vector<int> perm(static_cast<std::size_t>(size));
  for (int i = 0; i < size; ++i) perm[static_cast<std::size_t>(i)] = i;
  Poly total(p);
  do {
    int inversions = 0;
    for (int a = 0; a < size; ++a) {
      for (int b = a + 1; b < size; ++b) inversions += perm[static_cast<std::size_t>(a)] > perm[static_cast<std::size_t>(b)];
    }
    Poly term = Poly::constant(p, inversions % 2 == 0 ? 1 : -1);
    for (int r = 0; r < size; ++r) {
      term = term * m[static_cast<std::size_t>(r)][static_cast<std::size_t>(perm[static_cast<std::size_t>(r)])];
    }
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

}  // namespace borel::testing
