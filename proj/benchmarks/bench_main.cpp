#include <benchmark/benchmark.h>

#include <map>
#include <random>

#include "borel/campaign.hpp"
#include "borel/invariants.hpp"
#include "borel/linalg.hpp"
#include "borel/oracle.hpp"
#include "borel/pbw.hpp"
#include "borel/poly.hpp"

using namespace borel;

namespace {

Poly x(Characteristic p, int i, int j) { return Poly::variable(p, VarId{i, j}); }

void BM_PolyMul(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Poly a = build_M(n, 1, 0);
  const Poly b = build_C(n, n / 2, 0) + build_c0(n, 0);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_PolyMul)->DenseRange(4, 6);

void BM_Determinant(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<std::vector<Poly>> m(static_cast<std::size_t>(n), std::vector<Poly>(static_cast<std::size_t>(n), Poly(0)));
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = x(0, i + 1, j + 1);
    if (i > 0) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i - 1)] = x(0, i, i + 1);
  }
  for (auto _ : state) benchmark::DoNotOptimize(det_poly_matrix(m));
}
BENCHMARK(BM_Determinant)->DenseRange(4, 6);

void BM_NormalForm(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto alg = PBWAlgebra::make(Algebra::g, n, 3);
  std::vector<int> word;
  for (int r = 0; r < 2; ++r) {
    for (int l = alg->dimension() - 1; l >= 0; --l) word.push_back(l);
  }
  const FieldScalar one = FieldScalar::one(3);
  for (auto _ : state) benchmark::DoNotOptimize(normal_form(alg, word, one));
}
BENCHMARK(BM_NormalForm)->Arg(3)->Arg(4);

void BM_KernelSolve(benchmark::State& state) {
  const Characteristic p = static_cast<Characteristic>(state.range(0));
  const int cols = 300;
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> col(0, cols - 1);
  std::uniform_int_distribution<long> val(-5, 5);
  std::vector<SparseVec> rows;
  for (int r = 0; r < 250; ++r) {
    std::map<int, FieldScalar> entries;
    for (int t = 0; t < 6; ++t) entries.insert_or_assign(col(rng), FieldScalar(p, val(rng)));
    SparseVec v;
    for (const auto& [c, s] : entries) {
      if (!s.is_zero()) v.emplace_back(c, s);
    }
    rows.push_back(std::move(v));
  }
  for (auto _ : state) benchmark::DoNotOptimize(kernel_basis(p, cols, rows));
}
BENCHMARK(BM_KernelSolve)->Arg(0)->Arg(3);

void BM_InvariantSpace(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(invariant_space(3, 2, Algebra::g, Subalgebra::g, d));
}
BENCHMARK(BM_InvariantSpace)->DenseRange(2, 4);

void BM_CampaignCell(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_cell(CheckKind::relations, 4, 3, Algebra::g, 4, scale_guard()));
  }
}
BENCHMARK(BM_CampaignCell);

}  // namespace

BENCHMARK_MAIN();
