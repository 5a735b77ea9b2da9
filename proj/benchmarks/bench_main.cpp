// Microbenchmarks for the hot paths: building representations, heat-curve
// residues, and the exact matrix-triple traces.
//
//   ./benchmarks/sst_benchmarks --benchmark_filter=represent

#include <benchmark/benchmark.h>

#include "sst/matrix_triple.hpp"
#include "sst/samples.hpp"
#include "sst/transverse_cocycles.hpp"

namespace {

using namespace sst;

void BM_represent(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const auto group = standard_group();
  const auto a = CrossedProductElement::monomial(group, random_band_function(8, 5),
                                                 GroupWord::generator(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(represent(a, N));
  }
  state.SetComplexityN(N);
}
BENCHMARK(BM_represent)->RangeMultiplier(2)->Range(64, 512)->Complexity();

void BM_twisted_commutator_norm(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const auto group = standard_group();
  const auto a = CrossedProductElement::monomial(
      group, unit_modulus_profile(group->realize(GroupWord::generator(0))),
      GroupWord::generator(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(twisted_commutator(dirac(N), a, N).interior().operator_norm());
  }
}
BENCHMARK(BM_twisted_commutator_norm)->Arg(128)->Arg(256);

void BM_residue_identity(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const auto group = standard_group();
  const auto f = PeriodicFunction::constant(1.0) + random_band_function(6, 7, 0.5);
  const auto pf =
      represent(CrossedProductElement::monomial(group, f, GroupWord::identity()), N);
  const auto cfg = HeatFitConfig::defaults_for(N);
  for (auto _ : state) {
    benchmark::DoNotOptimize(residue_of_part(pf, CircleDiffeo::identity(), cfg));
  }
}
BENCHMARK(BM_residue_identity)->Arg(256)->Arg(512);

void BM_psi1_spectral(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const auto group = standard_group();
  MonomialPair pair;
  pair.left = {random_band_function(4, 11, 0.8), GroupWord::generator(0)};
  pair.right = {random_band_function(4, 13, 0.8), GroupWord::generator(0).inverse()};
  const auto cfg = HeatFitConfig::defaults_for(N);
  for (auto _ : state) {
    benchmark::DoNotOptimize(psi1_spectral(group, pair, N, cfg));
  }
}
BENCHMARK(BM_psi1_spectral)->Arg(256)->Arg(512);

void BM_chern_phi(benchmark::State& state) {
  const auto half = static_cast<Eigen::Index>(state.range(0));
  const auto T = MatrixTwistedTriple::random(half, 17);
  std::vector<Matrix> tuple;
  for (int i = 0; i < 5; ++i) tuple.push_back(T.random_even_element(19 + i));
  for (auto _ : state) {
    benchmark::DoNotOptimize(chern_phi(T, tuple));
  }
}
BENCHMARK(BM_chern_phi)->Arg(2)->Arg(4)->Arg(8);

void BM_index_pair(benchmark::State& state) {
  const auto half = static_cast<Eigen::Index>(state.range(0));
  const auto T = MatrixTwistedTriple::random(half, 23);
  const auto e = IdempotentData::twisted(T, T.random_even_projection(half / 2, 1, 29));
  for (auto _ : state) {
    benchmark::DoNotOptimize(index_pair(T, e, 2));
  }
}
BENCHMARK(BM_index_pair)->Arg(4)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
