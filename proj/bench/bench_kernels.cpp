#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "sofic/covers.hpp"
#include "sofic/generators.hpp"
#include "sofic/kernels.hpp"

using namespace sofic;

namespace {

std::vector<double> random_values(std::size_t n) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> unit(0, 1);
  std::vector<double> f(n);
  for (auto& x : f) x = unit(rng);
  return f;
}

template <bool Parallel>
void BM_MarkovApply(benchmark::State& state) {
  // A long offset keeps half the reads far from the written entry.
  const MultiGraph g = make_circulant(static_cast<std::size_t>(state.range(0)), {1, 1009});
  const std::vector<double> f = random_values(g.vertex_count());
  std::vector<double> out(f.size());
  for (auto _ : state) {
    if constexpr (Parallel) {
      kernels::parallel::markov_apply(g, f, out);
    } else {
      kernels::serial::markov_apply(g, f, out);
    }
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_MinSizeSparseSubset(benchmark::State& state) {
  const MultiGraph g = make_random_regular(static_cast<std::size_t>(state.range(0)), 3, 2);
  std::vector<Vertex> active(g.vertex_count());
  for (Vertex v = 0; v < active.size(); ++v) active[v] = v;
  const kernels::SubsetTable t(g, active);
  for (auto _ : state) {
    // Nothing qualifies, so every subset is scanned.
    const auto hit = Parallel ? kernels::parallel::min_size_sparse_subset(t, 0.0)
                              : kernels::serial::min_size_sparse_subset(t, 0.0);
    benchmark::DoNotOptimize(hit);
  }
}

template <bool Parallel>
void BM_BallKeys(benchmark::State& state) {
  const MultiGraph g = make_random_regular(2000, 3, 3);
  const auto radius = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto keys = Parallel ? kernels::parallel::ball_keys(g, radius, 10000) : kernels::serial::ball_keys(g, radius, 10000);
    benchmark::DoNotOptimize(keys.data());
  }
}

template <bool Parallel>
void BM_WalkSums(benchmark::State& state) {
  const MultiGraph g = make_circulant(200, {1, 2, 3});
  const EdgeWeighting w = random_sign_weighting(g, 5, 4);
  const auto trials = static_cast<std::size_t>(state.range(0));
  std::vector<std::int64_t> sums(trials);
  std::vector<char> closed(trials);
  for (auto _ : state) {
    if constexpr (Parallel) {
      kernels::parallel::walk_sums(g, w.phi, 5, 400, trials, 7, 0, sums, closed);
    } else {
      kernels::serial::walk_sums(g, w.phi, 5, 400, trials, 7, 0, sums, closed);
    }
    benchmark::DoNotOptimize(sums.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_MarkovApply<false>)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_MarkovApply<true>)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_MinSizeSparseSubset<false>)->Arg(16)->Arg(20);
BENCHMARK(BM_MinSizeSparseSubset<true>)->Arg(16)->Arg(20);
BENCHMARK(BM_BallKeys<false>)->Arg(2)->Arg(3);
BENCHMARK(BM_BallKeys<true>)->Arg(2)->Arg(3);
BENCHMARK(BM_WalkSums<false>)->Arg(10000);
BENCHMARK(BM_WalkSums<true>)->Arg(10000);

BENCHMARK_MAIN();
