// Serial reference kernels against the OpenMP versions on synthetic graphs.
// Graph size is the benchmark argument (nodes; edges = 5 x nodes).

#include <benchmark/benchmark.h>

#include <numeric>
#include <vector>

#include "uacim/graph.hpp"
#include "uacim/kernels.hpp"

namespace k = uacim::kernels;

namespace {

struct Fixture {
  uacim::SocialGraph graph;
  std::vector<std::uint8_t> free;
  std::vector<double> score;
  std::vector<std::uint32_t> rank;
};

const Fixture& fixture(std::size_t n) {
  static std::vector<std::pair<std::size_t, Fixture>> cache;
  for (auto& [size, f] : cache) {
    if (size == n) return f;
  }
  uacim::Rng rng(n);
  Fixture f{uacim::synthetic_social_graph(n, 5 * n, 0.5, rng), {}, {}, {}};
  f.free.resize(n);
  f.score.resize(n);
  f.rank.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    f.free[i] = rng.bernoulli(0.8);
    f.score[i] = rng.uniform();
  }
  std::iota(f.rank.begin(), f.rank.end(), 0u);
  cache.emplace_back(n, std::move(f));
  return cache.back().second;
}

template <auto Fn>
void hop_counts(benchmark::State& state) {
  const auto& f = fixture(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(Fn(f.graph.adjacency(), 2));
}

template <auto Fn>
void free_degrees(benchmark::State& state) {
  const auto& f = fixture(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(Fn(f.graph.adjacency(), f.free));
}

template <auto Fn>
void free_features(benchmark::State& state) {
  const auto& f = fixture(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(Fn(f.graph.adjacency(), f.free));
}

template <auto Fn>
void argmax(benchmark::State& state) {
  const auto& f = fixture(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(Fn(f.score, f.free, f.rank));
}

}  // namespace

#define UACIM_PAIR(name, fn)                                                    \
  BENCHMARK(name<k::reference::fn>)->Name(#fn "/serial")->Arg(1133)->Arg(20000); \
  BENCHMARK(name<k::fn>)->Name(#fn "/openmp")->Arg(1133)->Arg(20000)

UACIM_PAIR(hop_counts, hop_counts);
UACIM_PAIR(free_degrees, free_degrees);
UACIM_PAIR(free_features, free_subgraph_features);
UACIM_PAIR(argmax, masked_argmax);

BENCHMARK_MAIN();
