// Serial reference vs OpenMP kernels on a synthetic recipe network.
// Range argument 0 = serial, 1 = parallel.

#include <benchmark/benchmark.h>

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <random>

#include "ingnet/kernels.hpp"

using namespace ingnet;

namespace {

constexpr std::size_t kNodes = 4000;
constexpr std::size_t kRecipes = 6000;

// Recipes of 6..15 ingredients, 80% of them drawn from one of 16 cuisines.
std::vector<std::vector<NodeId>> make_groups() {
  std::mt19937_64 rng(7);
  std::vector<std::vector<NodeId>> groups;
  const std::size_t block = kNodes / 16;
  for (std::size_t r = 0; r < kRecipes; ++r) {
    const std::size_t cuisine = rng() % 16, size = 6 + rng() % 10;
    std::vector<NodeId> g;
    while (g.size() < size) {
      const auto id = static_cast<NodeId>(rng() % 10 < 8 ? cuisine * block + rng() % block : rng() % kNodes);
      if (std::find(g.begin(), g.end(), id) == g.end()) g.push_back(id);
    }
    std::sort(g.begin(), g.end());
    groups.push_back(std::move(g));
  }
  return groups;
}

const std::vector<std::vector<NodeId>>& groups() {
  static const auto g = make_groups();
  return g;
}

const InGraph& graph() {
  static const InGraph g = [] {
    std::vector<std::string> names;
    char buf[32];
    for (std::size_t i = 0; i < kNodes; ++i) {
      std::snprintf(buf, sizeof buf, "n%06zu", i);
      names.emplace_back(buf);
    }
    return InGraph(std::move(names), kernels::count_pairs_serial(groups()));
  }();
  return g;
}

void BM_count_pairs(benchmark::State& state) {
  const auto& gs = groups();
  for (auto _ : state) {
    auto edges = state.range(0) ? kernels::count_pairs_parallel(gs) : kernels::count_pairs_serial(gs);
    benchmark::DoNotOptimize(edges.data());
  }
  state.counters["edges"] = static_cast<double>(graph().edge_count());
}

void BM_node_triangles(benchmark::State& state) {
  const auto& g = graph();
  for (auto _ : state) {
    auto t = state.range(0) ? kernels::node_triangles_parallel(g) : kernels::node_triangles_serial(g);
    benchmark::DoNotOptimize(t.data());
  }
}

void BM_eccentricities(benchmark::State& state) {
  const auto& g = graph();
  std::vector<NodeId> sources(512);
  std::iota(sources.begin(), sources.end(), NodeId{0});
  for (auto _ : state) {
    auto e = state.range(0) ? kernels::eccentricities_parallel(g, sources) : kernels::eccentricities_serial(g, sources);
    benchmark::DoNotOptimize(e.data());
  }
}

void BM_community_links(benchmark::State& state) {
  const auto& g = graph();
  std::vector<std::uint32_t> membership(g.node_count());
  std::vector<std::vector<NodeId>> members(64);
  for (NodeId u = 0; u < g.node_count(); ++u) {
    membership[u] = u % 64;
    members[u % 64].push_back(u);
  }
  for (auto _ : state) {
    auto links = state.range(0) ? kernels::community_links_parallel(g, membership, members)
                                : kernels::community_links_serial(g, membership, members);
    benchmark::DoNotOptimize(links.data());
  }
}

}  // namespace

BENCHMARK(BM_count_pairs)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_node_triangles)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_eccentricities)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_community_links)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
