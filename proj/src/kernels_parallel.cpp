#include <algorithm>
#include <limits>

#include "ingnet/kernels.hpp"

#ifdef INGNET_HAVE_OPENMP
#include <omp.h>
#endif

namespace ingnet::kernels {

namespace {

int thread_index() {
#ifdef INGNET_HAVE_OPENMP
  return omp_get_thread_num();
#else
  return 0;
#endif
}

// Sorted (key, count) runs from a sorted key list.
std::vector<std::pair<std::uint64_t, Weight>> run_lengths(const std::vector<std::uint64_t>& keys) {
  std::vector<std::pair<std::uint64_t, Weight>> runs;
  for (std::size_t i = 0; i < keys.size();) {
    std::size_t j = i;
    while (j < keys.size() && keys[j] == keys[i]) ++j;
    runs.emplace_back(keys[i], j - i);
    i = j;
  }
  return runs;
}

}  // namespace

void set_thread_count(int threads) {
#ifdef INGNET_HAVE_OPENMP
  omp_set_num_threads(threads > 0 ? threads : omp_get_num_procs());
#else
  (void)threads;
#endif
}

int max_threads() {
#ifdef INGNET_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

std::vector<Edge> count_pairs_parallel(std::span<const std::vector<NodeId>> groups) {
  const int nthreads = max_threads();
  std::vector<std::vector<std::pair<std::uint64_t, Weight>>> partial(nthreads);
  const auto ngroups = static_cast<std::int64_t>(groups.size());

#pragma omp parallel num_threads(nthreads)
  {
    std::vector<std::uint64_t> keys;
#pragma omp for schedule(dynamic, 64) nowait
    for (std::int64_t gi = 0; gi < ngroups; ++gi) {
      const auto& group = groups[gi];
      for (std::size_t i = 0; i < group.size(); ++i)
        for (std::size_t j = i + 1; j < group.size(); ++j) keys.push_back(pair_key(group[i], group[j]));
    }
    std::sort(keys.begin(), keys.end());
    partial[thread_index()] = run_lengths(keys);
  }

  // Merging is a commutative sum, so thread scheduling cannot change the result.
  std::vector<std::pair<std::uint64_t, Weight>> all;
  for (auto& p : partial) all.insert(all.end(), p.begin(), p.end());
  std::sort(all.begin(), all.end());
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < all.size();) {
    Weight sum = 0;
    std::size_t j = i;
    for (; j < all.size() && all[j].first == all[i].first; ++j) sum += all[j].second;
    edges.push_back({pair_first(all[i].first), pair_second(all[i].first), sum});
    i = j;
  }
  return edges;
}

std::vector<std::uint64_t> node_triangles_parallel(const InGraph& g) {
  const auto n = static_cast<std::int64_t>(g.node_count());
  std::vector<std::uint64_t> t(g.node_count(), 0);
#pragma omp parallel for schedule(dynamic, 32)
  for (std::int64_t ui = 0; ui < n; ++ui) {
    const auto u = static_cast<NodeId>(ui);
    auto nu = g.neighbors(u);
    std::uint64_t links = 0;
    for (NodeId v : nu) {
      auto nv = g.neighbors(v);
      // |N(u) ∩ N(v)| by sorted merge
      auto a = nu.begin();
      auto b = nv.begin();
      while (a != nu.end() && b != nv.end()) {
        if (*a < *b) {
          ++a;
        } else if (*b < *a) {
          ++b;
        } else {
          ++links;
          ++a;
          ++b;
        }
      }
    }
    t[u] = links / 2;
  }
  return t;
}

std::vector<std::uint32_t> eccentricities_parallel(const InGraph& g, std::span<const NodeId> sources) {
  std::vector<std::uint32_t> ecc(sources.size(), 0);
  const auto nsources = static_cast<std::int64_t>(sources.size());
  constexpr auto kUnseen = std::numeric_limits<std::uint32_t>::max();
#pragma omp parallel
  {
    std::vector<std::uint32_t> dist(g.node_count(), kUnseen);
    std::vector<NodeId> frontier;
    std::vector<NodeId> visited;
#pragma omp for schedule(dynamic, 8)
    for (std::int64_t si = 0; si < nsources; ++si) {
      const NodeId s = sources[si];
      frontier.assign(1, s);
      visited.assign(1, s);
      dist[s] = 0;
      for (std::size_t head = 0; head < frontier.size(); ++head) {
        const NodeId u = frontier[head];
        for (NodeId v : g.neighbors(u)) {
          if (dist[v] == kUnseen) {
            dist[v] = dist[u] + 1;
            frontier.push_back(v);
            visited.push_back(v);
          }
        }
      }
      ecc[si] = dist[frontier.back()];
      for (NodeId v : visited) dist[v] = kUnseen;
    }
  }
  return ecc;
}

std::vector<std::vector<CommunityLink>> community_links_parallel(
    const InGraph& g, std::span<const std::uint32_t> membership,
    std::span<const std::vector<NodeId>> members) {
  std::vector<std::vector<CommunityLink>> links(members.size());
  const auto ncomm = static_cast<std::int64_t>(members.size());
#pragma omp parallel
  {
    std::vector<Weight> sum(members.size(), 0);
    std::vector<std::uint64_t> count(members.size(), 0);
    std::vector<std::uint32_t> touched;
#pragma omp for schedule(dynamic, 16)
    for (std::int64_t ci = 0; ci < ncomm; ++ci) {
      const auto c = static_cast<std::uint32_t>(ci);
      touched.clear();
      for (NodeId m : members[c]) {
        auto nb = g.neighbors(m);
        auto w = g.weights(m);
        for (std::size_t k = 0; k < nb.size(); ++k) {
          const auto other = membership[nb[k]];
          if (other == c) continue;
          if (count[other] == 0) touched.push_back(other);
          sum[other] += w[k];
          ++count[other];
        }
      }
      std::sort(touched.begin(), touched.end());
      auto& out = links[c];
      out.reserve(touched.size());
      for (auto other : touched) {
        out.push_back({other, sum[other], count[other]});
        sum[other] = 0;
        count[other] = 0;
      }
    }
  }
  return links;
}

}  // namespace ingnet::kernels
