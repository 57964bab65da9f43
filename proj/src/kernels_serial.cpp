#include <algorithm>
#include <limits>
#include <map>
#include <queue>

#include "ingnet/kernels.hpp"

namespace ingnet::kernels {

std::vector<Edge> count_pairs_serial(std::span<const std::vector<NodeId>> groups) {
  std::map<std::pair<NodeId, NodeId>, Weight> counts;
  for (const auto& group : groups) {
    for (std::size_t i = 0; i < group.size(); ++i)
      for (std::size_t j = i + 1; j < group.size(); ++j) ++counts[{group[i], group[j]}];
  }
  std::vector<Edge> edges;
  edges.reserve(counts.size());
  for (const auto& [pair, w] : counts) edges.push_back({pair.first, pair.second, w});
  return edges;
}

// Forward enumeration: every triangle u < v < w is found once from its
// lowest vertex and credited to all three corners.
std::vector<std::uint64_t> node_triangles_serial(const InGraph& g) {
  std::vector<std::uint64_t> t(g.node_count(), 0);
  for (NodeId u = 0; u < g.node_count(); ++u) {
    auto nu = g.neighbors(u);
    auto first_up = std::upper_bound(nu.begin(), nu.end(), u);
    for (auto it = first_up; it != nu.end(); ++it) {
      const NodeId v = *it;
      for (auto jt = it + 1; jt != nu.end(); ++jt) {
        if (g.has_edge(v, *jt)) {
          ++t[u];
          ++t[v];
          ++t[*jt];
        }
      }
    }
  }
  return t;
}

std::vector<std::uint32_t> eccentricities_serial(const InGraph& g, std::span<const NodeId> sources) {
  std::vector<std::uint32_t> ecc;
  ecc.reserve(sources.size());
  constexpr auto kUnseen = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> dist(g.node_count(), kUnseen);
  for (NodeId s : sources) {
    std::fill(dist.begin(), dist.end(), kUnseen);
    std::queue<NodeId> q;
    dist[s] = 0;
    q.push(s);
    std::uint32_t far = 0;
    while (!q.empty()) {
      const NodeId u = q.front();
      q.pop();
      far = std::max(far, dist[u]);
      for (NodeId v : g.neighbors(u)) {
        if (dist[v] == kUnseen) {
          dist[v] = dist[u] + 1;
          q.push(v);
        }
      }
    }
    ecc.push_back(far);
  }
  return ecc;
}

std::vector<std::vector<CommunityLink>> community_links_serial(
    const InGraph& g, std::span<const std::uint32_t> membership,
    std::span<const std::vector<NodeId>> members) {
  std::vector<std::vector<CommunityLink>> links(members.size());
  for (std::uint32_t c = 0; c < members.size(); ++c) {
    std::map<std::uint32_t, std::pair<Weight, std::uint64_t>> acc;
    for (NodeId m : members[c]) {
      auto nb = g.neighbors(m);
      auto w = g.weights(m);
      for (std::size_t k = 0; k < nb.size(); ++k) {
        const auto other = membership[nb[k]];
        if (other == c) continue;
        auto& slot = acc[other];
        slot.first += w[k];
        ++slot.second;
      }
    }
    for (const auto& [other, sc] : acc) links[c].push_back({other, sc.first, sc.second});
  }
  return links;
}

}  // namespace ingnet::kernels
