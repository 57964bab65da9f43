#include <algorithm>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "ingnet/community.hpp"

namespace ingnet {

Partition Partition::from_labels(std::span<const std::uint32_t> labels) {
  const auto n = labels.size();
  // group nodes by raw label, remembering first (smallest) member
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return labels[a] < labels[b]; });
  struct Group {
    std::uint32_t raw;
    std::size_t size;
    NodeId first;
  };
  std::vector<Group> groups;
  for (auto u : order) {
    if (groups.empty() || groups.back().raw != labels[u])
      groups.push_back({labels[u], 0, u});
    ++groups.back().size;
  }
  std::sort(groups.begin(), groups.end(), [](const Group& a, const Group& b) {
    if (a.size != b.size) return a.size > b.size;
    return a.first < b.first;
  });
  Partition p;
  p.assignment_.assign(n, 0);
  p.community_count_ = groups.size();
  std::vector<std::pair<std::uint32_t, CommunityId>> raw_to_id;
  raw_to_id.reserve(groups.size());
  for (CommunityId c = 0; c < groups.size(); ++c) raw_to_id.emplace_back(groups[c].raw, c);
  std::sort(raw_to_id.begin(), raw_to_id.end());
  for (std::size_t u = 0; u < n; ++u) {
    auto it = std::lower_bound(raw_to_id.begin(), raw_to_id.end(),
                               std::pair<std::uint32_t, CommunityId>(labels[u], 0));
    p.assignment_[u] = it->second;
  }
  return p;
}

Partition Partition::singletons(std::size_t node_count) {
  std::vector<std::uint32_t> labels(node_count);
  std::iota(labels.begin(), labels.end(), 0u);
  return from_labels(labels);
}

Partition Partition::single_community(std::size_t node_count) {
  std::vector<std::uint32_t> labels(node_count, 0);
  return from_labels(labels);
}

std::vector<std::vector<NodeId>> Partition::members() const {
  std::vector<std::vector<NodeId>> out(community_count_);
  for (NodeId u = 0; u < assignment_.size(); ++u) out[assignment_[u]].push_back(u);
  return out;
}

std::vector<std::size_t> Partition::sizes() const {
  std::vector<std::size_t> out(community_count_, 0);
  for (auto c : assignment_) ++out[c];
  return out;
}

nlohmann::json partition_to_json(const Partition& p, const InGraph& g) {
  nlohmann::json obj = nlohmann::json::object();
  const auto members = p.members();
  for (CommunityId c = 0; c < members.size(); ++c) {
    nlohmann::json names = nlohmann::json::array();
    for (NodeId u : members[c]) names.push_back(g.name(u));
    obj[std::to_string(c)] = std::move(names);
  }
  return obj;
}

void write_partition_tsv(std::ostream& out, const Partition& p, const InGraph& g) {
  for (NodeId u = 0; u < g.node_count(); ++u) out << g.name(u) << '\t' << p.community_of(u) << '\n';
}

double modularity(const InGraph& g, const Partition& p, double resolution) {
  if (p.node_count() != g.node_count())
    throw std::invalid_argument("partition covers " + std::to_string(p.node_count()) +
                                " nodes but the graph has " + std::to_string(g.node_count()));
  if (g.edge_count() == 0) return 0.0;
  using i128 = __int128;
  const i128 two_m = static_cast<i128>(2) * g.total_weight();
  std::vector<i128> internal(p.community_count(), 0);  // ordered-pair sum, i.e. 2 * edge weight
  std::vector<i128> total(p.community_count(), 0);
  for (NodeId u = 0; u < g.node_count(); ++u) {
    const auto cu = p.community_of(u);
    auto nb = g.neighbors(u);
    auto w = g.weights(u);
    for (std::size_t k = 0; k < nb.size(); ++k) {
      total[cu] += w[k];
      if (p.community_of(nb[k]) == cu) internal[cu] += w[k];
    }
  }
  i128 internal_sum = 0;
  i128 total_sq = 0;
  for (std::size_t c = 0; c < internal.size(); ++c) {
    internal_sum += internal[c];
    total_sq += total[c] * total[c];
  }
  const auto denom = static_cast<long double>(two_m) * static_cast<long double>(two_m);
  if (resolution == 1.0) {
    const i128 num = internal_sum * two_m - total_sq;
    return static_cast<double>(static_cast<long double>(num) / denom);
  }
  const long double num = static_cast<long double>(internal_sum) * static_cast<long double>(two_m) -
                          static_cast<long double>(resolution) * static_cast<long double>(total_sq);
  return static_cast<double>(num / denom);
}

}  // namespace ingnet
