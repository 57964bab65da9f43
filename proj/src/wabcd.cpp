#include <algorithm>
#include <ostream>
#include <stdexcept>

#include "ingnet/community.hpp"
#include "ingnet/kernels.hpp"

namespace ingnet {

std::strong_ordering operator<=>(const AverageWeight& a, const AverageWeight& b) {
  using u128 = unsigned __int128;
  const u128 lhs = static_cast<u128>(a.sum) * b.count;
  const u128 rhs = static_cast<u128>(b.sum) * a.count;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

WabcdResult wabcd(const InGraph& g, KernelMode mode) {
  if (g.empty()) throw std::invalid_argument("wabcd needs a non-empty graph");
  const auto n = g.node_count();

  // founder[u]: id of the node that founded u's community.
  std::vector<NodeId> founder(n);
  for (NodeId u = 0; u < n; ++u) founder[u] = u;
  std::vector<NodeId> live(n);  // founders of surviving communities, ascending
  for (NodeId u = 0; u < n; ++u) live[u] = u;

  WabcdResult result;
  std::optional<AverageWeight> previous_best;
  std::vector<std::uint32_t> slot(n);  // founder -> index into live

  for (std::size_t pass = 1;; ++pass) {
    for (std::uint32_t i = 0; i < live.size(); ++i) slot[live[i]] = i;
    std::vector<std::vector<NodeId>> members(live.size());
    std::vector<std::uint32_t> membership(n);
    for (NodeId u = 0; u < n; ++u) {
      membership[u] = slot[founder[u]];
      members[membership[u]].push_back(u);
    }
    const auto links = mode == KernelMode::parallel
                           ? kernels::community_links_parallel(g, membership, members)
                           : kernels::community_links_serial(g, membership, members);

    // Memberships are fixed for the whole pass: a community that took part
    // in a merge is not considered again until the next pass.
    WabcdPass record;
    record.pass = pass;
    std::vector<bool> merged(live.size(), false);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> plan;
    AverageWeight pass_best;  // count 0: no merge yet
    for (std::uint32_t a = 0; a < live.size(); ++a) {
      if (merged[a]) continue;
      std::optional<AverageWeight> best;
      std::uint32_t best_b = 0;
      for (const auto& link : links[a]) {  // ascending community index
        if (merged[link.community] || link.count == 0 || link.sum == 0) continue;
        const AverageWeight avg{link.sum, link.count};
        if (!best || avg > *best) {
          best = avg;
          best_b = link.community;
        }
      }
      if (!best) continue;
      merged[a] = merged[best_b] = true;
      plan.emplace_back(a, best_b);
      record.merges.push_back({live[a], live[best_b], *best});
      if (pass_best.count == 0 || *best > pass_best) pass_best = *best;
    }
    if (pass_best.count != 0) record.best_average = pass_best;

    const bool dropped = previous_best && pass_best.count != 0 && pass_best < *previous_best;
    record.accepted = !plan.empty() && !dropped;
    if (record.accepted) {
      std::vector<bool> absorbed(live.size(), false);
      for (auto [a, b] : plan) {
        for (NodeId u : members[b]) founder[u] = live[a];
        absorbed[b] = true;
      }
      std::vector<NodeId> next;
      next.reserve(live.size() - plan.size());
      for (std::uint32_t i = 0; i < live.size(); ++i) {
        if (!absorbed[i]) next.push_back(live[i]);
      }
      live = std::move(next);
      previous_best = record.best_average;
    }
    record.community_count = live.size();
    record.membership = founder;
    const bool stop = !record.accepted;
    result.trace.push_back(std::move(record));
    if (stop) break;
  }

  result.partition = Partition::from_labels(founder);
  return result;
}

nlohmann::json to_json(const WabcdPass& pass, const InGraph& g) {
  nlohmann::json merges = nlohmann::json::array();
  for (const auto& m : pass.merges)
    merges.push_back({{"into", g.name(m.into)},
                      {"absorbed", g.name(m.absorbed)},
                      {"average", m.average.value()},
                      {"edges", m.average.count}});
  nlohmann::json obj = {{"pass", pass.pass},
                        {"merges", merges},
                        {"accepted", pass.accepted},
                        {"community_count", pass.community_count}};
  obj["best_average"] = pass.best_average ? nlohmann::json(pass.best_average->value()) : nlohmann::json();
  return obj;
}

void write_pass_trace(std::ostream& out, std::span<const WabcdPass> trace, const InGraph& g) {
  for (const auto& pass : trace) out << to_json(pass, g).dump() << '\n';
}

}  // namespace ingnet
