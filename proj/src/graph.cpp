#include "ingnet/graph.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "ingnet/kernels.hpp"

namespace ingnet {

InGraph::InGraph(std::vector<std::string> names, std::span<const Edge> edges)
    : names_(std::move(names)) {
  if (names_.size() > std::numeric_limits<NodeId>::max())
    throw std::invalid_argument("too many nodes");
  for (std::size_t i = 1; i < names_.size(); ++i) {
    if (!(names_[i - 1] < names_[i]))
      throw std::invalid_argument("node names must be sorted and unique");
  }
  const auto n = names_.size();
  std::vector<std::size_t> degree(n, 0);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& e = edges[i];
    if (e.u >= e.v || e.v >= n) throw std::invalid_argument("edge endpoints must satisfy u < v < n");
    if (e.weight == 0) throw std::invalid_argument("edge weights must be positive");
    if (i && !(std::pair(edges[i - 1].u, edges[i - 1].v) < std::pair(e.u, e.v)))
      throw std::invalid_argument("edges must be sorted and unique");
    ++degree[e.u];
    ++degree[e.v];
    total_weight_ += e.weight;
  }
  offsets_.assign(n + 1, 0);
  for (std::size_t u = 0; u < n; ++u) offsets_[u + 1] = offsets_[u] + degree[u];
  neighbors_.resize(offsets_[n]);
  weights_.resize(offsets_[n]);
  // Lower neighbors (smaller ids) go first in each list, upper ones after;
  // sorted input keeps both halves sorted.
  std::vector<std::size_t> lower_count(n, 0);
  for (const auto& e : edges) ++lower_count[e.v];
  std::vector<std::size_t> upper_start(n);
  for (std::size_t u = 0; u < n; ++u) upper_start[u] = offsets_[u] + lower_count[u];
  std::vector<std::size_t> upper_cursor = upper_start;
  std::vector<std::size_t> lower_cursor(offsets_.begin(), offsets_.end() - 1);
  for (const auto& e : edges) {
    neighbors_[upper_cursor[e.u]] = e.v;
    weights_[upper_cursor[e.u]++] = e.weight;
    neighbors_[lower_cursor[e.v]] = e.u;
    weights_[lower_cursor[e.v]++] = e.weight;
  }
}

std::optional<NodeId> InGraph::find(std::string_view name) const {
  auto it = std::lower_bound(names_.begin(), names_.end(), name,
                             [](const std::string& a, std::string_view b) { return a < b; });
  if (it == names_.end() || *it != name) return std::nullopt;
  return static_cast<NodeId>(it - names_.begin());
}

Weight InGraph::strength(NodeId u) const {
  auto w = weights(u);
  return std::accumulate(w.begin(), w.end(), Weight{0});
}

Weight InGraph::weight(NodeId u, NodeId v) const {
  if (u >= node_count() || v >= node_count() || u == v) return 0;
  if (degree(u) > degree(v)) std::swap(u, v);
  auto nb = neighbors(u);
  auto it = std::lower_bound(nb.begin(), nb.end(), v);
  if (it == nb.end() || *it != v) return 0;
  return weights(u)[static_cast<std::size_t>(it - nb.begin())];
}

std::vector<Edge> InGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (NodeId u = 0; u < node_count(); ++u) {
    auto nb = neighbors(u);
    auto w = weights(u);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      if (nb[i] > u) out.push_back({u, nb[i], w[i]});
    }
  }
  return out;
}

void GraphBuilder::add_node(std::string name) { names_.insert(std::move(name)); }

void GraphBuilder::add_edge(const std::string& a, const std::string& b, Weight weight) {
  if (a == b) throw std::invalid_argument("self-loop on '" + a + "'");
  if (weight == 0) throw std::invalid_argument("edge weight must be positive");
  names_.insert(a);
  names_.insert(b);
  edges_[a < b ? std::pair(a, b) : std::pair(b, a)] += weight;
}

InGraph GraphBuilder::build() const {
  std::vector<std::string> names(names_.begin(), names_.end());
  auto id = [&](const std::string& s) {
    return static_cast<NodeId>(std::lower_bound(names.begin(), names.end(), s) - names.begin());
  };
  std::vector<Edge> edges;
  edges.reserve(edges_.size());
  for (const auto& [pair, w] : edges_) edges.push_back({id(pair.first), id(pair.second), w});
  return InGraph(std::move(names), edges);
}

InGraph build_network(std::span<const std::set<std::string>> ingredient_sets) {
  std::vector<std::string> names;
  for (const auto& s : ingredient_sets) names.insert(names.end(), s.begin(), s.end());
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());

  std::vector<std::vector<NodeId>> groups;
  groups.reserve(ingredient_sets.size());
  for (const auto& s : ingredient_sets) {
    if (s.size() < 2) continue;
    std::vector<NodeId> ids;
    ids.reserve(s.size());
    // std::set iterates in sorted order, so ids come out sorted too.
    for (const auto& name : s)
      ids.push_back(static_cast<NodeId>(std::lower_bound(names.begin(), names.end(), name) -
                                        names.begin()));
    groups.push_back(std::move(ids));
  }
  auto edges = kernels::count_pairs_parallel(groups);
  return InGraph(std::move(names), edges);
}

InGraph build_network(std::span<const Recipe> recipes) {
  std::vector<std::set<std::string>> sets;
  sets.reserve(recipes.size());
  for (const auto& r : recipes) sets.push_back(r.ingredients);
  return build_network(std::span<const std::set<std::string>>(sets));
}

std::set<std::string> category_ingredients(std::span<const Recipe> recipes, std::string_view label) {
  std::set<std::string> out;
  for (const auto& r : recipes) {
    if (r.category() && *r.category() == label) out.insert(r.ingredients.begin(), r.ingredients.end());
  }
  return out;
}

InducedSubgraph induced_subgraph(const InGraph& g, const std::set<std::string>& keep) {
  InducedSubgraph result;
  std::vector<std::string> names;
  std::vector<NodeId> old_ids;
  for (const auto& name : keep) {
    if (auto id = g.find(name)) {
      names.push_back(name);
      old_ids.push_back(*id);
    } else {
      ++result.missing_names;
    }
  }
  // keep is sorted, so new ids preserve relative order.
  std::vector<std::int64_t> remap(g.node_count(), -1);
  for (std::size_t i = 0; i < old_ids.size(); ++i) remap[old_ids[i]] = static_cast<std::int64_t>(i);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < old_ids.size(); ++i) {
    const NodeId u = old_ids[i];
    auto nb = g.neighbors(u);
    auto w = g.weights(u);
    for (std::size_t k = 0; k < nb.size(); ++k) {
      const auto mapped = remap[nb[k]];
      if (mapped > static_cast<std::int64_t>(i))
        edges.push_back({static_cast<NodeId>(i), static_cast<NodeId>(mapped), w[k]});
    }
  }
  result.graph = InGraph(std::move(names), edges);
  return result;
}

}  // namespace ingnet
