#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ingnet/extraction.hpp"

namespace ingnet {

using NodeId = std::uint32_t;
using Weight = std::uint64_t;

struct Edge {
  NodeId u;
  NodeId v;
  Weight weight;
  bool operator==(const Edge&) const = default;
};

/// Weighted undirected co-occurrence graph. Node ids follow lexicographic
/// (byte) order of ingredient names. Adjacency is stored in CSR form with
/// each neighbor list sorted, so an edge appears once in each endpoint's
/// list. No self-loops; every weight is >= 1.
class InGraph {
 public:
  InGraph() = default;

  /// `names` must be sorted and unique; `edges` must have u < v, be sorted
  /// by (u, v), be free of duplicates and carry positive weights.
  InGraph(std::vector<std::string> names, std::span<const Edge> edges);

  std::size_t node_count() const noexcept { return names_.size(); }
  std::size_t edge_count() const noexcept { return neighbors_.size() / 2; }
  bool empty() const noexcept { return names_.empty(); }

  const std::string& name(NodeId u) const { return names_[u]; }
  std::span<const std::string> names() const noexcept { return names_; }
  std::optional<NodeId> find(std::string_view name) const;

  std::span<const NodeId> neighbors(NodeId u) const {
    return {neighbors_.data() + offsets_[u], neighbors_.data() + offsets_[u + 1]};
  }
  std::span<const Weight> weights(NodeId u) const {
    return {weights_.data() + offsets_[u], weights_.data() + offsets_[u + 1]};
  }
  std::size_t degree(NodeId u) const { return offsets_[u + 1] - offsets_[u]; }

  /// Sum of incident edge weights.
  Weight strength(NodeId u) const;
  /// 0 when u and v are not adjacent.
  Weight weight(NodeId u, NodeId v) const;
  bool has_edge(NodeId u, NodeId v) const { return weight(u, v) != 0; }
  /// Sum of weights over unordered edges.
  Weight total_weight() const noexcept { return total_weight_; }

  /// Unordered edges with u < v, sorted by (u, v).
  std::vector<Edge> edges() const;

  bool operator==(const InGraph&) const = default;

 private:
  std::vector<std::string> names_;
  std::vector<std::size_t> offsets_{0};
  std::vector<NodeId> neighbors_;
  std::vector<Weight> weights_;
  Weight total_weight_ = 0;
};

/// Accumulates named edges; repeated pairs add up. Used by tests and
/// generators that work with names rather than recipes.
class GraphBuilder {
 public:
  void add_node(std::string name);
  void add_edge(const std::string& a, const std::string& b, Weight weight = 1);
  InGraph build() const;

 private:
  std::set<std::string> names_;
  std::map<std::pair<std::string, std::string>, Weight> edges_;
};

/// Each unordered ingredient pair inside a recipe adds 1 to that pair's
/// weight. Recipes with fewer than two ingredients contribute nodes only.
InGraph build_network(std::span<const Recipe> recipes);

/// Builds from per-recipe ingredient sets directly.
InGraph build_network(std::span<const std::set<std::string>> ingredient_sets);

struct CategorySet {
  std::string label;
  std::set<std::string> names;
  bool operator==(const CategorySet&) const = default;
};

/// Union of ingredient sets over recipes whose category equals `label`.
std::set<std::string> category_ingredients(std::span<const Recipe> recipes, std::string_view label);

struct InducedSubgraph {
  InGraph graph;
  std::size_t missing_names = 0;
};

/// Restricts g to `keep`; names that are not in g are counted and ignored.
InducedSubgraph induced_subgraph(const InGraph& g, const std::set<std::string>& keep);

}  // namespace ingnet
