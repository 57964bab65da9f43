#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ingnet/graph.hpp"
#include "json.hpp"

namespace ingnet {

/// Clustering measures on the unweighted simple graph.
struct ClusteringStats {
  double avg_clustering_coefficient = 0.0;
  std::uint64_t triangle_count = 0;
  /// 3 * triangles / connected triples, or 0 without triples.
  double fraction_closed_triangles = 0.0;
  /// Per-node local coefficient; nodes of degree < 2 get 0.
  std::vector<double> local_clustering;
  std::uint64_t connected_triples = 0;
};

ClusteringStats clustering_stats(const InGraph& g);

/// Local coefficient from a node's degree and triangle count.
double local_clustering(std::size_t degree, std::uint64_t triangles);

/// Nodes of the largest connected component (by node count; ties go to the
/// component holding the smallest node id), sorted.
std::vector<NodeId> largest_component(const InGraph& g);

/// Longest shortest path (in hops) inside the largest connected component.
/// Throws std::invalid_argument for an empty graph.
std::uint32_t diameter(const InGraph& g);

/// Mean weight over unordered edges. Throws std::invalid_argument when the
/// graph has no edges.
double avg_edge_weight(const InGraph& g);

struct DegreeHistogram {
  std::map<std::size_t, std::size_t> entries;
  bool cumulative = false;
  bool operator==(const DegreeHistogram&) const = default;
};

/// Unweighted degree histogram. The cumulative form maps each observed
/// degree d to the number of nodes with degree >= d.
DegreeHistogram degree_distribution(const InGraph& g, bool cumulative);

/// Least-squares slope of log(count) against log(degree) over entries with
/// degree >= min_degree. nullopt with fewer than two usable points.
std::optional<double> loglog_slope(const DegreeHistogram& h, std::size_t min_degree = 1);

struct StrongestEdge {
  std::string u;
  std::string v;
  Weight weight = 0;
};

/// Heaviest edge; ties go to the lexicographically smallest (u, v).
std::optional<StrongestEdge> strongest_edge(const InGraph& g);

struct StatsReport {
  std::size_t node_count = 0;
  std::size_t edge_count = 0;
  double avg_clustering_coefficient = 0.0;
  std::uint64_t triangle_count = 0;
  double fraction_closed_triangles = 0.0;
  std::optional<std::uint32_t> diameter;
  std::optional<double> avg_edge_weight;
  std::optional<StrongestEdge> strongest_edge;
  std::optional<double> degree_tail_slope;
  std::vector<std::string> warnings;
};

/// Full statistics suite. Quantities undefined for the graph (diameter of an
/// empty graph, edge-weight mean without edges) are left empty and noted in
/// `warnings`.
StatsReport compute_stats(const InGraph& g);

nlohmann::json to_json(const StatsReport& report);
nlohmann::json to_json(const DegreeHistogram& h);
/// Two-column `degree,count` CSV with header.
std::string histogram_csv(const DegreeHistogram& h);

}  // namespace ingnet
