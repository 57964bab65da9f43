#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ingnet/graph.hpp"
#include "json.hpp"

namespace ingnet {

using CommunityId = std::uint32_t;

/// Total, non-overlapping assignment of nodes to communities 0..k-1.
/// Ids are canonical: larger communities first, ties broken by the
/// smallest member node id.
class Partition {
 public:
  Partition() = default;

  /// Canonicalizes arbitrary per-node labels.
  static Partition from_labels(std::span<const std::uint32_t> labels);
  static Partition singletons(std::size_t node_count);
  static Partition single_community(std::size_t node_count);

  std::size_t node_count() const noexcept { return assignment_.size(); }
  std::size_t community_count() const noexcept { return community_count_; }
  CommunityId community_of(NodeId u) const { return assignment_[u]; }
  std::span<const CommunityId> assignment() const noexcept { return assignment_; }

  /// Sorted node ids of each community.
  std::vector<std::vector<NodeId>> members() const;
  std::vector<std::size_t> sizes() const;

  bool operator==(const Partition&) const = default;

 private:
  std::vector<CommunityId> assignment_;
  std::size_t community_count_ = 0;
};

/// JSON object: community id -> sorted ingredient names.
nlohmann::json partition_to_json(const Partition& p, const InGraph& g);
/// `name<TAB>community_id` in node (name) order.
void write_partition_tsv(std::ostream& out, const Partition& p, const InGraph& g);

/// Weighted Newman modularity,
///   Q = 1/(2m) * sum_{u,v same community} [A_uv - resolution * k_u k_v / (2m)],
/// with weighted degrees k and total edge weight m. Throws
/// std::invalid_argument if p does not cover exactly g's nodes. An edgeless
/// graph has Q = 0.
double modularity(const InGraph& g, const Partition& p, double resolution = 1.0);

// ---------------------------------------------------------------------------
// WABCD: greedy agglomeration by average inter-community edge weight.

/// Exact average of `count` edge weights summing to `sum`. Comparisons are
/// done on the fraction, so ties are exact.
struct AverageWeight {
  Weight sum = 0;
  std::uint64_t count = 0;

  double value() const { return count ? static_cast<double>(sum) / static_cast<double>(count) : 0.0; }
  friend std::strong_ordering operator<=>(const AverageWeight& a, const AverageWeight& b);
  friend bool operator==(const AverageWeight& a, const AverageWeight& b) {
    return (a <=> b) == std::strong_ordering::equal;
  }
};

/// Communities are named by their founding node: the absorbing community
/// keeps its id.
struct WabcdMerge {
  NodeId into;
  NodeId absorbed;
  AverageWeight average;
};

struct WabcdPass {
  std::size_t pass = 0;
  std::vector<WabcdMerge> merges;
  std::optional<AverageWeight> best_average;
  /// False when the pass had no merge or its best average fell below the
  /// previous pass's; its merges are then not applied and the run stops.
  bool accepted = false;
  std::size_t community_count = 0;
  /// Founding node of each node's community after the pass.
  std::vector<NodeId> membership;
};

struct WabcdResult {
  Partition partition;
  std::vector<WabcdPass> trace;
};

enum class KernelMode { parallel, serial };

/// Runs WABCD. Every node starts as its own community. In each pass the
/// surviving communities A are visited in ascending id order; A merges with
/// the not-yet-merged community B of highest average inter-community weight
/// (ties: smallest B), and both sit out the rest of the pass. The run stops
/// at the first pass with no merge or with a best average strictly below the
/// previous pass's best. Throws std::invalid_argument on an empty graph.
WabcdResult wabcd(const InGraph& g, KernelMode mode = KernelMode::parallel);

nlohmann::json to_json(const WabcdPass& pass, const InGraph& g);
/// One JSON object per line.
void write_pass_trace(std::ostream& out, std::span<const WabcdPass> trace, const InGraph& g);

// ---------------------------------------------------------------------------
// Weighted Louvain baseline.

struct LouvainOptions {
  double resolution = 1.0;
  std::uint64_t seed = 0;
  /// Safety cap on local-moving sweeps per level.
  std::size_t max_sweeps = 1000;
};

struct LouvainResult {
  Partition partition;
  /// Modularity on the input graph of the singleton start and of the
  /// partition after each aggregation level.
  std::vector<double> level_modularity;
};

/// Two-phase Louvain: local moving to the neighbor community of best
/// modularity gain (node order shuffled from `seed`), then aggregation;
/// repeated until a level moves no node. Throws std::invalid_argument for an
/// edgeless graph or a non-positive resolution.
LouvainResult louvain_weighted(const InGraph& g, const LouvainOptions& options = {});

// ---------------------------------------------------------------------------
// Labeling and comparison against recipe categories.

struct CommunityLabel {
  CommunityId community = 0;
  std::size_t size = 0;
  std::string label;
  /// |community ∩ category| / |community|.
  double score = 0.0;
};

struct CommunityLabeling {
  std::vector<CommunityLabel> per_community;
};

/// Throws std::invalid_argument when `categories` is empty or the partition
/// does not match g.
CommunityLabeling label_communities(const Partition& p, std::span<const CategorySet> categories,
                                    const InGraph& g);

struct NamedPartition {
  std::string algorithm;
  Partition partition;
};

struct AlgorithmSummary {
  std::string algorithm;
  std::size_t community_count = 0;
  std::vector<std::size_t> sizes;
  double modularity = 0.0;
  CommunityLabeling labeling;
};

struct CompareReport {
  std::vector<AlgorithmSummary> algorithms;

  /// Rows C1..Cmax, one column per algorithm; cells hold the best category
  /// label or "-" when the algorithm has fewer communities.
  std::vector<std::vector<std::string>> matrix() const;
  std::string matrix_text() const;
};

/// With no categories the labeling tables are left empty and matrix cells
/// read "unlabeled".
CompareReport compare_partitions(std::span<const NamedPartition> results,
                                 std::span<const CategorySet> categories, const InGraph& g);

nlohmann::json to_json(const CompareReport& report);

}  // namespace ingnet
