#pragma once

// Data-parallel inner loops. Every kernel has a serial reference twin with
// the same signature; the parallel versions are used by the library and the
// serial ones are kept for tests and the benchmark.

#include <cstdint>
#include <span>
#include <vector>

#include "ingnet/graph.hpp"

namespace ingnet::kernels {

/// Packs an unordered pair (u < v) into one key.
constexpr std::uint64_t pair_key(NodeId u, NodeId v) {
  return (static_cast<std::uint64_t>(u) << 32) | v;
}
constexpr NodeId pair_first(std::uint64_t key) { return static_cast<NodeId>(key >> 32); }
constexpr NodeId pair_second(std::uint64_t key) { return static_cast<NodeId>(key & 0xffffffffu); }

/// Counts, for every unordered node pair, the number of groups containing
/// both. Each group must be sorted and duplicate-free. Output is sorted by
/// key.
std::vector<Edge> count_pairs_serial(std::span<const std::vector<NodeId>> groups);
std::vector<Edge> count_pairs_parallel(std::span<const std::vector<NodeId>> groups);

/// Number of triangles through each node.
std::vector<std::uint64_t> node_triangles_serial(const InGraph& g);
std::vector<std::uint64_t> node_triangles_parallel(const InGraph& g);

/// Unweighted BFS eccentricity of each source, restricted to the source's
/// connected component.
std::vector<std::uint32_t> eccentricities_serial(const InGraph& g, std::span<const NodeId> sources);
std::vector<std::uint32_t> eccentricities_parallel(const InGraph& g, std::span<const NodeId> sources);

/// Weight summed over existing edges between two communities, and the
/// number of such edges.
struct CommunityLink {
  std::uint32_t community;
  Weight sum;
  std::uint64_t count;
  bool operator==(const CommunityLink&) const = default;
};

/// For every community c (index into `members`), the links from c to every
/// other community it touches, sorted by community index. `membership`
/// maps each node to its community index.
std::vector<std::vector<CommunityLink>> community_links_serial(
    const InGraph& g, std::span<const std::uint32_t> membership,
    std::span<const std::vector<NodeId>> members);
std::vector<std::vector<CommunityLink>> community_links_parallel(
    const InGraph& g, std::span<const std::uint32_t> membership,
    std::span<const std::vector<NodeId>> members);

/// Caps the worker count used by the parallel kernels; 0 restores the
/// runtime default. No-op without OpenMP.
void set_thread_count(int threads);
int max_threads();

}  // namespace ingnet::kernels
