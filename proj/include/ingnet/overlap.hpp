#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "ingnet/graph.hpp"
#include "json.hpp"

namespace ingnet {

/// Venn-style region counts over 2..6 labeled ingredient sets. A region is
/// a non-empty subset of labels, encoded as a bit mask over the input
/// order; its count is the number of names that belong to exactly those
/// sets. Every region is present, including empty ones.
struct OverlapRegions {
  std::vector<std::string> labels;
  std::map<std::uint32_t, std::size_t> counts;
  std::size_t union_size = 0;

  /// Member labels joined by '&', in input order.
  std::string signature(std::uint32_t mask) const;
  std::size_t count(std::uint32_t mask) const;
  /// Names shared by every set.
  std::size_t shared_by_all() const;
};

inline constexpr std::size_t kMaxOverlapSets = 6;

/// Throws std::invalid_argument for fewer than 2 or more than 6 sets, or
/// for duplicate labels.
OverlapRegions overlap_regions(std::span<const CategorySet> sets);

nlohmann::json to_json(const OverlapRegions& regions);

}  // namespace ingnet
