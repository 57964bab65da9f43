#include "ingnet/overlap.hpp"

#include <set>
#include <stdexcept>

namespace ingnet {

std::string OverlapRegions::signature(std::uint32_t mask) const {
  std::string out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!(mask & (1u << i))) continue;
    if (!out.empty()) out.push_back('&');
    out += labels[i];
  }
  return out;
}

std::size_t OverlapRegions::count(std::uint32_t mask) const {
  auto it = counts.find(mask);
  return it == counts.end() ? 0 : it->second;
}

std::size_t OverlapRegions::shared_by_all() const {
  return count((1u << labels.size()) - 1);
}

OverlapRegions overlap_regions(std::span<const CategorySet> sets) {
  if (sets.size() < 2 || sets.size() > kMaxOverlapSets)
    throw std::invalid_argument("overlap needs between 2 and " + std::to_string(kMaxOverlapSets) +
                                " sets, got " + std::to_string(sets.size()));
  OverlapRegions r;
  std::set<std::string> seen;
  for (const auto& s : sets) {
    if (!seen.insert(s.label).second)
      throw std::invalid_argument("duplicate overlap label '" + s.label + "'");
    r.labels.push_back(s.label);
  }
  const std::uint32_t full = (1u << sets.size()) - 1;
  for (std::uint32_t mask = 1; mask <= full; ++mask) r.counts[mask] = 0;

  std::map<std::string, std::uint32_t> membership;
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (const auto& name : sets[i].names) membership[name] |= 1u << i;
  for (const auto& [_, mask] : membership) ++r.counts[mask];
  r.union_size = membership.size();
  return r;
}

nlohmann::json to_json(const OverlapRegions& r) {
  nlohmann::json regions = nlohmann::json::object();
  for (const auto& [mask, count] : r.counts) regions[r.signature(mask)] = count;
  return {{"labels", r.labels},
          {"regions", regions},
          {"union_size", r.union_size},
          {"shared_by_all", r.shared_by_all()}};
}

}  // namespace ingnet
