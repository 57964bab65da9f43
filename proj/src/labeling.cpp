#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "ingnet/community.hpp"

namespace ingnet {

namespace {

void check_partition(const Partition& p, const InGraph& g) {
  if (p.node_count() != g.node_count())
    throw std::invalid_argument("partition covers " + std::to_string(p.node_count()) +
                                " nodes but the graph has " + std::to_string(g.node_count()));
}

}  // namespace

CommunityLabeling label_communities(const Partition& p, std::span<const CategorySet> categories,
                                    const InGraph& g) {
  if (categories.empty()) throw std::invalid_argument("labeling needs at least one category");
  check_partition(p, g);
  CommunityLabeling labeling;
  const auto members = p.members();
  for (CommunityId c = 0; c < members.size(); ++c) {
    CommunityLabel row;
    row.community = c;
    row.size = members[c].size();
    std::size_t best_hits = 0;
    const CategorySet* best = nullptr;
    for (const auto& cat : categories) {
      std::size_t hits = 0;
      for (NodeId u : members[c]) hits += cat.names.count(g.name(u));
      if (!best || hits > best_hits || (hits == best_hits && cat.label < best->label)) {
        best = &cat;
        best_hits = hits;
      }
    }
    row.label = best->label;
    row.score = row.size ? static_cast<double>(best_hits) / static_cast<double>(row.size) : 0.0;
    labeling.per_community.push_back(std::move(row));
  }
  return labeling;
}

CompareReport compare_partitions(std::span<const NamedPartition> results,
                                 std::span<const CategorySet> categories, const InGraph& g) {
  CompareReport report;
  for (const auto& r : results) {
    check_partition(r.partition, g);
    AlgorithmSummary s;
    s.algorithm = r.algorithm;
    s.community_count = r.partition.community_count();
    s.sizes = r.partition.sizes();
    s.modularity = modularity(g, r.partition);
    if (!categories.empty()) s.labeling = label_communities(r.partition, categories, g);
    report.algorithms.push_back(std::move(s));
  }
  return report;
}

std::vector<std::vector<std::string>> CompareReport::matrix() const {
  std::size_t rows = 0;
  for (const auto& a : algorithms) rows = std::max(rows, a.community_count);
  std::vector<std::vector<std::string>> m(rows, std::vector<std::string>(algorithms.size(), "-"));
  for (std::size_t col = 0; col < algorithms.size(); ++col) {
    const auto& a = algorithms[col];
    for (std::size_t row = 0; row < a.community_count; ++row)
      m[row][col] = a.labeling.per_community.empty() ? "unlabeled" : a.labeling.per_community[row].label;
  }
  return m;
}

std::string CompareReport::matrix_text() const {
  const auto m = matrix();
  std::vector<std::string> header{""};
  for (const auto& a : algorithms) header.push_back(a.algorithm);
  std::vector<std::vector<std::string>> table{header};
  for (std::size_t row = 0; row < m.size(); ++row) {
    std::vector<std::string> line{"C" + std::to_string(row + 1)};
    line.insert(line.end(), m[row].begin(), m[row].end());
    table.push_back(std::move(line));
  }
  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& line : table)
    for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
  std::ostringstream out;
  for (const auto& line : table) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      out << "| " << line[i] << std::string(width[i] - line[i].size(), ' ') << ' ';
    }
    out << "|\n";
  }
  return out.str();
}

nlohmann::json to_json(const CompareReport& report) {
  nlohmann::json algos = nlohmann::json::array();
  for (const auto& a : report.algorithms) {
    nlohmann::json labels = nlohmann::json::array();
    for (const auto& row : a.labeling.per_community)
      labels.push_back({{"community", row.community},
                        {"size", row.size},
                        {"label", row.label},
                        {"score", row.score}});
    algos.push_back({{"algorithm", a.algorithm},
                     {"community_count", a.community_count},
                     {"sizes", a.sizes},
                     {"modularity", a.modularity},
                     {"labeling", labels}});
  }
  nlohmann::json header = nlohmann::json::array();
  for (const auto& a : report.algorithms) header.push_back(a.algorithm);
  return {{"algorithms", algos}, {"matrix", {{"columns", header}, {"rows", report.matrix()}}}};
}

}  // namespace ingnet
