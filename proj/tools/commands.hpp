#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ingnet::cli {

/// Bad flags or arguments; reported with exit status 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::filesystem::path input;
  std::string format = "jsonl";
  std::filesystem::path stopwords;
  std::filesystem::path gold;
  std::filesystem::path out = "out";
  bool force = false;
  int threads = 0;
  std::vector<std::string> algos{"wabcd", "louvain"};
  std::uint64_t seed = 42;
  double resolution = 1.0;
  std::vector<std::string> categories;
  std::vector<std::string> exports{"tsv", "dot", "graphml"};
};

void cmd_extract(const RunConfig& config);
void cmd_graph(const RunConfig& config);
void cmd_stats(const RunConfig& config);
void cmd_communities(const RunConfig& config);
void cmd_overlap(const RunConfig& config);
void cmd_all(const RunConfig& config);

}  // namespace ingnet::cli
