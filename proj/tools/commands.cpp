#include "commands.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#include "ingnet/community.hpp"
#include "ingnet/corpus.hpp"
#include "ingnet/export.hpp"
#include "ingnet/extraction.hpp"
#include "ingnet/graph.hpp"
#include "ingnet/kernels.hpp"
#include "ingnet/overlap.hpp"
#include "ingnet/stats.hpp"

namespace ingnet::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kNormalized = "recipes.normalized.jsonl";
constexpr const char* kExtractMeta = "extract_meta.json";
const std::vector<std::string> kAlgorithms{"louvain", "wabcd"};

std::string read_file(const fs::path& path, const char* what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(std::string("cannot open ") + what + " '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 failed");
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i)
    out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  return out.str();
}

class OutputDir {
 public:
  OutputDir(fs::path root, bool force) : root_(std::move(root)), force_(force) {
    fs::create_directories(root_);
  }

  const fs::path& root() const { return root_; }

  void write(const std::string& name, const std::string& content) const {
    const auto path = root_ / name;
    if (fs::exists(path) && !force_)
      throw std::runtime_error("refusing to overwrite '" + path.string() + "' (pass --force)");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << content;
    out.close();
    if (!out) throw std::runtime_error("failed to write '" + path.string() + "'");
  }

  void write_json(const std::string& name, const json& value) const { write(name, value.dump(2) + "\n"); }

 private:
  fs::path root_;
  bool force_;
};

void warn(const std::string& message) { std::cerr << "warning: " << message << '\n'; }

void apply_threads(const RunConfig& config) {
  if (config.threads < 0) throw UsageError("--threads must be non-negative");
  kernels::set_thread_count(config.threads);
}

CorpusFormat input_format(const RunConfig& config) {
  auto f = parse_corpus_format(config.format);
  if (!f) throw UsageError("unknown --format '" + config.format + "' (valid: jsonl, csv)");
  return *f;
}

std::vector<Recipe> load_normalized(const RunConfig& config) {
  const auto path = config.out / kNormalized;
  if (!fs::exists(path)) {
    if (config.input.empty() || config.stopwords.empty())
      throw UsageError("no " + std::string(kNormalized) + " in '" + config.out.string() +
                       "'; run extract first or pass --input and --stopwords");
    cmd_extract(config);
  } else if (!config.input.empty()) {
    const auto meta_path = config.out / kExtractMeta;
    std::string recorded;
    if (fs::exists(meta_path)) {
      auto meta = json::parse(read_file(meta_path, "extraction metadata"));
      recorded = meta.value("input_sha256", "");
    }
    if (recorded != sha256_hex(read_file(config.input, "input corpus")))
      warn("'" + path.string() + "' was produced from different input content; rerun extract to refresh it");
  }
  std::ifstream in(path, std::ios::binary);
  return read_recipes_jsonl(in);
}

std::vector<std::string> corpus_categories(std::span<const Recipe> recipes) {
  std::set<std::string> labels;
  for (const auto& r : recipes)
    if (r.category()) labels.insert(*r.category());
  return {labels.begin(), labels.end()};
}

std::vector<CategorySet> category_sets(std::span<const Recipe> recipes,
                                       const std::vector<std::string>& labels) {
  std::vector<CategorySet> sets;
  for (const auto& label : labels) sets.push_back({label, category_ingredients(recipes, label)});
  return sets;
}

template <class F>
std::string render(F&& f) {
  std::ostringstream out;
  f(out);
  return out.str();
}

}  // namespace

void cmd_extract(const RunConfig& config) {
  apply_threads(config);
  if (config.input.empty()) throw UsageError("extract needs --input");
  if (config.stopwords.empty()) throw UsageError("extract needs --stopwords");
  const auto format = input_format(config);

  const auto stop_text = read_file(config.stopwords, "stop-word file");
  std::istringstream stop_in(stop_text);
  const auto stopwords = load_stopwords(stop_in);

  const auto corpus_text = read_file(config.input, "input corpus");
  std::istringstream corpus_in(corpus_text);
  const auto raw = parse_recipe_file(corpus_in, format);
  const auto extracted = extract_corpus(raw, stopwords);

  OutputDir out(config.out, config.force);
  out.write(kNormalized, render([&](std::ostream& os) { write_recipes_jsonl(os, extracted.recipes); }));
  out.write("extraction_log.jsonl", render([&](std::ostream& os) { write_extraction_log(os, extracted.log); }));
  out.write_json("corpus_summary.json", to_json(summarize_corpus(raw)));
  out.write_json(kExtractMeta, {{"format", config.format},
                                {"input_sha256", sha256_hex(corpus_text)},
                                {"stopwords_sha256", sha256_hex(stop_text)},
                                {"stopword_count", stopwords.size()},
                                {"recipe_count", raw.size()},
                                {"log_entries", extracted.log.size()}});

  if (!config.gold.empty()) {
    std::istringstream gold_in(read_file(config.gold, "gold annotation file"));
    const auto gold = load_gold_annotations(gold_in);
    NameSets predicted;
    for (const auto& r : extracted.recipes) predicted[r.id()] = r.ingredients;
    out.write_json("accuracy.json", to_json(score_extraction(predicted, gold.ingredients, gold.groups)));
  }
}

void cmd_graph(const RunConfig& config) {
  apply_threads(config);
  const auto recipes = load_normalized(config);
  const auto g = build_network(recipes);
  OutputDir out(config.out, config.force);
  for (const auto& fmt : config.exports) {
    if (fmt == "tsv")
      out.write("edges.tsv", render([&](std::ostream& os) { write_edge_list(os, g); }));
    else if (fmt == "dot")
      out.write("graph.dot", render([&](std::ostream& os) { write_dot(os, g); }));
    else if (fmt == "graphml")
      out.write("graph.graphml", render([&](std::ostream& os) { write_graphml(os, g); }));
    else
      throw UsageError("unknown export format '" + fmt + "' (valid: tsv, dot, graphml)");
  }
}

void cmd_stats(const RunConfig& config) {
  apply_threads(config);
  const auto recipes = load_normalized(config);
  const auto g = build_network(recipes);
  const auto report = compute_stats(g);
  for (const auto& w : report.warnings) warn(w);
  const auto plain = degree_distribution(g, false);
  const auto cumulative = degree_distribution(g, true);
  OutputDir out(config.out, config.force);
  out.write_json("stats.json", to_json(report));
  out.write_json("degree_histogram.json", {{"plain", to_json(plain)}, {"cumulative", to_json(cumulative)}});
  out.write("degree_histogram.csv", histogram_csv(plain));
  out.write("degree_histogram_cumulative.csv", histogram_csv(cumulative));
}

void cmd_communities(const RunConfig& config) {
  apply_threads(config);
  for (const auto& algo : config.algos) {
    if (std::find(kAlgorithms.begin(), kAlgorithms.end(), algo) == kAlgorithms.end())
      throw UsageError("unknown algorithm '" + algo + "' (valid: louvain, wabcd)");
  }
  if (config.algos.empty()) throw UsageError("--algos is empty (valid: louvain, wabcd)");
  if (!(config.resolution > 0.0)) throw UsageError("--resolution must be positive");

  const auto recipes = load_normalized(config);
  const auto g = build_network(recipes);
  if (g.empty()) throw std::runtime_error("graph has no nodes; nothing to partition");
  OutputDir out(config.out, config.force);

  std::vector<NamedPartition> results;
  for (const auto& algo : config.algos) {
    if (algo == "wabcd") {
      const auto r = wabcd(g);
      out.write("wabcd_trace.jsonl", render([&](std::ostream& os) { write_pass_trace(os, r.trace, g); }));
      results.push_back({algo, r.partition});
    } else {
      const auto r = louvain_weighted(g, {config.resolution, config.seed});
      out.write_json("louvain_levels.json", {{"seed", config.seed},
                                             {"resolution", config.resolution},
                                             {"level_modularity", r.level_modularity}});
      results.push_back({algo, r.partition});
    }
    const auto& p = results.back().partition;
    out.write_json("partition_" + algo + ".json", partition_to_json(p, g));
    out.write("partition_" + algo + ".tsv", render([&](std::ostream& os) { write_partition_tsv(os, p, g); }));
  }

  const auto labels = config.categories.empty() ? corpus_categories(recipes) : config.categories;
  const auto report = compare_partitions(results, category_sets(recipes, labels), g);
  out.write_json("compare.json", to_json(report));
  out.write("compare.txt", report.matrix_text());
}

void cmd_overlap(const RunConfig& config) {
  apply_threads(config);
  if (config.categories.size() < 2 || config.categories.size() > kMaxOverlapSets)
    throw UsageError("overlap needs 2 to " + std::to_string(kMaxOverlapSets) + " --categories, got " +
                     std::to_string(config.categories.size()));
  const auto recipes = load_normalized(config);
  const auto regions = overlap_regions(category_sets(recipes, config.categories));
  OutputDir out(config.out, config.force);
  out.write_json("overlap.json", to_json(regions));
}

void cmd_all(const RunConfig& config) {
  cmd_extract(config);
  cmd_graph(config);
  cmd_stats(config);
  cmd_communities(config);
  if (config.categories.size() >= 2 && config.categories.size() <= kMaxOverlapSets)
    cmd_overlap(config);
  else if (!config.categories.empty())
    warn("overlap skipped: needs 2 to 6 --categories");
}

}  // namespace ingnet::cli
