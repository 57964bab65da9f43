#include <exception>
#include <functional>
#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "ingnet/corpus.hpp"

namespace {

using ingnet::cli::RunConfig;

void add_common(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--input", cfg.input, "Recipe corpus file");
  cmd->add_option("--format", cfg.format, "Corpus format: jsonl or csv")->capture_default_str();
  cmd->add_option("--stopwords", cfg.stopwords, "Stop-word file (one token per line)");
  cmd->add_option("--out", cfg.out, "Output directory")->capture_default_str();
  cmd->add_flag("--force", cfg.force, "Overwrite existing artifacts");
  cmd->add_option("--threads", cfg.threads, "Worker threads for parallel kernels (0 = all)")
      ->capture_default_str();
}

void add_community_flags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--algos", cfg.algos, "Detectors to run: wabcd, louvain")
      ->delimiter(',')
      ->capture_default_str();
  cmd->add_option("--seed", cfg.seed, "Louvain shuffle seed")->capture_default_str();
  cmd->add_option("--resolution", cfg.resolution, "Louvain resolution")->capture_default_str();
}

void add_categories(CLI::App* cmd, RunConfig& cfg, const char* help) {
  cmd->add_option("--categories", cfg.categories, help)->delimiter(',');
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ingredient co-occurrence network toolkit"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::function<void(const RunConfig&)> action;

  auto* extract = app.add_subcommand("extract", "Normalize ingredient lines and summarize the corpus");
  add_common(extract, cfg);
  extract->add_option("--gold", cfg.gold, "Gold annotations (JSONL) for accuracy scoring");
  extract->callback([&] { action = ingnet::cli::cmd_extract; });

  auto* graph = app.add_subcommand("graph", "Build the network and export it");
  add_common(graph, cfg);
  graph->add_option("--export", cfg.exports, "Export formats: tsv, dot, graphml")
      ->delimiter(',')
      ->capture_default_str();
  graph->callback([&] { action = ingnet::cli::cmd_graph; });

  auto* stats = app.add_subcommand("stats", "Network statistics and degree histograms");
  add_common(stats, cfg);
  stats->callback([&] { action = ingnet::cli::cmd_stats; });

  auto* communities = app.add_subcommand("communities", "Detect, label and compare communities");
  add_common(communities, cfg);
  add_community_flags(communities, cfg);
  add_categories(communities, cfg, "Categories used for labeling (default: all)");
  communities->callback([&] { action = ingnet::cli::cmd_communities; });

  auto* overlap = app.add_subcommand("overlap", "Ingredient overlap across 2-6 categories");
  add_common(overlap, cfg);
  add_categories(overlap, cfg, "Categories to intersect");
  overlap->callback([&] { action = ingnet::cli::cmd_overlap; });

  auto* all = app.add_subcommand("all", "Run every stage");
  add_common(all, cfg);
  all->add_option("--gold", cfg.gold, "Gold annotations (JSONL) for accuracy scoring");
  add_community_flags(all, cfg);
  add_categories(all, cfg, "Categories for labeling and overlap");
  all->add_option("--export", cfg.exports, "Export formats: tsv, dot, graphml")->delimiter(',');
  all->callback([&] { action = ingnet::cli::cmd_all; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    action(cfg);
  } catch (const ingnet::cli::UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
