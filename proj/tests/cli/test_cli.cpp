#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "support/dot_grammar.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kData = INGNET_DATA_DIR;
const std::string kGolden = INGNET_TEST_DATA_DIR "/../golden/mini";

struct Run {
  int status;
  std::string err;
};

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() /
            ("ingnet_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }
  std::string operator/(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE_MESSAGE(in, "missing " << p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

Run run_cli(const std::string& args, const TempDir& scratch) {
  const auto err_path = scratch / "stderr.txt";
  const std::string cmd = std::string("'") + INGNET_CLI + "' " + args + " 2> '" + err_path + "' > /dev/null";
  const int raw = std::system(cmd.c_str());
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, fs::exists(err_path) ? slurp(err_path) : ""};
}

std::string mini_args(const std::string& out) {
  return "--input '" + kData + "/mini_corpus.jsonl' --stopwords '" + kData + "/stopwords.txt' --out '" + out + "'";
}

std::string recipe_line(const std::string& id, const std::vector<std::string>& lines) {
  json r = {{"id", id}, {"title", id}, {"ingredient_lines", lines}};
  return r.dump() + "\n";
}

}  // namespace

TEST_CASE("all on the mini-corpus is reproducible and matches the golden files") {
  TempDir scratch;
  const auto a = scratch / "a", b = scratch / "b";
  const std::string extra = " --categories Bread,Dessert,Drink";
  REQUIRE(run_cli("all " + mini_args(a) + extra, scratch).status == 0);
  REQUIRE(run_cli("all " + mini_args(b) + extra, scratch).status == 0);
  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(kGolden)) {
    const auto name = entry.path().filename();
    INFO(name.string());
    const auto golden = slurp(entry.path());
    CHECK(slurp(fs::path(a) / name) == golden);
    CHECK(slurp(fs::path(b) / name) == golden);
    ++files;
  }
  std::size_t produced = 0;
  for ([[maybe_unused]] const auto& entry : fs::directory_iterator(a)) ++produced;
  CHECK(produced == files);
  CHECK(files == 20);
}

TEST_CASE("CSV input normalizes to the same recipes") {
  TempDir scratch;
  const auto out = scratch / "csv";
  REQUIRE(run_cli("extract --format csv --input '" + kData + "/mini_corpus.csv' --stopwords '" + kData +
                     "/stopwords.txt' --out '" + out + "'",
                 scratch)
              .status == 0);
  CHECK(slurp(fs::path(out) / "recipes.normalized.jsonl") == slurp(fs::path(kGolden) / "recipes.normalized.jsonl"));
}

TEST_CASE("missing stop-word file names the path") {
  TempDir scratch;
  const auto missing = scratch / "no_such_stopwords.txt";
  const auto r = run_cli("extract --input '" + kData + "/mini_corpus.jsonl' --stopwords '" + missing +
                            "' --out '" + (scratch / "o") + "'",
                        scratch);
  CHECK(r.status != 0);
  CHECK(r.err.find(missing) != std::string::npos);
}

TEST_CASE("malformed corpus reports the line") {
  TempDir scratch;
  spit(scratch / "bad.jsonl", recipe_line("r1", {"salt"}) + "{not json\n");
  const auto r = run_cli("extract --input '" + (scratch / "bad.jsonl") + "' --stopwords '" + kData +
                            "/stopwords.txt' --out '" + (scratch / "o") + "'",
                        scratch);
  CHECK(r.status != 0);
  CHECK(r.err.find("line 2") != std::string::npos);
}

TEST_CASE("empty corpus succeeds with empty outputs") {
  TempDir scratch;
  spit(scratch / "empty.jsonl", "");
  const auto out = scratch / "o";
  const auto r = run_cli("extract --input '" + (scratch / "empty.jsonl") + "' --stopwords '" + kData +
                            "/stopwords.txt' --out '" + out + "'",
                        scratch);
  REQUIRE(r.status == 0);
  CHECK(slurp(fs::path(out) / "recipes.normalized.jsonl").empty());
  CHECK(slurp(fs::path(out) / "extraction_log.jsonl").empty());
  const auto summary = json::parse(slurp(fs::path(out) / "corpus_summary.json"));
  CHECK(summary["recipe_count"] == 0);
  CHECK(summary["unclassified_count"] == 0);
}

TEST_CASE("one recipe {a,b} gives a single edge line") {
  TempDir scratch;
  spit(scratch / "one.jsonl", recipe_line("r1", {"a", "b"}));
  spit(scratch / "stop.txt", "");
  const auto out = scratch / "o";
  REQUIRE(run_cli("graph --input '" + (scratch / "one.jsonl") + "' --stopwords '" + (scratch / "stop.txt") +
                     "' --out '" + out + "'",
                 scratch)
              .status == 0);
  CHECK(slurp(fs::path(out) / "edges.tsv") == "a\tb\t1\n");
}

TEST_CASE("DOT export passes the grammar check") {
  const auto g = ingnet::testing::parse_dot(slurp(fs::path(kGolden) / "graph.dot"));
  const auto stats = json::parse(slurp(fs::path(kGolden) / "stats.json"));
  CHECK(g.nodes.size() == stats["node_count"].get<std::size_t>());
  CHECK(g.edges.size() == stats["edge_count"].get<std::size_t>());
  for (const auto& e : g.edges) CHECK(e.attrs.count("weight") == 1);
}

TEST_CASE("unknown algorithm lists the valid names") {
  TempDir scratch;
  const auto r = run_cli("communities --algos leiden " + mini_args(scratch / "o"), scratch);
  CHECK(r.status != 0);
  CHECK(r.err.find("unknown algorithm") != std::string::npos);
  CHECK(r.err.find("louvain") != std::string::npos);
  CHECK(r.err.find("wabcd") != std::string::npos);
}

TEST_CASE("wabcd on an edgeless graph writes singletons") {
  TempDir scratch;
  spit(scratch / "solo.jsonl",
       recipe_line("r1", {"salt"}) + recipe_line("r2", {"rice"}) + recipe_line("r3", {"tea"}));
  spit(scratch / "stop.txt", "");
  const auto out = scratch / "o";
  REQUIRE(run_cli("communities --algos wabcd --input '" + (scratch / "solo.jsonl") + "' --stopwords '" +
                     (scratch / "stop.txt") + "' --out '" + out + "'",
                 scratch)
              .status == 0);
  const auto p = json::parse(slurp(fs::path(out) / "partition_wabcd.json"));
  CHECK(p.size() == 3);
  for (const auto& [id, members] : p.items()) CHECK(members.size() == 1);
}

TEST_CASE("stats on an edgeless graph omits the mean weight with a warning") {
  TempDir scratch;
  spit(scratch / "solo.jsonl", recipe_line("r1", {"salt"}) + recipe_line("r2", {"rice"}));
  spit(scratch / "stop.txt", "");
  const auto out = scratch / "o";
  const auto r = run_cli("stats --input '" + (scratch / "solo.jsonl") + "' --stopwords '" + (scratch / "stop.txt") +
                            "' --out '" + out + "'",
                        scratch);
  REQUIRE(r.status == 0);
  CHECK(r.err.find("warning") != std::string::npos);
  const auto stats = json::parse(slurp(fs::path(out) / "stats.json"));
  CHECK_FALSE(stats.contains("avg_edge_weight"));
  CHECK(stats["warnings"].size() == 1);
}

TEST_CASE("overlap needs 2 to 6 categories") {
  TempDir scratch;
  const auto seven = " --categories A,B,C,D,E,F,G";
  CHECK(run_cli("overlap " + mini_args(scratch / "o") + seven, scratch).status != 0);
  CHECK(run_cli("overlap " + mini_args(scratch / "p") + " --categories Bread", scratch).status != 0);
}

TEST_CASE("overlap with an absent category") {
  TempDir scratch;
  const auto out = scratch / "o";
  REQUIRE(run_cli("overlap " + mini_args(out) + " --categories Bread,Soup", scratch).status == 0);
  const auto j = json::parse(slurp(fs::path(out) / "overlap.json"));
  CHECK(j["regions"]["Soup"] == 0);
  CHECK(j["regions"]["Bread&Soup"] == 0);
  CHECK(j["union_size"] == j["regions"]["Bread"]);
}

TEST_CASE("stages chain through the output directory") {
  TempDir scratch;
  const auto out = scratch / "o";
  REQUIRE(run_cli("extract " + mini_args(out), scratch).status == 0);
  REQUIRE(run_cli("stats --out '" + out + "'", scratch).status == 0);
  CHECK(slurp(fs::path(out) / "stats.json") == slurp(fs::path(kGolden) / "stats.json"));
  // Without a prior extract and without --input there is nothing to read.
  CHECK(run_cli("graph --out '" + (scratch / "fresh") + "'", scratch).status == 2);
}

TEST_CASE("existing artifacts are not overwritten without --force") {
  TempDir scratch;
  const auto out = scratch / "o";
  REQUIRE(run_cli("extract " + mini_args(out), scratch).status == 0);
  const auto again = run_cli("extract " + mini_args(out), scratch);
  CHECK(again.status != 0);
  CHECK(again.err.find("--force") != std::string::npos);
  CHECK(run_cli("extract --force " + mini_args(out), scratch).status == 0);
}

TEST_CASE("changed input triggers a staleness warning") {
  TempDir scratch;
  const auto out = scratch / "o";
  spit(scratch / "c.jsonl", recipe_line("r1", {"a", "b"}));
  spit(scratch / "stop.txt", "");
  const auto args = "--input '" + (scratch / "c.jsonl") + "' --stopwords '" + (scratch / "stop.txt") + "' --out '" + out + "'";
  REQUIRE(run_cli("extract " + args, scratch).status == 0);
  CHECK(run_cli("graph " + args, scratch).err.find("different input") == std::string::npos);
  spit(scratch / "c.jsonl", recipe_line("r1", {"a", "c"}));
  const auto r = run_cli("graph --force " + args, scratch);
  CHECK(r.status == 0);
  CHECK(r.err.find("different input") != std::string::npos);
}

TEST_CASE("gold scoring through the CLI") {
  TempDir scratch;
  const auto out = scratch / "o";
  REQUIRE(run_cli("extract --input '" + kData + "/gold/gold_recipes.jsonl' --stopwords '" + kData +
                     "/stopwords.txt' --gold '" + kData + "/gold/gold_annotations.jsonl' --out '" + out + "'",
                 scratch)
              .status == 0);
  const auto acc = json::parse(slurp(fs::path(out) / "accuracy.json"));
  CHECK(acc["per_group"].size() == 4);
  CHECK(acc["per_recipe"].size() == 20);
}

TEST_CASE("bad flags exit with status 2") {
  TempDir scratch;
  CHECK(run_cli("", scratch).status == 2);
  CHECK(run_cli("extract --no-such-flag", scratch).status == 2);
  CHECK(run_cli("extract --format xml " + mini_args(scratch / "o"), scratch).status == 2);
}
