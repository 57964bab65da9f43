#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>
#include <random>
#include <sstream>

#include "ingnet/extraction.hpp"

using namespace ingnet;
using Tokens = std::vector<std::string>;

namespace {

StopWordSet stopwords_from(const std::string& text) {
  std::istringstream in(text);
  return load_stopwords(in);
}

StopWordSet bundled_stopwords() {
  std::ifstream in(INGNET_DATA_DIR "/stopwords.txt");
  REQUIRE(in);
  return load_stopwords(in);
}

RawRecipe raw(std::string id, std::vector<std::string> lines) {
  RawRecipe r;
  r.id = std::move(id);
  r.title = "t";
  r.ingredient_lines = std::move(lines);
  return r;
}

std::size_t word_count(const std::optional<std::string>& s) {
  if (!s) return 0;
  return static_cast<std::size_t>(std::count(s->begin(), s->end(), ' ')) + 1;
}

std::string random_line(std::mt19937_64& rng) {
  static const std::vector<std::string> words{"2",     "1/2",   "0.5",    "tbsp",  "Cup",   "chopped",
                                              "fresh", "Onion", "GARLIC", "rice",  "ice",   "2kg",
                                              "(",     ")",     ",",      "-",     "low-fat", "milk",
                                              "½",     "jalapeño", "...", "pinch", "salt", "3.5g"};
  std::uniform_int_distribution<std::size_t> len(0, 8), pick(0, words.size() - 1);
  std::string s;
  for (auto n = len(rng); n > 0; --n) {
    if (!s.empty()) s += ' ';
    s += words[pick(rng)];
  }
  return s;
}

}  // namespace

TEST_CASE("stop words fold case and collapse duplicates") {
  auto s = stopwords_from("cup\ntbsp\nCup\n");
  CHECK(s.size() == 2);
  CHECK(s.contains("cup"));
  CHECK(s.contains("tbsp"));
  CHECK(stopwords_from("").empty());
  CHECK(stopwords_from("# units\n\n  kg  \n").sorted() == Tokens{"kg"});
}

TEST_CASE("stop word with inner whitespace fails at its line") {
  try {
    stopwords_from("two words\n");
    FAIL("expected StopWordError");
  } catch (const StopWordError& e) {
    CHECK(e.line() == 1);
  }
  try {
    stopwords_from("cup\n# c\nbad\tword\n");
    FAIL("expected StopWordError");
  } catch (const StopWordError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("tokenize") {
  CHECK(tokenize("2 tbsp Coriander, chopped") == Tokens{"2", "tbsp", "coriander", "chopped"});
  CHECK(tokenize("").empty());
  CHECK(tokenize("1/2 cup low-fat milk") == Tokens{"1", "2", "cup", "low", "fat", "milk"});
  CHECK(tokenize("2kg (approx.)") == Tokens{"2", "kg", "approx"});
  CHECK(tokenize("2kg") == Tokens{"2", "kg"});
  CHECK(tokenize("1.5 cups") == Tokens{"1.5", "cups"});
  CHECK(tokenize("...") == Tokens{});
  CHECK(tokenize("jalapeño") == Tokens{"jalapeño"});
}

TEST_CASE("numeric tokens") {
  CHECK(is_numeric_token("2"));
  CHECK(is_numeric_token("0.25"));
  CHECK(is_numeric_token("1."));
  CHECK_FALSE(is_numeric_token("2kg"));
  CHECK_FALSE(is_numeric_token(""));
}

TEST_CASE("extract_ingredient") {
  const StopWordSet sws{"tbsp", "chopped", "cup", "kg"};
  CHECK(extract_ingredient("2 tbsp chopped coriander", sws) == "coriander");
  CHECK(extract_ingredient("1/2 cup sugar", sws) == "sugar");
  CHECK_FALSE(extract_ingredient("3 kg", sws).has_value());
  CHECK(extract_ingredient("2kg rice", sws) == "rice");
}

TEST_CASE("stop words match whole tokens only") {
  const StopWordSet sws{"ice"};
  CHECK(extract_ingredient("rice", sws) == "rice");
  CHECK(extract_ingredient("ice", sws) == std::nullopt);
}

TEST_CASE("extract_corpus") {
  const StopWordSet sws{"cup", "kg"};
  const std::vector<RawRecipe> recipes{raw("a", {"1 cup rice", "salt"}), raw("b", {"2 kg"}),
                                       raw("c", {"salt", "Salt"})};
  const auto result = extract_corpus(recipes, sws);
  REQUIRE(result.recipes.size() == 3);
  CHECK(result.recipes[0].ingredients == std::set<std::string>{"rice", "salt"});
  CHECK_FALSE(result.recipes[0].flagged);
  CHECK(result.recipes[1].ingredients.empty());
  CHECK(result.recipes[1].flagged);
  CHECK(result.recipes[2].ingredients == std::set<std::string>{"salt"});
  REQUIRE(result.log.size() == 2);
  CHECK(result.log[0] == ExtractionLogEntry{"b", "2 kg", "no_ingredient_tokens"});
  CHECK(result.log[1].reason == "recipe_without_ingredients");
}

TEST_CASE("normalized recipes survive a JSONL round trip") {
  const StopWordSet sws{"cup"};
  auto r = raw("x", {"1 cup rice", "3"});
  r.category = "Lunch/Dinner";
  const auto result = extract_corpus(std::vector<RawRecipe>{r, raw("y", {"9"})}, sws);
  std::stringstream buf;
  write_recipes_jsonl(buf, result.recipes);
  CHECK(read_recipes_jsonl(buf) == result.recipes);
}

TEST_CASE("idempotence and monotone filtering over random lines") {
  std::mt19937_64 rng(2024);
  const auto base = bundled_stopwords();
  const Tokens extra_pool{"onion", "milk", "fat", "low", "salt", "garlic", "rice"};
  for (int i = 0; i < 1000; ++i) {
    const auto line = random_line(rng);
    const auto name = extract_ingredient(line, base);
    if (name) {
      CHECK(extract_ingredient(*name, base) == name);
      CHECK(!name->empty());
      CHECK(name->find("  ") == std::string::npos);
    }
    auto bigger = base;
    bigger.insert(extra_pool[static_cast<std::size_t>(i) % extra_pool.size()]);
    CHECK(word_count(extract_ingredient(line, bigger)) <= word_count(name));
  }
}

TEST_CASE("score_extraction set arithmetic") {
  const NameSets gold{{"r", {"a", "b", "c", "d"}}};
  const auto rep = score_extraction({{"r", {"a", "b", "e"}}}, gold, {});
  REQUIRE(rep.per_recipe.size() == 1);
  CHECK(rep.per_recipe[0].second == 0.5);
  CHECK(rep.per_group.at("ungrouped").avg == 0.5);

  const auto perfect = score_extraction(gold, gold, {{"r", "g"}});
  CHECK(perfect.per_recipe[0].second == 1.0);
  CHECK(score_extraction({{"r", {"a", "b", "c", "d", "z"}}}, gold, {}).per_recipe[0].second == 1.0);
  CHECK(score_extraction({{"r", {"z"}}}, gold, {}).per_recipe[0].second == 0.0);
}

TEST_CASE("score_extraction errors") {
  CHECK_THROWS_AS(score_extraction({}, {{"r", {"a"}}}, {}), std::invalid_argument);
  CHECK_THROWS_AS(score_extraction({{"r", {"a"}}}, {{"r", {}}}, {}), std::invalid_argument);
}

TEST_CASE("group aggregates ignore recipe order") {
  std::mt19937_64 rng(5);
  NameSets gold, pred;
  std::map<std::string, std::string> groups;
  for (int i = 0; i < 30; ++i) {
    const auto id = "r" + std::to_string(i);
    for (int k = 0; k < 5; ++k) gold[id].insert("g" + std::to_string(k));
    auto& p = pred[id];
    for (int k = 0; k < 5; ++k)
      if (rng() % 2) p.insert("g" + std::to_string(k));
    groups[id] = (i % 3 == 0) ? "A" : "B";
  }
  // Maps are ordered, so order invariance is checked through renamed ids
  // that sort differently.
  NameSets gold2, pred2;
  std::map<std::string, std::string> groups2;
  for (const auto& [id, s] : gold) gold2["z" + std::string(id.rbegin(), id.rend())] = s;
  for (const auto& [id, s] : pred) pred2["z" + std::string(id.rbegin(), id.rend())] = s;
  for (const auto& [id, g] : groups) groups2["z" + std::string(id.rbegin(), id.rend())] = g;
  const auto a = score_extraction(pred, gold, groups);
  const auto b = score_extraction(pred2, gold2, groups2);
  CHECK(a.per_group == b.per_group);
  for (const auto& [g, acc] : a.per_group) {
    CHECK(acc.min <= acc.avg);
    CHECK(acc.avg <= acc.max);
  }
}

TEST_CASE("bundled gold fixture reproduces the hand-computed answer file") {
  std::ifstream recipes_in(INGNET_DATA_DIR "/gold/gold_recipes.jsonl");
  std::ifstream gold_in(INGNET_DATA_DIR "/gold/gold_annotations.jsonl");
  std::ifstream expected_in(INGNET_DATA_DIR "/gold/expected_accuracy.json");
  REQUIRE(recipes_in);
  REQUIRE(gold_in);
  REQUIRE(expected_in);
  const auto extracted = extract_corpus(parse_recipe_file(recipes_in, CorpusFormat::jsonl), bundled_stopwords());
  const auto gold = load_gold_annotations(gold_in);
  const auto expected = nlohmann::json::parse(expected_in);

  NameSets predicted;
  for (const auto& r : extracted.recipes) predicted[r.id()] = r.ingredients;
  const auto report = score_extraction(predicted, gold.ingredients, gold.groups);

  auto frac = [](const nlohmann::json& f) { return f[0].get<double>() / f[1].get<double>(); };
  REQUIRE(report.per_recipe.size() == expected["per_recipe"].size());
  for (const auto& [id, acc] : report.per_recipe) {
    INFO(id);
    CHECK(acc == frac(expected["per_recipe"][id]));
  }
  REQUIRE(report.per_group.size() == expected["per_group"].size());
  for (const auto& [group, acc] : report.per_group) {
    INFO(group);
    const auto& e = expected["per_group"][group];
    CHECK(acc.avg == frac(e["avg"]));
    CHECK(acc.min == frac(e["min"]));
    CHECK(acc.max == frac(e["max"]));
    CHECK(acc.recipes == 5);
  }
}
