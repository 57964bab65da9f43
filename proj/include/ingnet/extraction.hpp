#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "ingnet/corpus.hpp"
#include "json.hpp"

namespace ingnet {

/// Ingredient stop words: units, quantities and preparation terms that are
/// removed from raw ingredient lines. Entries are lowercase single tokens.
class StopWordSet {
 public:
  StopWordSet() = default;
  StopWordSet(std::initializer_list<std::string_view> words);

  /// Inserts a lowercased copy. Throws std::invalid_argument if the token is
  /// empty or contains whitespace.
  void insert(std::string_view word);
  bool contains(std::string_view token) const;
  std::size_t size() const noexcept { return words_.size(); }
  bool empty() const noexcept { return words_.empty(); }
  std::vector<std::string> sorted() const;

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept {
      return std::hash<std::string_view>{}(s);
    }
  };
  std::unordered_set<std::string, Hash, std::equal_to<>> words_;
};

class StopWordError : public std::runtime_error {
 public:
  StopWordError(const std::string& what, std::size_t line)
      : std::runtime_error(what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// One token per line; blank lines and '#' comments are skipped.
StopWordSet load_stopwords(std::istream& in);

/// Lowercases ASCII and splits on whitespace and punctuation. Digit runs
/// (digits and '.') are split from adjacent letters, so "2kg" yields
/// ["2", "kg"]. Runs made only of '.' are dropped.
std::vector<std::string> tokenize(std::string_view line);

/// True if every character is a digit or '.'.
bool is_numeric_token(std::string_view token);

/// Removes numeric tokens and stop words; the survivors joined by single
/// spaces form the ingredient name. Returns nullopt when nothing survives.
std::optional<std::string> extract_ingredient(std::string_view line, const StopWordSet& stopwords);

/// A recipe after normalization.
struct Recipe {
  RawRecipe raw;
  std::set<std::string> ingredients;
  /// Set when every ingredient line was filtered away.
  bool flagged = false;

  const std::string& id() const noexcept { return raw.id; }
  const std::optional<std::string>& category() const noexcept { return raw.category; }
  bool operator==(const Recipe&) const = default;
};

struct ExtractionLogEntry {
  std::string id;
  std::string line;
  std::string reason;
  bool operator==(const ExtractionLogEntry&) const = default;
};

struct ExtractionResult {
  std::vector<Recipe> recipes;
  std::vector<ExtractionLogEntry> log;
};

ExtractionResult extract_corpus(std::span<const RawRecipe> recipes, const StopWordSet& stopwords);

nlohmann::json recipe_to_json(const Recipe& recipe);
Recipe recipe_from_json(const nlohmann::json& object);
void write_recipes_jsonl(std::ostream& out, std::span<const Recipe> recipes);
/// Reads normalized recipes written by write_recipes_jsonl.
std::vector<Recipe> read_recipes_jsonl(std::istream& in);
void write_extraction_log(std::ostream& out, std::span<const ExtractionLogEntry> log);

/// Tokenized, lowercased, single-space-joined form used for accuracy
/// matching (no stop-word filtering).
std::string normalize_name(std::string_view name);

struct GroupAccuracy {
  double avg = 0.0;
  double min = 0.0;
  double max = 0.0;
  std::size_t recipes = 0;
  bool operator==(const GroupAccuracy&) const = default;
};

struct AccuracyReport {
  std::vector<std::pair<std::string, double>> per_recipe;  // sorted by id
  std::map<std::string, GroupAccuracy> per_group;
};

using NameSets = std::map<std::string, std::set<std::string>>;

/// Recall-style accuracy: |predicted ∩ gold| / |gold| per recipe, then
/// mean/min/max per group. Recipes without a group fall in "ungrouped".
AccuracyReport score_extraction(const NameSets& predicted, const NameSets& gold,
                                const std::map<std::string, std::string>& grouping);

struct GoldAnnotations {
  NameSets ingredients;
  std::map<std::string, std::string> groups;
};

/// Gold file: JSONL with keys id, ingredients (array of strings), group.
GoldAnnotations load_gold_annotations(std::istream& in);

nlohmann::json to_json(const AccuracyReport& report);

}  // namespace ingnet
