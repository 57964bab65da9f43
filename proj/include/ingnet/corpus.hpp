#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace ingnet {

/// One recipe record as read from a corpus file, before ingredient
/// normalization. Ingredient lines keep quantities and units.
struct RawRecipe {
  std::string id;
  std::string title;
  std::optional<std::string> cuisine;
  std::optional<std::string> category;
  std::optional<std::int64_t> prep_time_minutes;
  std::vector<std::string> ingredient_lines;
  std::optional<std::string> instructions;

  bool operator==(const RawRecipe&) const = default;
};

enum class CorpusFormat { jsonl, csv };

std::optional<CorpusFormat> parse_corpus_format(std::string_view name);

/// Raised for malformed records. `line()` is the 1-based line on which the
/// offending record starts, or 0 when the error is not tied to one line
/// (duplicate ids, for instance).
class CorpusError : public std::runtime_error {
 public:
  CorpusError(const std::string& what, std::size_t line)
      : std::runtime_error(what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

std::vector<RawRecipe> parse_recipe_file(std::istream& in, CorpusFormat format);

/// Writes recipes so that parse_recipe_file reads them back unchanged.
/// CSV output rejects ingredient lines containing the '|' sub-delimiter.
void write_recipe_file(std::ostream& out, std::span<const RawRecipe> recipes,
                       CorpusFormat format);

nlohmann::json raw_recipe_to_json(const RawRecipe& recipe);

/// Parses one JSON object into a RawRecipe. Throws CorpusError (line 0) on
/// schema violations; the caller attaches location context.
RawRecipe raw_recipe_from_json(const nlohmann::json& object);

struct CorpusSummary {
  std::size_t recipe_count = 0;
  std::map<std::string, std::size_t> per_cuisine_counts;
  std::map<std::string, std::size_t> per_category_counts;
  std::size_t unclassified_count = 0;

  bool operator==(const CorpusSummary&) const = default;
};

CorpusSummary summarize_corpus(std::span<const RawRecipe> recipes);

nlohmann::json to_json(const CorpusSummary& summary);

bool is_valid_utf8(std::string_view text);

}  // namespace ingnet
