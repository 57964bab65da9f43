#include "ingnet/extraction.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

namespace ingnet {

namespace {

using nlohmann::json;

bool is_space(unsigned char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

bool is_separator(unsigned char c) {
  if (c < 0x20 || c == 0x7f || is_space(c)) return true;
  if (c >= 0x80) return false;
  if (c == '.') return false;
  return !((c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'));
}

bool is_numeric_char(unsigned char c) { return (c >= '0' && c <= '9') || c == '.'; }

char ascii_lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && is_space(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

using u128 = unsigned __int128;

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Mean of hits[i]/sizes[i] rounded once. Falls back to a floating sum when
// the reduced fraction no longer fits a double mantissa.
double exact_mean(std::span<const std::pair<std::size_t, std::size_t>> fractions) {
  constexpr u128 kMantissa = u128{1} << 53;
  u128 num = 0;
  u128 den = 1;
  bool exact = true;
  for (auto [hits, size] : fractions) {
    const u128 q = size;
    const u128 g = gcd128(den, q);
    const u128 lcm = den / g * q;
    if (lcm > (u128{1} << 100)) {
      exact = false;
      break;
    }
    num = num * (lcm / den) + u128{hits} * (lcm / q);
    den = lcm;
  }
  if (exact) {
    den *= fractions.size();
    const u128 g = gcd128(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    if (num < kMantissa && den < kMantissa)
      return static_cast<double>(static_cast<std::uint64_t>(num)) /
             static_cast<double>(static_cast<std::uint64_t>(den));
  }
  double sum = 0.0;
  for (auto [hits, size] : fractions) sum += static_cast<double>(hits) / static_cast<double>(size);
  return sum / static_cast<double>(fractions.size());
}

}  // namespace

StopWordSet::StopWordSet(std::initializer_list<std::string_view> words) {
  for (auto w : words) insert(w);
}

void StopWordSet::insert(std::string_view word) {
  if (word.empty()) throw std::invalid_argument("stop word must be non-empty");
  std::string lowered;
  lowered.reserve(word.size());
  for (char c : word) {
    if (is_space(static_cast<unsigned char>(c)))
      throw std::invalid_argument("stop word '" + std::string(word) + "' contains whitespace");
    lowered.push_back(ascii_lower(c));
  }
  words_.insert(std::move(lowered));
}

bool StopWordSet::contains(std::string_view token) const { return words_.find(token) != words_.end(); }

std::vector<std::string> StopWordSet::sorted() const {
  std::vector<std::string> out(words_.begin(), words_.end());
  std::sort(out.begin(), out.end());
  return out;
}

StopWordSet load_stopwords(std::istream& in) {
  StopWordSet set;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (!is_valid_utf8(line))
      throw StopWordError("stop-word line " + std::to_string(line_no) + ": invalid UTF-8", line_no);
    if (std::any_of(line.begin(), line.end(), [](unsigned char c) { return is_space(c); }))
      throw StopWordError("stop-word line " + std::to_string(line_no) + ": token '" +
                              std::string(line) + "' contains whitespace",
                          line_no);
    set.insert(line);
  }
  return set;
}

std::vector<std::string> tokenize(std::string_view line) {
  std::vector<std::string> tokens;
  std::string run;
  bool run_numeric = false;
  auto flush = [&] {
    if (!run.empty() && run.find_first_not_of('.') != std::string::npos) tokens.push_back(run);
    run.clear();
  };
  for (char ch : line) {
    const auto c = static_cast<unsigned char>(ch);
    if (is_separator(c)) {
      flush();
      continue;
    }
    const bool numeric = is_numeric_char(c);
    if (!run.empty() && numeric != run_numeric) flush();
    run_numeric = numeric;
    run.push_back(ascii_lower(ch));
  }
  flush();
  return tokens;
}

bool is_numeric_token(std::string_view token) {
  return !token.empty() &&
         std::all_of(token.begin(), token.end(), [](unsigned char c) { return is_numeric_char(c); });
}

std::optional<std::string> extract_ingredient(std::string_view line, const StopWordSet& stopwords) {
  std::string name;
  for (const auto& token : tokenize(line)) {
    if (is_numeric_token(token) || stopwords.contains(token)) continue;
    if (!name.empty()) name.push_back(' ');
    name += token;
  }
  if (name.empty()) return std::nullopt;
  return name;
}

ExtractionResult extract_corpus(std::span<const RawRecipe> recipes, const StopWordSet& stopwords) {
  ExtractionResult result;
  result.recipes.reserve(recipes.size());
  for (const auto& raw : recipes) {
    Recipe recipe{raw, {}, false};
    for (const auto& line : raw.ingredient_lines) {
      if (auto name = extract_ingredient(line, stopwords))
        recipe.ingredients.insert(std::move(*name));
      else
        result.log.push_back({raw.id, line, "no_ingredient_tokens"});
    }
    recipe.flagged = recipe.ingredients.empty();
    if (recipe.flagged) result.log.push_back({raw.id, "", "recipe_without_ingredients"});
    result.recipes.push_back(std::move(recipe));
  }
  return result;
}

json recipe_to_json(const Recipe& recipe) {
  json obj = raw_recipe_to_json(recipe.raw);
  obj["ingredients"] = recipe.ingredients;
  if (recipe.flagged) obj["flagged"] = true;
  return obj;
}

Recipe recipe_from_json(const json& object) {
  if (!object.is_object()) throw CorpusError("record must be a JSON object", 0);
  json raw = object;
  Recipe recipe;
  if (auto it = raw.find("ingredients"); it != raw.end()) {
    if (!it->is_array()) throw CorpusError("field 'ingredients' must be an array", 0);
    for (const auto& name : *it) {
      if (!name.is_string() || name.get<std::string>().empty())
        throw CorpusError("ingredient names must be non-empty strings", 0);
      recipe.ingredients.insert(name.get<std::string>());
    }
    raw.erase("ingredients");
  } else {
    throw CorpusError("normalized recipe is missing 'ingredients'", 0);
  }
  if (auto it = raw.find("flagged"); it != raw.end()) {
    recipe.flagged = it->is_boolean() && it->get<bool>();
    raw.erase("flagged");
  }
  recipe.raw = raw_recipe_from_json(raw);
  return recipe;
}

void write_recipes_jsonl(std::ostream& out, std::span<const Recipe> recipes) {
  for (const auto& r : recipes) out << recipe_to_json(r).dump() << '\n';
}

std::vector<Recipe> read_recipes_jsonl(std::istream& in) {
  std::vector<Recipe> recipes;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    try {
      recipes.push_back(recipe_from_json(json::parse(line)));
    } catch (const json::exception& e) {
      throw CorpusError("line " + std::to_string(line_no) + ": " + e.what(), line_no);
    } catch (const CorpusError& e) {
      throw CorpusError("line " + std::to_string(line_no) + ": " + e.what(), line_no);
    }
  }
  return recipes;
}

void write_extraction_log(std::ostream& out, std::span<const ExtractionLogEntry> log) {
  for (const auto& e : log) {
    json obj = {{"id", e.id}, {"line", e.line}, {"reason", e.reason}};
    out << obj.dump() << '\n';
  }
}

std::string normalize_name(std::string_view name) {
  std::string out;
  for (const auto& token : tokenize(name)) {
    if (!out.empty()) out.push_back(' ');
    out += token;
  }
  return out;
}

AccuracyReport score_extraction(const NameSets& predicted, const NameSets& gold,
                                const std::map<std::string, std::string>& grouping) {
  AccuracyReport report;
  std::map<std::string, std::vector<std::pair<std::size_t, std::size_t>>> group_fractions;
  for (const auto& [id, gold_names] : gold) {
    auto it = predicted.find(id);
    if (it == predicted.end())
      throw std::invalid_argument("gold recipe '" + id + "' has no predicted ingredients");
    if (gold_names.empty())
      throw std::invalid_argument("gold recipe '" + id + "' has an empty ingredient set");
    std::set<std::string> gold_norm;
    for (const auto& n : gold_names) gold_norm.insert(normalize_name(n));
    std::set<std::string> predicted_norm;
    for (const auto& n : it->second) predicted_norm.insert(normalize_name(n));
    std::size_t hits = 0;
    for (const auto& n : predicted_norm) hits += gold_norm.count(n);
    const double accuracy = static_cast<double>(hits) / static_cast<double>(gold_norm.size());
    report.per_recipe.emplace_back(id, accuracy);
    auto g = grouping.find(id);
    const std::string group = g == grouping.end() ? "ungrouped" : g->second;
    group_fractions[group].emplace_back(hits, gold_norm.size());
  }
  for (const auto& [group, fractions] : group_fractions) {
    GroupAccuracy acc;
    acc.recipes = fractions.size();
    acc.min = 1.0;
    acc.max = 0.0;
    for (auto [hits, size] : fractions) {
      const double a = static_cast<double>(hits) / static_cast<double>(size);
      acc.min = std::min(acc.min, a);
      acc.max = std::max(acc.max, a);
    }
    acc.avg = exact_mean(fractions);
    acc.avg = std::clamp(acc.avg, acc.min, acc.max);
    report.per_group[group] = acc;
  }
  return report;
}

GoldAnnotations load_gold_annotations(std::istream& in) {
  GoldAnnotations gold;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto where = "gold line " + std::to_string(line_no) + ": ";
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw CorpusError(where + "malformed JSON", line_no);
    }
    if (!obj.is_object() || !obj.contains("id") || !obj["id"].is_string() ||
        !obj.contains("ingredients") || !obj["ingredients"].is_array())
      throw CorpusError(where + "expected keys id, ingredients, group", line_no);
    const auto id = obj["id"].get<std::string>();
    if (gold.ingredients.contains(id)) throw CorpusError(where + "duplicate id '" + id + "'", line_no);
    auto& names = gold.ingredients[id];
    for (const auto& n : obj["ingredients"]) {
      if (!n.is_string()) throw CorpusError(where + "ingredients must be strings", line_no);
      names.insert(normalize_name(n.get<std::string>()));
    }
    if (auto g = obj.find("group"); g != obj.end() && g->is_string())
      gold.groups[id] = g->get<std::string>();
  }
  return gold;
}

json to_json(const AccuracyReport& report) {
  json per_recipe = json::array();
  for (const auto& [id, acc] : report.per_recipe) per_recipe.push_back({{"id", id}, {"accuracy", acc}});
  json per_group = json::object();
  for (const auto& [group, acc] : report.per_group)
    per_group[group] = {{"avg", acc.avg}, {"min", acc.min}, {"max", acc.max}, {"recipes", acc.recipes}};
  return {{"per_recipe", per_recipe}, {"per_group", per_group}};
}

}  // namespace ingnet
