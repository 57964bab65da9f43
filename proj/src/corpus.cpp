#include "ingnet/corpus.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_set>

namespace ingnet {

namespace {

using nlohmann::json;

constexpr std::string_view kCsvHeader =
    "id,title,cuisine,category,prep_time_minutes,ingredient_lines,instructions";

const std::set<std::string, std::less<>> kRecipeKeys = {
    "id", "title", "cuisine", "category", "prep_time_minutes", "ingredient_lines", "instructions"};

bool is_blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(),
                     [](unsigned char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; });
}

std::optional<std::string> optional_label(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) throw CorpusError(std::string("field '") + key + "' must be a string", 0);
  auto value = it->get<std::string>();
  if (is_blank(value)) throw CorpusError(std::string("field '") + key + "' must be non-empty", 0);
  return value;
}

void validate_recipe(const RawRecipe& r) {
  if (r.id.empty()) throw CorpusError("recipe id must be non-empty", 0);
  if (r.ingredient_lines.empty())
    throw CorpusError("recipe '" + r.id + "' has no ingredient lines", 0);
  for (const auto& line : r.ingredient_lines) {
    if (is_blank(line)) throw CorpusError("recipe '" + r.id + "' has an empty ingredient line", 0);
  }
  if (r.prep_time_minutes && *r.prep_time_minutes < 0)
    throw CorpusError("recipe '" + r.id + "' has a negative prep_time_minutes", 0);
}

// Collects records and rejects duplicate ids with the line of the repeat.
class RecordSink {
 public:
  explicit RecordSink(std::vector<RawRecipe>& out) : out_(out) {}

  void add(RawRecipe recipe, std::size_t line) {
    try {
      validate_recipe(recipe);
    } catch (const CorpusError& e) {
      throw CorpusError("line " + std::to_string(line) + ": " + e.what(), line);
    }
    if (!seen_.insert(recipe.id).second)
      throw CorpusError("line " + std::to_string(line) + ": duplicate recipe id '" + recipe.id + "'",
                        line);
    out_.push_back(std::move(recipe));
  }

 private:
  std::vector<RawRecipe>& out_;
  std::unordered_set<std::string> seen_;
};

std::vector<RawRecipe> parse_jsonl(std::istream& in) {
  std::vector<RawRecipe> recipes;
  RecordSink sink(recipes);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    if (!is_valid_utf8(line))
      throw CorpusError("line " + std::to_string(line_no) + ": invalid UTF-8", line_no);
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw CorpusError("line " + std::to_string(line_no) + ": malformed JSON: " + e.what(),
                        line_no);
    }
    RawRecipe recipe;
    try {
      recipe = raw_recipe_from_json(obj);
    } catch (const CorpusError& e) {
      throw CorpusError("line " + std::to_string(line_no) + ": " + e.what(), line_no);
    }
    sink.add(std::move(recipe), line_no);
  }
  return recipes;
}

struct CsvField {
  std::string text;
  bool quoted = false;
};

// Reads one RFC 4180 record. Quoted fields may span physical lines.
// Returns false at end of input.
bool read_csv_record(std::istream& in, std::vector<CsvField>& fields, std::size_t& line_no) {
  fields.clear();
  int ch = in.peek();
  if (ch == std::char_traits<char>::eof()) return false;
  ++line_no;
  const std::size_t start_line = line_no;
  CsvField field;
  bool in_quotes = false;
  bool after_quote = false;
  while (true) {
    ch = in.get();
    if (ch == std::char_traits<char>::eof()) {
      if (in_quotes)
        throw CorpusError("line " + std::to_string(start_line) + ": unterminated quoted field",
                          start_line);
      fields.push_back(std::move(field));
      return true;
    }
    const char c = static_cast<char>(ch);
    if (in_quotes) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get();
          field.text.push_back('"');
        } else {
          in_quotes = false;
          after_quote = true;
        }
      } else {
        if (c == '\n') ++line_no;
        field.text.push_back(c);
      }
      continue;
    }
    if (c == ',') {
      fields.push_back(std::move(field));
      field = CsvField{};
      after_quote = false;
    } else if (c == '\n') {
      fields.push_back(std::move(field));
      return true;
    } else if (c == '\r') {
      if (in.peek() == '\n') continue;
      field.text.push_back(c);
    } else if (c == '"' && field.text.empty() && !field.quoted) {
      field.quoted = true;
      in_quotes = true;
    } else {
      if (after_quote)
        throw CorpusError("line " + std::to_string(start_line) + ": text after closing quote",
                          start_line);
      field.text.push_back(c);
    }
  }
}

std::optional<std::string> csv_optional(const CsvField& f) {
  if (f.text.empty() && !f.quoted) return std::nullopt;
  return f.text;
}

std::vector<std::string> split_pipe(const std::string& cell) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    auto pos = cell.find('|', start);
    parts.push_back(cell.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::vector<RawRecipe> parse_csv(std::istream& in) {
  std::vector<RawRecipe> recipes;
  RecordSink sink(recipes);
  std::vector<CsvField> fields;
  std::size_t line_no = 0;

  if (!read_csv_record(in, fields, line_no)) return recipes;
  std::string header;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) header.push_back(',');
    header += fields[i].text;
  }
  if (header != kCsvHeader)
    throw CorpusError("line 1: CSV header must be '" + std::string(kCsvHeader) + "'", 1);

  while (true) {
    const std::size_t record_line = line_no + 1;
    if (!read_csv_record(in, fields, line_no)) break;
    if (fields.size() == 1 && fields[0].text.empty() && !fields[0].quoted) continue;
    const auto where = "line " + std::to_string(record_line) + ": ";
    if (fields.size() != 7)
      throw CorpusError(where + "expected 7 columns, found " + std::to_string(fields.size()),
                        record_line);
    for (const auto& f : fields) {
      if (!is_valid_utf8(f.text)) throw CorpusError(where + "invalid UTF-8", record_line);
    }

    RawRecipe r;
    r.id = fields[0].text;
    r.title = fields[1].text;
    r.cuisine = csv_optional(fields[2]);
    r.category = csv_optional(fields[3]);
    if (r.cuisine && is_blank(*r.cuisine))
      throw CorpusError(where + "field 'cuisine' must be non-empty", record_line);
    if (r.category && is_blank(*r.category))
      throw CorpusError(where + "field 'category' must be non-empty", record_line);
    if (auto prep = csv_optional(fields[4])) {
      const auto& s = *prep;
      if (s.empty() || s.size() > 18 ||
          !std::all_of(s.begin(), s.end(), [](unsigned char c) { return c >= '0' && c <= '9'; }))
        throw CorpusError(where + "prep_time_minutes must be a non-negative integer", record_line);
      r.prep_time_minutes = std::stoll(s);
    }
    if (!fields[5].text.empty()) r.ingredient_lines = split_pipe(fields[5].text);
    r.instructions = csv_optional(fields[6]);
    sink.add(std::move(r), record_line);
  }
  return recipes;
}

void write_csv_cell(std::ostream& out, const std::string& text, bool force_quotes) {
  const bool needs_quotes = force_quotes || text.find_first_of(",\"\r\n") != std::string::npos;
  if (!needs_quotes) {
    out << text;
    return;
  }
  out << '"';
  for (char c : text) {
    if (c == '"') out << '"';
    out << c;
  }
  out << '"';
}

void write_csv_optional(std::ostream& out, const std::optional<std::string>& value) {
  if (value) write_csv_cell(out, *value, value->empty());
}

}  // namespace

std::optional<CorpusFormat> parse_corpus_format(std::string_view name) {
  if (name == "jsonl") return CorpusFormat::jsonl;
  if (name == "csv") return CorpusFormat::csv;
  return std::nullopt;
}

bool is_valid_utf8(std::string_view text) {
  std::size_t i = 0;
  const auto n = text.size();
  while (i < n) {
    const auto c = static_cast<unsigned char>(text[i]);
    std::size_t len;
    std::uint32_t cp;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c >> 5) == 0x6) {
      len = 2;
      cp = c & 0x1f;
    } else if ((c >> 4) == 0xe) {
      len = 3;
      cp = c & 0x0f;
    } else if ((c >> 3) == 0x1e) {
      len = 4;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (i + len > n) return false;
    for (std::size_t k = 1; k < len; ++k) {
      const auto cc = static_cast<unsigned char>(text[i + k]);
      if ((cc >> 6) != 0x2) return false;
      cp = (cp << 6) | (cc & 0x3f);
    }
    // overlong forms, surrogates, out of range
    if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000) ||
        (cp >= 0xd800 && cp <= 0xdfff) || cp > 0x10ffff)
      return false;
    i += len;
  }
  return true;
}

RawRecipe raw_recipe_from_json(const json& obj) {
  if (!obj.is_object()) throw CorpusError("record must be a JSON object", 0);
  for (const auto& [key, _] : obj.items()) {
    if (!kRecipeKeys.contains(key)) throw CorpusError("unknown field '" + key + "'", 0);
  }
  RawRecipe r;
  auto id = obj.find("id");
  if (id == obj.end() || !id->is_string()) throw CorpusError("field 'id' must be a string", 0);
  r.id = id->get<std::string>();
  auto title = obj.find("title");
  if (title == obj.end() || !title->is_string())
    throw CorpusError("recipe '" + r.id + "': field 'title' must be a string", 0);
  r.title = title->get<std::string>();
  r.cuisine = optional_label(obj, "cuisine");
  r.category = optional_label(obj, "category");
  if (auto it = obj.find("prep_time_minutes"); it != obj.end() && !it->is_null()) {
    if (!it->is_number_integer() || it->get<std::int64_t>() < 0)
      throw CorpusError("recipe '" + r.id + "': prep_time_minutes must be a non-negative integer",
                        0);
    r.prep_time_minutes = it->get<std::int64_t>();
  }
  auto lines = obj.find("ingredient_lines");
  if (lines == obj.end() || !lines->is_array())
    throw CorpusError("recipe '" + r.id + "': field 'ingredient_lines' must be an array", 0);
  for (const auto& line : *lines) {
    if (!line.is_string())
      throw CorpusError("recipe '" + r.id + "': ingredient lines must be strings", 0);
    r.ingredient_lines.push_back(line.get<std::string>());
  }
  if (auto it = obj.find("instructions"); it != obj.end() && !it->is_null()) {
    if (!it->is_string())
      throw CorpusError("recipe '" + r.id + "': field 'instructions' must be a string", 0);
    r.instructions = it->get<std::string>();
  }
  return r;
}

json raw_recipe_to_json(const RawRecipe& r) {
  json obj = json::object();
  obj["id"] = r.id;
  obj["title"] = r.title;
  if (r.cuisine) obj["cuisine"] = *r.cuisine;
  if (r.category) obj["category"] = *r.category;
  if (r.prep_time_minutes) obj["prep_time_minutes"] = *r.prep_time_minutes;
  obj["ingredient_lines"] = r.ingredient_lines;
  if (r.instructions) obj["instructions"] = *r.instructions;
  return obj;
}

std::vector<RawRecipe> parse_recipe_file(std::istream& in, CorpusFormat format) {
  return format == CorpusFormat::jsonl ? parse_jsonl(in) : parse_csv(in);
}

void write_recipe_file(std::ostream& out, std::span<const RawRecipe> recipes,
                       CorpusFormat format) {
  if (format == CorpusFormat::jsonl) {
    for (const auto& r : recipes) out << raw_recipe_to_json(r).dump() << '\n';
    return;
  }
  out << kCsvHeader << '\n';
  for (const auto& r : recipes) {
    std::string joined;
    for (std::size_t i = 0; i < r.ingredient_lines.size(); ++i) {
      if (r.ingredient_lines[i].find('|') != std::string::npos)
        throw CorpusError("recipe '" + r.id + "': ingredient line contains '|'", 0);
      if (i) joined.push_back('|');
      joined += r.ingredient_lines[i];
    }
    write_csv_cell(out, r.id, false);
    out << ',';
    write_csv_cell(out, r.title, r.title.empty());
    out << ',';
    write_csv_optional(out, r.cuisine);
    out << ',';
    write_csv_optional(out, r.category);
    out << ',';
    if (r.prep_time_minutes) out << *r.prep_time_minutes;
    out << ',';
    write_csv_cell(out, joined, false);
    out << ',';
    write_csv_optional(out, r.instructions);
    out << '\n';
  }
}

CorpusSummary summarize_corpus(std::span<const RawRecipe> recipes) {
  CorpusSummary s;
  s.recipe_count = recipes.size();
  for (const auto& r : recipes) {
    if (r.cuisine) ++s.per_cuisine_counts[*r.cuisine];
    if (r.category)
      ++s.per_category_counts[*r.category];
    else
      ++s.unclassified_count;
  }
  return s;
}

json to_json(const CorpusSummary& s) {
  json obj = json::object();
  obj["recipe_count"] = s.recipe_count;
  obj["per_cuisine_counts"] = json(s.per_cuisine_counts);
  obj["per_category_counts"] = json(s.per_category_counts);
  obj["unclassified_count"] = s.unclassified_count;
  return obj;
}

}  // namespace ingnet
