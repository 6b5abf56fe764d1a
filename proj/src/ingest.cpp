#include "ldakit/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <optional>

#include <json.hpp>

#include "ldakit/common.hpp"

namespace ldakit {
namespace {

struct CsvRecord {
  std::vector<std::string> fields;
  std::size_t line = 0;
  bool unterminated_quote = false;
};

class CsvReader {
 public:
  explicit CsvReader(std::istream& in) : in_(in) {}

  std::optional<CsvRecord> next() {
    if (in_.peek() == std::char_traits<char>::eof()) return std::nullopt;
    CsvRecord rec;
    rec.line = line_;
    std::string field;
    bool in_quotes = false;
    bool field_was_quoted = false;
    for (;;) {
      const int c = in_.get();
      if (c == std::char_traits<char>::eof()) {
        rec.unterminated_quote = in_quotes;
        rec.fields.push_back(std::move(field));
        return rec;
      }
      if (c == '\n') ++line_;
      if (in_quotes) {
        if (c == '"') {
          if (in_.peek() == '"') {
            in_.get();
            field.push_back('"');
          } else {
            in_quotes = false;
          }
        } else {
          field.push_back(static_cast<char>(c));
        }
        continue;
      }
      switch (c) {
        case '"':
          if (field.empty() && !field_was_quoted) {
            in_quotes = true;
            field_was_quoted = true;
          } else {
            field.push_back('"');
          }
          break;
        case ',':
          rec.fields.push_back(std::move(field));
          field.clear();
          field_was_quoted = false;
          break;
        case '\r':
          if (in_.peek() != '\n') field.push_back('\r');
          break;
        case '\n':
          rec.fields.push_back(std::move(field));
          return rec;
        default:
          field.push_back(static_cast<char>(c));
      }
    }
  }

 private:
  std::istream& in_;
  std::size_t line_ = 1;
};

std::size_t column_index(const std::vector<std::string>& header, const std::string& name) {
  auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw DataError("CSV header has no column named '" + name + "'");
  return static_cast<std::size_t>(it - header.begin());
}

}  // namespace

IngestResult read_csv(std::istream& in, const ColumnNames& columns) {
  CsvReader reader(in);
  auto header = reader.next();
  if (!header) throw DataError("CSV input is empty (no header row)");
  if (!header->fields.empty() && header->fields[0].starts_with("\xEF\xBB\xBF")) {
    header->fields[0].erase(0, 3);
  }
  const auto id_col = column_index(header->fields, columns.id);
  const auto text_col = column_index(header->fields, columns.text);
  const auto needed = std::max(id_col, text_col) + 1;

  IngestResult result;
  while (auto rec = reader.next()) {
    if (rec->fields.size() == 1 && rec->fields[0].empty()) continue;  // blank line
    const std::string id = rec->fields.size() > id_col ? rec->fields[id_col] : std::string();
    if (rec->unterminated_quote) {
      result.errors.push_back({rec->line, id, "unterminated quoted field"});
      continue;
    }
    if (rec->fields.size() < needed) {
      result.errors.push_back({rec->line, id, "expected at least " + std::to_string(needed) +
                                                  " fields, got " + std::to_string(rec->fields.size())});
      continue;
    }
    if (id.empty()) {
      result.errors.push_back({rec->line, id, "empty document id"});
      continue;
    }
    result.documents.push_back({id, rec->fields[text_col]});
  }
  return result;
}

IngestResult read_jsonl(std::istream& in, const ColumnNames& columns) {
  IngestResult result;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (lineno == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      result.errors.push_back({lineno, "", std::string("invalid JSON: ") + e.what()});
      continue;
    }
    if (!obj.is_object()) {
      result.errors.push_back({lineno, "", "record is not a JSON object"});
      continue;
    }
    std::string id;
    auto id_it = obj.find(columns.id);
    if (id_it != obj.end()) {
      if (id_it->is_string()) {
        id = id_it->get<std::string>();
      } else if (id_it->is_number_integer()) {
        id = id_it->dump();
      }
    }
    if (id.empty()) {
      result.errors.push_back({lineno, "", "missing or invalid '" + columns.id + "' field"});
      continue;
    }
    auto text_it = obj.find(columns.text);
    if (text_it == obj.end() || !text_it->is_string()) {
      result.errors.push_back({lineno, id, "missing or non-string '" + columns.text + "' field"});
      continue;
    }
    result.documents.push_back({std::move(id), text_it->get<std::string>()});
  }
  return result;
}

IngestResult read_documents(const std::filesystem::path& path, InputFormat format,
                            const ColumnNames& columns) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open input file: " + path.string());
  return format == InputFormat::csv ? read_csv(in, columns) : read_jsonl(in, columns);
}

}  // namespace ldakit
