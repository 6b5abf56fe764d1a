#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <string>
#include <vector>

#include "ldakit/corpus.hpp"

namespace ldakit {

enum class InputFormat { csv, jsonl };

struct ColumnNames {
  std::string id = "id";
  std::string text = "text";
};

struct IngestError {
  std::size_t line = 0;  // 1-based physical line where the record starts
  std::string doc_id;    // empty when the id itself could not be read
  std::string message;
};

struct IngestResult {
  std::vector<RawDocument> documents;
  std::vector<IngestError> errors;
};

// RFC 4180 CSV with a header row. Quoted fields may contain commas, doubled
// quotes and newlines. A missing id or text column in the header is a
// DataError; per-record problems go to IngestResult::errors.
IngestResult read_csv(std::istream& in, const ColumnNames& columns = {});

// One JSON object per line; numeric ids are accepted and rendered as text.
IngestResult read_jsonl(std::istream& in, const ColumnNames& columns = {});

IngestResult read_documents(const std::filesystem::path& path, InputFormat format,
                            const ColumnNames& columns = {});

}  // namespace ldakit
