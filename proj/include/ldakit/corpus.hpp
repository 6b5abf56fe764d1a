#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ldakit/common.hpp"
#include "ldakit/text.hpp"

namespace ldakit {

struct RawDocument {
  std::string id;
  std::string text;
};

// Bijective word <-> id map; ids are dense and assigned in first-seen order.
class Vocabulary {
 public:
  WordId intern(std::string_view word);
  std::optional<WordId> find(std::string_view word) const;
  const std::string& word(WordId id) const { return words_.at(id); }
  std::size_t size() const { return words_.size(); }
  const std::vector<std::string>& words() const { return words_; }

 private:
  std::unordered_map<std::string, WordId> ids_;
  std::vector<std::string> words_;
};

struct Document {
  std::string id;
  std::vector<WordId> tokens;
};

struct DroppedDocument {
  std::string id;
  std::string reason;
};

// Id-encoded documents over a vocabulary. Immutable once built. Documents
// that end up with no tokens are moved to the dropped log.
class Corpus {
 public:
  Corpus() = default;
  Corpus(std::vector<Document> documents, Vocabulary vocabulary,
         std::vector<DroppedDocument> dropped = {});

  const std::vector<Document>& documents() const { return documents_; }
  const Document& document(std::size_t d) const { return documents_[d]; }
  const Vocabulary& vocabulary() const { return vocabulary_; }
  const std::vector<DroppedDocument>& dropped() const { return dropped_; }

  std::size_t num_documents() const { return documents_.size(); }
  std::size_t vocabulary_size() const { return vocabulary_.size(); }
  std::size_t total_tokens() const { return total_tokens_; }
  bool empty() const { return documents_.empty(); }

 private:
  std::vector<Document> documents_;
  Vocabulary vocabulary_;
  std::vector<DroppedDocument> dropped_;
  std::size_t total_tokens_ = 0;
};

// Runs every document through `preprocess` and id-encodes the survivors.
// Empty results and duplicate ids are logged in Corpus::dropped().
Corpus build_corpus(std::span<const RawDocument> raw_docs, const PipelineOptions& options);

// Maps already-preprocessed query tokens to vocabulary ids; unknown words
// become std::nullopt.
std::vector<std::optional<WordId>> encode_tokens(const Vocabulary& vocabulary,
                                                 std::span<const std::string> tokens);

}  // namespace ldakit
