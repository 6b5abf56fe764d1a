#include "ldakit/corpus.hpp"

#include <unordered_set>

namespace ldakit {

WordId Vocabulary::intern(std::string_view word) {
  auto [it, inserted] = ids_.try_emplace(std::string(word), static_cast<WordId>(words_.size()));
  if (inserted) words_.emplace_back(word);
  return it->second;
}

std::optional<WordId> Vocabulary::find(std::string_view word) const {
  auto it = ids_.find(std::string(word));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

Corpus::Corpus(std::vector<Document> documents, Vocabulary vocabulary,
               std::vector<DroppedDocument> dropped)
    : vocabulary_(std::move(vocabulary)), dropped_(std::move(dropped)) {
  documents_.reserve(documents.size());
  const auto v = vocabulary_.size();
  for (auto& doc : documents) {
    if (doc.tokens.empty()) {
      dropped_.push_back({std::move(doc.id), "no tokens after preprocessing"});
      continue;
    }
    for (WordId w : doc.tokens) {
      if (w >= v) throw DataError("token id out of vocabulary range in document " + doc.id);
    }
    total_tokens_ += doc.tokens.size();
    documents_.push_back(std::move(doc));
  }
}

Corpus build_corpus(std::span<const RawDocument> raw_docs, const PipelineOptions& options) {
  Vocabulary vocabulary;
  std::vector<Document> documents;
  std::vector<DroppedDocument> dropped;
  std::unordered_set<std::string> seen;

  for (const auto& raw : raw_docs) {
    if (!seen.insert(raw.id).second) {
      dropped.push_back({raw.id, "duplicate document id"});
      continue;
    }
    const auto tokens = preprocess(raw.text, options);
    if (tokens.empty()) {
      dropped.push_back({raw.id, "no tokens after preprocessing"});
      continue;
    }
    Document doc{raw.id, {}};
    doc.tokens.reserve(tokens.size());
    for (const auto& t : tokens) doc.tokens.push_back(vocabulary.intern(t));
    documents.push_back(std::move(doc));
  }
  return Corpus(std::move(documents), std::move(vocabulary), std::move(dropped));
}

std::vector<std::optional<WordId>> encode_tokens(const Vocabulary& vocabulary,
                                                 std::span<const std::string> tokens) {
  std::vector<std::optional<WordId>> ids;
  ids.reserve(tokens.size());
  for (const auto& t : tokens) ids.push_back(vocabulary.find(t));
  return ids;
}

}  // namespace ldakit
