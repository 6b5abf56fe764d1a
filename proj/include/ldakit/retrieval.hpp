#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ldakit/corpus.hpp"
#include "ldakit/model.hpp"

namespace ldakit {

struct RetrievalConfig {
  double mu = 1000.0;   // Dirichlet prior mass
  double lambda = 0.7;  // weight of the smoothed document model

  void validate() const;
};

// Query terms after preprocessing; std::nullopt marks a word the corpus never saw.
using QueryTerms = std::vector<std::optional<WordId>>;

// Score assigned when some query term has zero probability under a document.
inline constexpr double kZeroProbabilityScore = -std::numeric_limits<double>::infinity();

// Maximum-likelihood word statistics of the collection and of each document.
class CollectionModel {
 public:
  explicit CollectionModel(const Corpus& corpus);

  double collection_prob(WordId w) const;            // P_ML(w | coll)
  double document_prob(WordId w, std::size_t d) const;  // P_ML(w | D)
  std::size_t document_length(std::size_t d) const { return doc_lengths_[d]; }
  std::size_t num_documents() const { return doc_lengths_.size(); }

 private:
  std::vector<std::uint64_t> collection_counts_;
  double total_tokens_ = 0.0;
  // per document: (word, count) sorted by word
  std::vector<std::vector<std::pair<WordId, std::uint32_t>>> doc_counts_;
  std::vector<std::size_t> doc_lengths_;
};

// N/(N+mu) P_ML(w|D) + (1 - N/(N+mu)) P_ML(w|coll)
double smoothed_doc_prob(const CollectionModel& collection, std::optional<WordId> w, std::size_t d,
                         const RetrievalConfig& config);

// sum_z phi_{w|z} theta_{z|d}
double lda_word_prob(const TopicModel& model, std::optional<WordId> w, std::size_t d);

// lambda * smoothed_doc_prob + (1 - lambda) * lda_word_prob
double combined_word_prob(const CollectionModel& collection, const TopicModel& model, std::optional<WordId> w,
                          std::size_t d, const RetrievalConfig& config);

// Sum of log combined_word_prob over the query terms (with multiplicity);
// kZeroProbabilityScore if any term has probability 0. Empty query -> 0.
double query_score(const CollectionModel& collection, const TopicModel& model, std::span<const std::optional<WordId>> query,
                   std::size_t d, const RetrievalConfig& config);

struct ScoredDocument {
  std::size_t doc = 0;
  double score = 0.0;
};

// query_score with phi and theta cached up front; same arithmetic.
class LdaScorer {
 public:
  LdaScorer(const Corpus& corpus, const TopicModel& model, RetrievalConfig config);

  double word_prob(std::optional<WordId> w, std::size_t d) const;
  double score(std::span<const std::optional<WordId>> query, std::size_t d) const;
  // Every document, best first; ties keep corpus order.
  std::vector<ScoredDocument> rank(std::span<const std::optional<WordId>> query) const;

  const CollectionModel& collection() const { return collection_; }

 private:
  CollectionModel collection_;
  RetrievalConfig config_;
  std::uint32_t k_;
  std::vector<double> phi_;    // V x k, word-major
  std::vector<double> theta_;  // D x k
};

}  // namespace ldakit
