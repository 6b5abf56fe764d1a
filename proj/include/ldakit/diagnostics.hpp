#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ldakit/corpus.hpp"
#include "ldakit/estimate.hpp"
#include "ldakit/model.hpp"

namespace ldakit {

inline constexpr std::size_t kDefaultTopWords = 10;
inline constexpr double kDefaultEpsilon = 1e-12;

struct RankedWord {
  WordId id;
  std::string word;
  Count count;    // n_wt
  double weight;  // phi_{w|t}
};

// The n highest-count words of topic t; equal counts are ordered
// lexicographically. n is clamped to the vocabulary size.
std::vector<RankedWord> top_words(const TopicModel& model, const Vocabulary& vocabulary, TopicId t,
                                  std::size_t n);

// Per-word sorted lists of the documents containing it.
class DocumentFrequencies {
 public:
  explicit DocumentFrequencies(const Corpus& corpus);

  std::size_t num_documents() const { return num_documents_; }
  std::size_t document_frequency(WordId w) const { return postings_.at(w).size(); }
  std::size_t co_document_frequency(WordId a, WordId b) const;

 private:
  std::size_t num_documents_ = 0;
  std::vector<std::vector<std::uint32_t>> postings_;
};

// Average pairwise log ratio over ranked words w_1..w_N (w_1 strongest):
//   C = 2 / (N (N - 1)) * sum_{i=2..N} sum_{j<i} log((P(w_i, w_j) + eps) / P(w_j))
// with P the fraction of documents containing the word(s). Throws
// UsageError if N < 2 and DataError if some P(w_j) is zero.
double topic_coherence(std::span<const WordId> ranked_words, const DocumentFrequencies& frequencies,
                       double epsilon = kDefaultEpsilon);

// Arithmetic mean of per-topic coherences.
double mean_coherence(std::span<const double> per_topic);

// Mean of the per-topic coherences over each topic's top_n words.
double average_model_coherence(const TopicModel& model, const Corpus& corpus,
                               std::size_t top_n = kDefaultTopWords, double epsilon = kDefaultEpsilon);
double average_model_coherence(const TopicModel& model, const Corpus& corpus,
                               const DocumentFrequencies& frequencies, std::size_t top_n, double epsilon);

// Mean over `words` of phi_{w|t} / sum_t' phi_{w|t'}.
double exclusivity(const TopicModel& model, TopicId t, std::span<const WordId> words);
double exclusivity(const TopicModel& model, const Vocabulary& vocabulary, TopicId t,
                   std::size_t top_n = kDefaultTopWords);

// Entropy (nats) of p(d|t) = n_td / n_t. Zero, with a warning, for an empty topic.
double document_entropy(const TopicModel& model, TopicId t);

struct TopicReport {
  TopicId topic = 0;
  std::vector<RankedWord> top_words;
  double coherence = 0.0;
  double exclusivity = 0.0;
  double document_entropy = 0.0;
  std::int64_t tokens = 0;
  double avg_word_length = 0.0;  // mean character count of top_words
};

std::vector<TopicReport> topic_reports(const TopicModel& model, const Corpus& corpus,
                                       std::size_t top_n = kDefaultTopWords,
                                       double epsilon = kDefaultEpsilon);

struct ColumnStats {
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
  double std = 0.0;  // population standard deviation
};

// One entry per topic over the confidence column of every row.
using ConfidenceStats = std::vector<ColumnStats>;
ConfidenceStats confidence_stats(std::span<const DocTopicRow> rows);

// Histogram of one topic's confidence column, split by predicted topic.
// Bins are [i w, (i + 1) w); the last bin also takes 1.0.
struct ConfidenceHistogram {
  TopicId topic = 0;
  double bin_width = 0.1;
  // counts[bin][predicted_topic]
  std::vector<std::vector<std::uint64_t>> counts;

  std::size_t num_bins() const { return counts.size(); }
  double bin_lo(std::size_t i) const { return static_cast<double>(i) * bin_width; }
  double bin_hi(std::size_t i) const;
};

ConfidenceHistogram confidence_histogram(std::span<const DocTopicRow> rows, TopicId topic, double bin_width,
                                         std::uint32_t num_topics);

// Documents per predicted topic.
std::vector<std::uint64_t> topic_counts(std::span<const DocTopicRow> rows, std::uint32_t num_topics);

}  // namespace ldakit
