#include "ldakit/retrieval.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "ldakit/estimate.hpp"

namespace ldakit {

void RetrievalConfig::validate() const {
  if (!(mu >= 0.0) || !std::isfinite(mu)) throw UsageError("mu must be a finite value >= 0");
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw UsageError("lambda must lie in [0, 1]");
}

CollectionModel::CollectionModel(const Corpus& corpus)
    : collection_counts_(corpus.vocabulary_size(), 0),
      total_tokens_(static_cast<double>(corpus.total_tokens())),
      doc_counts_(corpus.num_documents()),
      doc_lengths_(corpus.num_documents()) {
  std::map<WordId, std::uint32_t> counts;
  for (std::size_t d = 0; d < corpus.num_documents(); ++d) {
    counts.clear();
    for (WordId w : corpus.document(d).tokens) {
      ++counts[w];
      ++collection_counts_[w];
    }
    doc_counts_[d].assign(counts.begin(), counts.end());
    doc_lengths_[d] = corpus.document(d).tokens.size();
  }
}

double CollectionModel::collection_prob(WordId w) const {
  if (w >= collection_counts_.size() || total_tokens_ == 0.0) return 0.0;
  return static_cast<double>(collection_counts_[w]) / total_tokens_;
}

double CollectionModel::document_prob(WordId w, std::size_t d) const {
  const auto& counts = doc_counts_[d];
  auto it = std::lower_bound(counts.begin(), counts.end(), w,
                             [](const auto& entry, WordId key) { return entry.first < key; });
  if (it == counts.end() || it->first != w) return 0.0;
  return static_cast<double>(it->second) / static_cast<double>(doc_lengths_[d]);
}

double smoothed_doc_prob(const CollectionModel& collection, std::optional<WordId> w, std::size_t d,
                         const RetrievalConfig& config) {
  if (!w) return 0.0;
  const double n = static_cast<double>(collection.document_length(d));
  const double weight = n / (n + config.mu);
  return weight * collection.document_prob(*w, d) + (1.0 - weight) * collection.collection_prob(*w);
}

double lda_word_prob(const TopicModel& model, std::optional<WordId> w, std::size_t d) {
  if (!w || *w >= model.vocabulary_size()) return 0.0;
  const auto theta = estimate_theta(model, d);
  const double beta = model.hyper().beta;
  const double beta_v = beta * static_cast<double>(model.vocabulary_size());
  double p = 0.0;
  for (TopicId t = 0; t < model.num_topics(); ++t) {
    p += (beta + model.word_topic(*w, t)) / (beta_v + model.topic_total(t)) * theta[t];
  }
  return p;
}

double combined_word_prob(const CollectionModel& collection, const TopicModel& model, std::optional<WordId> w,
                          std::size_t d, const RetrievalConfig& config) {
  return config.lambda * smoothed_doc_prob(collection, w, d, config) +
         (1.0 - config.lambda) * lda_word_prob(model, w, d);
}

double query_score(const CollectionModel& collection, const TopicModel& model,
                   std::span<const std::optional<WordId>> query, std::size_t d, const RetrievalConfig& config) {
  double score = 0.0;
  for (const auto& w : query) {
    const double p = combined_word_prob(collection, model, w, d, config);
    if (!(p > 0.0)) return kZeroProbabilityScore;
    score += std::log(p);
  }
  return score;
}

LdaScorer::LdaScorer(const Corpus& corpus, const TopicModel& model, RetrievalConfig config)
    : collection_(corpus), config_(config), k_(model.num_topics()) {
  config_.validate();
  if (model.num_documents() != corpus.num_documents() || model.vocabulary_size() != corpus.vocabulary_size()) {
    throw UsageError("model does not match corpus");
  }
  const auto v = model.vocabulary_size();
  const double beta = model.hyper().beta;
  const double beta_v = beta * static_cast<double>(v);
  phi_.resize(v * k_);
  for (WordId w = 0; w < v; ++w) {
    for (TopicId t = 0; t < k_; ++t) {
      phi_[static_cast<std::size_t>(w) * k_ + t] = (beta + model.word_topic(w, t)) / (beta_v + model.topic_total(t));
    }
  }
  theta_.resize(corpus.num_documents() * k_);
  for (std::size_t d = 0; d < corpus.num_documents(); ++d) {
    const auto theta = estimate_theta(model, d);
    std::copy(theta.begin(), theta.end(), theta_.begin() + static_cast<std::ptrdiff_t>(d * k_));
  }
}

double LdaScorer::word_prob(std::optional<WordId> w, std::size_t d) const {
  double lda = 0.0;
  if (w && static_cast<std::size_t>(*w) * k_ < phi_.size()) {
    const double* phi = phi_.data() + static_cast<std::size_t>(*w) * k_;
    const double* theta = theta_.data() + d * k_;
    for (TopicId t = 0; t < k_; ++t) lda += phi[t] * theta[t];
  }
  return config_.lambda * smoothed_doc_prob(collection_, w, d, config_) + (1.0 - config_.lambda) * lda;
}

double LdaScorer::score(std::span<const std::optional<WordId>> query, std::size_t d) const {
  double score = 0.0;
  for (const auto& w : query) {
    const double p = word_prob(w, d);
    if (!(p > 0.0)) return kZeroProbabilityScore;
    score += std::log(p);
  }
  return score;
}

std::vector<ScoredDocument> LdaScorer::rank(std::span<const std::optional<WordId>> query) const {
  std::vector<ScoredDocument> out(collection_.num_documents());
  for (std::size_t d = 0; d < out.size(); ++d) out[d] = {d, score(query, d)};
  std::stable_sort(out.begin(), out.end(),
                   [](const ScoredDocument& a, const ScoredDocument& b) { return a.score > b.score; });
  return out;
}

}  // namespace ldakit
