#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ldakit/common.hpp"
#include "ldakit/corpus.hpp"
#include "ldakit/rng.hpp"

namespace ldakit {

struct Hyperparameters {
  std::vector<double> alpha;  // one entry per topic
  double beta = 0.01;
  std::uint32_t iterations = 1000;
  std::uint32_t opt_interval = 10;  // sweeps between alpha updates, 0 disables
  std::uint32_t chains = 1;
  std::uint64_t seed = 0;

  std::uint32_t k() const { return static_cast<std::uint32_t>(alpha.size()); }
  double alpha_sum() const;

  // Throws UsageError unless k >= 1, every alpha > 0, beta > 0,
  // iterations >= 1 and chains >= 1.
  void validate() const;

  // alpha = 50/k for every topic, beta = 50/vocabulary_size.
  static Hyperparameters defaults_for(std::uint32_t k, std::size_t vocabulary_size);
  static Hyperparameters symmetric(std::uint32_t k, double alpha, double beta);
};

// Collapsed Gibbs state: topic assignments z and the counts derived from
// them. n_td is document-major (D x k), n_wt is word-major (V x k).
class TopicModel {
 public:
  TopicModel() = default;
  // All counts zero and every assignment set to topic 0 without counting;
  // call initialize_random or set_assignments before use.
  TopicModel(const Corpus& corpus, Hyperparameters hyper);

  std::uint32_t num_topics() const { return k_; }
  std::size_t num_documents() const { return doc_offsets_.size() - 1; }
  std::size_t vocabulary_size() const { return v_; }
  std::size_t total_tokens() const { return z_.size(); }
  std::size_t document_length(std::size_t d) const { return doc_offsets_[d + 1] - doc_offsets_[d]; }

  const Hyperparameters& hyper() const { return hyper_; }
  void set_alpha(std::vector<double> alpha);

  Count doc_topic(std::size_t d, TopicId t) const { return n_td_[d * k_ + t]; }
  Count word_topic(WordId w, TopicId t) const { return n_wt_[static_cast<std::size_t>(w) * k_ + t]; }
  Count topic_total(TopicId t) const { return n_t_[t]; }

  std::span<const Count> doc_topics(std::size_t d) const { return {n_td_.data() + d * k_, k_}; }
  std::span<const Count> word_topics(WordId w) const {
    return {n_wt_.data() + static_cast<std::size_t>(w) * k_, k_};
  }
  std::span<const Count> topic_totals() const { return n_t_; }

  std::span<const TopicId> assignments(std::size_t d) const {
    return {z_.data() + doc_offsets_[d], document_length(d)};
  }
  std::span<const TopicId> all_assignments() const { return z_; }
  TopicId assignment(std::size_t d, std::size_t pos) const { return z_[doc_offsets_[d] + pos]; }

  // Moves one token's counts; z is left to the caller via set_assignment.
  void decrement(std::size_t d, WordId w, TopicId t) {
    --n_td_[d * k_ + t];
    --n_wt_[static_cast<std::size_t>(w) * k_ + t];
    --n_t_[t];
  }
  void increment(std::size_t d, WordId w, TopicId t) {
    ++n_td_[d * k_ + t];
    ++n_wt_[static_cast<std::size_t>(w) * k_ + t];
    ++n_t_[t];
  }
  void set_assignment(std::size_t d, std::size_t pos, TopicId t) { z_[doc_offsets_[d] + pos] = t; }

  // Uniform random topic per token, drawn in corpus order.
  void initialize_random(const Corpus& corpus, Rng& rng);
  // Replaces z and rebuilds every count matrix. Throws on shape/range errors.
  void set_assignments(const Corpus& corpus, std::span<const TopicId> z);
  // Rebuilds counts from z.
  void recount(const Corpus& corpus);

  // True iff the counts equal a fresh recount of z.
  bool counts_consistent(const Corpus& corpus) const;

  std::span<const Count> raw_doc_topic() const { return n_td_; }
  std::span<const Count> raw_word_topic() const { return n_wt_; }

 private:
  Hyperparameters hyper_;
  std::uint32_t k_ = 0;
  std::size_t v_ = 0;
  std::vector<std::size_t> doc_offsets_{0};
  std::vector<TopicId> z_;
  std::vector<Count> n_td_;
  std::vector<Count> n_wt_;
  std::vector<Count> n_t_;
};

// Random initialisation from a fresh model; errors on an empty corpus.
TopicModel init_model(const Corpus& corpus, const Hyperparameters& hyper, Rng& rng);

}  // namespace ldakit
