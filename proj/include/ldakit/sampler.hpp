#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "ldakit/common.hpp"
#include "ldakit/corpus.hpp"
#include "ldakit/model.hpp"
#include "ldakit/rng.hpp"

namespace ldakit {

enum class Engine { naive, sparse };

// Unnormalised full conditional of one token (current token already removed):
//   (alpha_t + n_td) * (beta + n_wt) / (beta * V + n_t)
double gibbs_weight_naive(const TopicModel& model, std::size_t d, WordId w, TopicId t);

// Split of the full conditional mass:
//   s = sum_t alpha_t beta / (beta V + n_t)                  smoothing only
//   r = sum_t n_td beta / (beta V + n_t)                     document
//   q = sum_t (alpha_t + n_td) / (beta V + n_t) * n_wt       topic-word
struct BucketMasses {
  double s = 0.0;
  double r = 0.0;
  double q = 0.0;
  double total() const { return s + r + q; }
};

enum class Bucket { smoothing, document, topic_word };

struct BucketHits {
  std::uint64_t smoothing = 0;
  std::uint64_t document = 0;
  std::uint64_t topic_word = 0;

  void record(Bucket b);
  std::uint64_t total() const { return smoothing + document + topic_word; }
  double topic_word_fraction() const;
  BucketHits& operator+=(const BucketHits& other);
};

struct TopicCount {
  TopicId topic;
  Count count;
};

class SparseSampler;

// Optional instrumentation for sweeps.
struct SweepHooks {
  // After a token's new topic has been written to the model.
  std::function<void(std::size_t doc, std::size_t pos, TopicId topic)> on_assign;
  // Sparse engine: after the token is removed and masses computed, before the draw.
  std::function<void(const SparseSampler&, std::size_t doc, WordId word, const BucketMasses&)> on_draw;
};

// Inverse-CDF term order shared by both engines:
//   smoothing terms, topics ascending;
//   document terms, topics with n_td > 0 ascending;
//   topic-word terms, topics with n_wt > 0 by count descending, ties by topic ascending.
// The first topic whose running sum exceeds the residual is chosen. If rounding
// leaves the residual unconsumed, the bucket's last candidate is returned; an
// empty bucket defers to the previous bucket's last candidate.

// Dense engine: evaluates all k weights per token, no cached state.
class NaiveSampler {
 public:
  NaiveSampler(const Corpus& corpus, TopicModel& model);

  void sweep(Rng& rng, const SweepHooks* hooks = nullptr);

  // Draws a topic for token (d, w) given u in [0, total mass). The token
  // must already be removed from the counts.
  TopicId sample(std::size_t d, WordId w, double u);
  BucketMasses masses(std::size_t d, WordId w);

  const BucketHits& hits() const { return hits_; }
  void reset_hits() { hits_ = {}; }

 private:
  void fill_terms(std::size_t d, WordId w);
  TopicId walk(std::size_t d, WordId w, double u, Bucket* bucket);

  const Corpus& corpus_;
  TopicModel& model_;
  std::vector<double> smooth_, doc_, word_;
  std::vector<TopicId> order_;
  double s_ = 0.0, r_ = 0.0, q_ = 0.0;
  BucketHits hits_;
};

// Bucket-decomposed engine. Keeps s and r incrementally, a per-topic
// coefficient cache (alpha_t + n_td) / (beta V + n_t) that holds the
// alpha-only form outside the current document, and per-word topic lists
// sorted by descending count.
class SparseSampler {
 public:
  SparseSampler(const Corpus& corpus, TopicModel& model);

  void sweep(Rng& rng, const SweepHooks* hooks = nullptr);

  // Rebuilds every cache from the model (needed after alpha changes).
  void refresh();

  void begin_document(std::size_t d);
  void end_document();
  void remove_token(WordId w, TopicId t);
  void add_token(WordId w, TopicId t);

  BucketMasses bucket_masses(WordId w) const;
  // Throws std::out_of_range unless 0 <= u < masses.total().
  TopicId sample(WordId w, const BucketMasses& masses, double u) const;

  double s_mass() const { return s_; }
  double r_mass() const { return r_; }
  std::span<const double> coefficients() const { return coeff_; }
  std::span<const TopicCount> word_topics(WordId w) const { return word_topics_[w]; }
  std::span<const TopicId> document_topics() const { return doc_topics_; }
  std::size_t current_document() const { return doc_; }
  const TopicModel& model() const { return model_; }

  const BucketHits& hits() const { return hits_; }
  void reset_hits() { hits_ = {}; }

  static constexpr std::size_t kNoDocument = static_cast<std::size_t>(-1);

 private:
  TopicId walk(WordId w, const BucketMasses& masses, double u, Bucket* bucket) const;
  double denom(TopicId t) const { return beta_v_ + model_.topic_total(t); }
  void word_increment(WordId w, TopicId t);
  void word_decrement(WordId w, TopicId t);

  const Corpus& corpus_;
  TopicModel& model_;
  std::vector<double> alpha_;
  double beta_ = 0.0;
  double beta_v_ = 0.0;
  double s_ = 0.0;
  double r_ = 0.0;
  std::vector<double> coeff_;
  std::vector<std::vector<TopicCount>> word_topics_;
  std::vector<TopicId> doc_topics_;
  std::size_t doc_ = kNoDocument;
  BucketHits hits_;
};

void sweep_naive(const Corpus& corpus, TopicModel& model, Rng& rng, const SweepHooks* hooks = nullptr);
void sweep_sparse(const Corpus& corpus, TopicModel& model, Rng& rng, const SweepHooks* hooks = nullptr);

}  // namespace ldakit
