#include "ldakit/model.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace ldakit {

double Hyperparameters::alpha_sum() const { return std::accumulate(alpha.begin(), alpha.end(), 0.0); }

void Hyperparameters::validate() const {
  if (alpha.empty()) throw UsageError("number of topics must be at least 1");
  for (double a : alpha) {
    if (!(a > 0.0) || !std::isfinite(a)) throw UsageError("every alpha must be positive and finite");
  }
  if (!(beta > 0.0) || !std::isfinite(beta)) throw UsageError("beta must be positive and finite");
  if (iterations < 1) throw UsageError("iterations must be at least 1");
  if (chains < 1) throw UsageError("chains must be at least 1");
}

Hyperparameters Hyperparameters::defaults_for(std::uint32_t k, std::size_t vocabulary_size) {
  if (k == 0) throw UsageError("number of topics must be at least 1");
  if (vocabulary_size == 0) throw UsageError("vocabulary is empty");
  return symmetric(k, 50.0 / k, 50.0 / static_cast<double>(vocabulary_size));
}

Hyperparameters Hyperparameters::symmetric(std::uint32_t k, double alpha, double beta) {
  Hyperparameters h;
  h.alpha.assign(k, alpha);
  h.beta = beta;
  return h;
}

TopicModel::TopicModel(const Corpus& corpus, Hyperparameters hyper)
    : hyper_(std::move(hyper)), k_(hyper_.k()), v_(corpus.vocabulary_size()) {
  hyper_.validate();
  doc_offsets_.reserve(corpus.num_documents() + 1);
  for (const auto& doc : corpus.documents()) doc_offsets_.push_back(doc_offsets_.back() + doc.tokens.size());
  z_.assign(doc_offsets_.back(), 0);
  n_td_.assign(corpus.num_documents() * k_, 0);
  n_wt_.assign(v_ * k_, 0);
  n_t_.assign(k_, 0);
}

void TopicModel::set_alpha(std::vector<double> alpha) {
  if (alpha.size() != k_) throw UsageError("alpha length does not match the number of topics");
  auto h = hyper_;
  h.alpha = std::move(alpha);
  h.validate();
  hyper_ = std::move(h);
}

void TopicModel::initialize_random(const Corpus& corpus, Rng& rng) {
  for (auto& t : z_) t = rng.uniform_index(k_);
  recount(corpus);
}

void TopicModel::set_assignments(const Corpus& corpus, std::span<const TopicId> z) {
  if (z.size() != z_.size()) throw DataError("assignment vector length does not match corpus");
  for (TopicId t : z) {
    if (t >= k_) throw DataError("assignment out of topic range");
  }
  std::copy(z.begin(), z.end(), z_.begin());
  recount(corpus);
}

void TopicModel::recount(const Corpus& corpus) {
  std::fill(n_td_.begin(), n_td_.end(), 0);
  std::fill(n_wt_.begin(), n_wt_.end(), 0);
  std::fill(n_t_.begin(), n_t_.end(), 0);
  for (std::size_t d = 0; d < corpus.num_documents(); ++d) {
    const auto& tokens = corpus.document(d).tokens;
    for (std::size_t i = 0; i < tokens.size(); ++i) increment(d, tokens[i], assignment(d, i));
  }
}

bool TopicModel::counts_consistent(const Corpus& corpus) const {
  if (corpus.num_documents() != num_documents() || corpus.total_tokens() != total_tokens()) return false;
  TopicModel fresh = *this;
  fresh.recount(corpus);
  return fresh.n_td_ == n_td_ && fresh.n_wt_ == n_wt_ && fresh.n_t_ == n_t_;
}

TopicModel init_model(const Corpus& corpus, const Hyperparameters& hyper, Rng& rng) {
  if (corpus.empty()) throw DataError("cannot initialise a topic model on an empty corpus");
  TopicModel model(corpus, hyper);
  model.initialize_random(corpus, rng);
  return model;
}

}  // namespace ldakit
