#include "ldakit/sampler.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace ldakit {
namespace {

bool ranks_before(const TopicCount& a, const TopicCount& b) {
  return a.count > b.count || (a.count == b.count && a.topic < b.topic);
}

// u is u01 * total; guard the u == total rounding case so every engine
// sees the same residual.
double scaled_draw(Rng& rng, double total) {
  double u = rng.uniform() * total;
  if (u >= total) u = std::nextafter(total, 0.0);
  return u;
}

}  // namespace

double gibbs_weight_naive(const TopicModel& model, std::size_t d, WordId w, TopicId t) {
  const double beta = model.hyper().beta;
  const double v = static_cast<double>(model.vocabulary_size());
  return (model.hyper().alpha[t] + model.doc_topic(d, t)) * (beta + model.word_topic(w, t)) /
         (beta * v + model.topic_total(t));
}

void BucketHits::record(Bucket b) {
  switch (b) {
    case Bucket::smoothing: ++smoothing; break;
    case Bucket::document: ++document; break;
    case Bucket::topic_word: ++topic_word; break;
  }
}

double BucketHits::topic_word_fraction() const {
  const auto n = total();
  return n == 0 ? 0.0 : static_cast<double>(topic_word) / static_cast<double>(n);
}

BucketHits& BucketHits::operator+=(const BucketHits& other) {
  smoothing += other.smoothing;
  document += other.document;
  topic_word += other.topic_word;
  return *this;
}

// ---------------------------------------------------------------- naive

NaiveSampler::NaiveSampler(const Corpus& corpus, TopicModel& model)
    : corpus_(corpus), model_(model) {
  const auto k = model_.num_topics();
  smooth_.resize(k);
  doc_.resize(k);
  word_.resize(k);
  order_.reserve(k);
}

void NaiveSampler::fill_terms(std::size_t d, WordId w) {
  const auto& alpha = model_.hyper().alpha;
  const double beta = model_.hyper().beta;
  const double beta_v = beta * static_cast<double>(model_.vocabulary_size());
  const auto n_td = model_.doc_topics(d);
  const auto n_wt = model_.word_topics(w);
  const auto n_t = model_.topic_totals();
  s_ = r_ = q_ = 0.0;
  for (TopicId t = 0; t < model_.num_topics(); ++t) {
    const double denom = beta_v + n_t[t];
    smooth_[t] = alpha[t] * beta / denom;
    doc_[t] = n_td[t] * beta / denom;
    word_[t] = (alpha[t] + n_td[t]) / denom * n_wt[t];
    s_ += smooth_[t];
    r_ += doc_[t];
    q_ += word_[t];
  }
}

BucketMasses NaiveSampler::masses(std::size_t d, WordId w) {
  fill_terms(d, w);
  return {s_, r_, q_};
}

TopicId NaiveSampler::walk(std::size_t d, WordId w, double u, Bucket* bucket) {
  const auto k = model_.num_topics();
  const auto n_td = model_.doc_topics(d);
  if (u < s_) {
    *bucket = Bucket::smoothing;
    double acc = 0.0;
    for (TopicId t = 0; t < k; ++t) {
      acc += smooth_[t];
      if (acc > u) return t;
    }
    return k - 1;
  }
  u -= s_;
  TopicId doc_fallback = k - 1;
  for (TopicId t = k; t-- > 0;) {
    if (n_td[t] != 0) {
      doc_fallback = t;
      break;
    }
  }
  if (u < r_) {
    *bucket = Bucket::document;
    double acc = 0.0;
    for (TopicId t = 0; t < k; ++t) {
      if (n_td[t] == 0) continue;
      acc += doc_[t];
      if (acc > u) return t;
    }
    return doc_fallback;
  }
  u -= r_;
  *bucket = Bucket::topic_word;
  const auto n_wt = model_.word_topics(w);
  order_.clear();
  for (TopicId t = 0; t < k; ++t) {
    if (n_wt[t] > 0) order_.push_back(t);
  }
  std::sort(order_.begin(), order_.end(),
            [&](TopicId a, TopicId b) { return n_wt[a] > n_wt[b] || (n_wt[a] == n_wt[b] && a < b); });
  double acc = 0.0;
  for (TopicId t : order_) {
    acc += word_[t];
    if (acc > u) return t;
  }
  return order_.empty() ? doc_fallback : order_.back();
}

TopicId NaiveSampler::sample(std::size_t d, WordId w, double u) {
  fill_terms(d, w);
  if (!(u >= 0.0 && u < s_ + r_ + q_)) throw std::out_of_range("uniform draw outside [0, total mass)");
  Bucket bucket;
  return walk(d, w, u, &bucket);
}

void NaiveSampler::sweep(Rng& rng, const SweepHooks* hooks) {
  for (std::size_t d = 0; d < corpus_.num_documents(); ++d) {
    const auto& tokens = corpus_.document(d).tokens;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      const WordId w = tokens[i];
      model_.decrement(d, w, model_.assignment(d, i));
      fill_terms(d, w);
      const double u = scaled_draw(rng, s_ + r_ + q_);
      Bucket bucket;
      const TopicId t = walk(d, w, u, &bucket);
      hits_.record(bucket);
      model_.increment(d, w, t);
      model_.set_assignment(d, i, t);
      if (hooks && hooks->on_assign) hooks->on_assign(d, i, t);
    }
  }
}

// ---------------------------------------------------------------- sparse

SparseSampler::SparseSampler(const Corpus& corpus, TopicModel& model)
    : corpus_(corpus), model_(model) {
  refresh();
}

void SparseSampler::refresh() {
  const auto k = model_.num_topics();
  alpha_ = model_.hyper().alpha;
  beta_ = model_.hyper().beta;
  beta_v_ = beta_ * static_cast<double>(model_.vocabulary_size());
  s_ = 0.0;
  coeff_.assign(k, 0.0);
  for (TopicId t = 0; t < k; ++t) {
    s_ += alpha_[t] * beta_ / denom(t);
    coeff_[t] = alpha_[t] / denom(t);
  }
  word_topics_.assign(model_.vocabulary_size(), {});
  for (WordId w = 0; w < model_.vocabulary_size(); ++w) {
    auto& list = word_topics_[w];
    const auto counts = model_.word_topics(w);
    for (TopicId t = 0; t < k; ++t) {
      if (counts[t] > 0) list.push_back({t, counts[t]});
    }
    std::sort(list.begin(), list.end(), ranks_before);
  }
  const std::size_t open_doc = doc_;
  doc_topics_.clear();
  r_ = 0.0;
  doc_ = kNoDocument;
  if (open_doc != kNoDocument) begin_document(open_doc);
}

void SparseSampler::begin_document(std::size_t d) {
  assert(doc_ == kNoDocument);
  doc_ = d;
  const auto k = model_.num_topics();
  const auto n_td = model_.doc_topics(d);
  s_ = 0.0;
  for (TopicId t = 0; t < k; ++t) s_ += alpha_[t] * beta_ / denom(t);
  doc_topics_.clear();
  r_ = 0.0;
  for (TopicId t = 0; t < k; ++t) {
    if (n_td[t] == 0) continue;
    doc_topics_.push_back(t);
    r_ += n_td[t] * beta_ / denom(t);
    coeff_[t] = (alpha_[t] + n_td[t]) / denom(t);
  }
}

void SparseSampler::end_document() {
  assert(doc_ != kNoDocument);
  for (TopicId t : doc_topics_) coeff_[t] = alpha_[t] / denom(t);
  doc_topics_.clear();
  r_ = 0.0;
  doc_ = kNoDocument;
}

void SparseSampler::word_increment(WordId w, TopicId t) {
  auto& list = word_topics_[w];
  auto it = std::find_if(list.begin(), list.end(), [t](const TopicCount& e) { return e.topic == t; });
  std::size_t i;
  if (it == list.end()) {
    list.push_back({t, 1});
    i = list.size() - 1;
  } else {
    ++it->count;
    i = static_cast<std::size_t>(it - list.begin());
  }
  while (i > 0 && ranks_before(list[i], list[i - 1])) {
    std::swap(list[i], list[i - 1]);
    --i;
  }
}

void SparseSampler::word_decrement(WordId w, TopicId t) {
  auto& list = word_topics_[w];
  auto it = std::find_if(list.begin(), list.end(), [t](const TopicCount& e) { return e.topic == t; });
  assert(it != list.end());
  --it->count;
  auto i = static_cast<std::size_t>(it - list.begin());
  while (i + 1 < list.size() && ranks_before(list[i + 1], list[i])) {
    std::swap(list[i], list[i + 1]);
    ++i;
  }
  if (list[i].count == 0) {
    assert(i + 1 == list.size());
    list.pop_back();
  }
}

void SparseSampler::remove_token(WordId w, TopicId t) {
  assert(doc_ != kNoDocument);
  const double old_denom = denom(t);
  s_ -= alpha_[t] * beta_ / old_denom;
  r_ -= model_.doc_topic(doc_, t) * beta_ / old_denom;
  model_.decrement(doc_, w, t);
  const double new_denom = denom(t);
  const Count n_td = model_.doc_topic(doc_, t);
  s_ += alpha_[t] * beta_ / new_denom;
  r_ += n_td * beta_ / new_denom;
  coeff_[t] = (alpha_[t] + n_td) / new_denom;
  if (n_td == 0) {
    auto pos = std::lower_bound(doc_topics_.begin(), doc_topics_.end(), t);
    doc_topics_.erase(pos);
    if (doc_topics_.empty()) r_ = 0.0;
  }
  word_decrement(w, t);
}

void SparseSampler::add_token(WordId w, TopicId t) {
  assert(doc_ != kNoDocument);
  const double old_denom = denom(t);
  s_ -= alpha_[t] * beta_ / old_denom;
  r_ -= model_.doc_topic(doc_, t) * beta_ / old_denom;
  model_.increment(doc_, w, t);
  const double new_denom = denom(t);
  const Count n_td = model_.doc_topic(doc_, t);
  s_ += alpha_[t] * beta_ / new_denom;
  r_ += n_td * beta_ / new_denom;
  coeff_[t] = (alpha_[t] + n_td) / new_denom;
  if (n_td == 1) {
    auto pos = std::lower_bound(doc_topics_.begin(), doc_topics_.end(), t);
    doc_topics_.insert(pos, t);
  }
  word_increment(w, t);
}

BucketMasses SparseSampler::bucket_masses(WordId w) const {
  double q = 0.0;
  for (const auto& e : word_topics_[w]) q += coeff_[e.topic] * e.count;
  return {s_, r_, q};
}

TopicId SparseSampler::walk(WordId w, const BucketMasses& m, double u, Bucket* bucket) const {
  const auto k = model_.num_topics();
  if (u < m.s) {
    *bucket = Bucket::smoothing;
    double acc = 0.0;
    for (TopicId t = 0; t < k; ++t) {
      acc += alpha_[t] * beta_ / denom(t);
      if (acc > u) return t;
    }
    return k - 1;
  }
  u -= m.s;
  const TopicId doc_fallback = doc_topics_.empty() ? k - 1 : doc_topics_.back();
  if (u < m.r) {
    *bucket = Bucket::document;
    double acc = 0.0;
    for (TopicId t : doc_topics_) {
      acc += model_.doc_topic(doc_, t) * beta_ / denom(t);
      if (acc > u) return t;
    }
    return doc_fallback;
  }
  u -= m.r;
  *bucket = Bucket::topic_word;
  const auto& list = word_topics_[w];
  double acc = 0.0;
  for (const auto& e : list) {
    acc += coeff_[e.topic] * e.count;
    if (acc > u) return e.topic;
  }
  return list.empty() ? doc_fallback : list.back().topic;
}

TopicId SparseSampler::sample(WordId w, const BucketMasses& masses, double u) const {
  if (!(u >= 0.0 && u < masses.total())) throw std::out_of_range("uniform draw outside [0, s + r + q)");
  Bucket bucket;
  return walk(w, masses, u, &bucket);
}

void SparseSampler::sweep(Rng& rng, const SweepHooks* hooks) {
  for (std::size_t d = 0; d < corpus_.num_documents(); ++d) {
    const auto& tokens = corpus_.document(d).tokens;
    begin_document(d);
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      const WordId w = tokens[i];
      remove_token(w, model_.assignment(d, i));
      const BucketMasses m = bucket_masses(w);
      if (hooks && hooks->on_draw) hooks->on_draw(*this, d, w, m);
      const double u = scaled_draw(rng, m.total());
      Bucket bucket;
      const TopicId t = walk(w, m, u, &bucket);
      hits_.record(bucket);
      add_token(w, t);
      model_.set_assignment(d, i, t);
      if (hooks && hooks->on_assign) hooks->on_assign(d, i, t);
    }
    end_document();
  }
}

void sweep_naive(const Corpus& corpus, TopicModel& model, Rng& rng, const SweepHooks* hooks) {
  NaiveSampler sampler(corpus, model);
  sampler.sweep(rng, hooks);
}

void sweep_sparse(const Corpus& corpus, TopicModel& model, Rng& rng, const SweepHooks* hooks) {
  SparseSampler sampler(corpus, model);
  sampler.sweep(rng, hooks);
}

}  // namespace ldakit
