#include "ldakit/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <spdlog/spdlog.h>

namespace ldakit {

std::vector<RankedWord> top_words(const TopicModel& model, const Vocabulary& vocabulary, TopicId t,
                                  std::size_t n) {
  const auto v = model.vocabulary_size();
  n = std::min(n, v);
  std::vector<WordId> ids(v);
  std::iota(ids.begin(), ids.end(), WordId{0});
  const auto ranks_before = [&](WordId a, WordId b) {
    const Count ca = model.word_topic(a, t);
    const Count cb = model.word_topic(b, t);
    if (ca != cb) return ca > cb;
    return vocabulary.word(a) < vocabulary.word(b);
  };
  std::partial_sort(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(n), ids.end(), ranks_before);

  const double beta = model.hyper().beta;
  const double denom = beta * static_cast<double>(v) + model.topic_total(t);
  std::vector<RankedWord> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const WordId w = ids[i];
    const Count c = model.word_topic(w, t);
    out.push_back({w, vocabulary.word(w), c, (beta + c) / denom});
  }
  return out;
}

DocumentFrequencies::DocumentFrequencies(const Corpus& corpus)
    : num_documents_(corpus.num_documents()), postings_(corpus.vocabulary_size()) {
  for (std::size_t d = 0; d < corpus.num_documents(); ++d) {
    for (WordId w : corpus.document(d).tokens) {
      auto& list = postings_[w];
      if (list.empty() || list.back() != d) list.push_back(static_cast<std::uint32_t>(d));
    }
  }
}

std::size_t DocumentFrequencies::co_document_frequency(WordId a, WordId b) const {
  const auto& x = postings_.at(a);
  const auto& y = postings_.at(b);
  std::size_t i = 0, j = 0, n = 0;
  while (i < x.size() && j < y.size()) {
    if (x[i] < y[j]) {
      ++i;
    } else if (y[j] < x[i]) {
      ++j;
    } else {
      ++n;
      ++i;
      ++j;
    }
  }
  return n;
}

double topic_coherence(std::span<const WordId> ranked_words, const DocumentFrequencies& frequencies,
                       double epsilon) {
  const std::size_t n = ranked_words.size();
  if (n < 2) throw UsageError("coherence needs at least two words");
  const double num_docs = static_cast<double>(frequencies.num_documents());
  double sum = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const auto df_j = frequencies.document_frequency(ranked_words[j]);
      if (df_j == 0) throw DataError("coherence: word has zero document frequency");
      const double p_j = static_cast<double>(df_j) / num_docs;
      const double p_ij =
          static_cast<double>(frequencies.co_document_frequency(ranked_words[i], ranked_words[j])) / num_docs;
      sum += std::log((p_ij + epsilon) / p_j);
    }
  }
  return 2.0 / (static_cast<double>(n) * static_cast<double>(n - 1)) * sum;
}

double average_model_coherence(const TopicModel& model, const Corpus& corpus,
                               const DocumentFrequencies& frequencies, std::size_t top_n, double epsilon) {
  std::vector<double> per_topic;
  per_topic.reserve(model.num_topics());
  for (TopicId t = 0; t < model.num_topics(); ++t) {
    const auto words = top_words(model, corpus.vocabulary(), t, top_n);
    std::vector<WordId> ids;
    ids.reserve(words.size());
    for (const auto& w : words) ids.push_back(w.id);
    per_topic.push_back(topic_coherence(ids, frequencies, epsilon));
  }
  return mean_coherence(per_topic);
}

double mean_coherence(std::span<const double> per_topic) {
  if (per_topic.empty()) throw UsageError("no topic coherences to average");
  double sum = 0.0;
  for (double c : per_topic) sum += c;
  return sum / static_cast<double>(per_topic.size());
}

double average_model_coherence(const TopicModel& model, const Corpus& corpus, std::size_t top_n,
                               double epsilon) {
  return average_model_coherence(model, corpus, DocumentFrequencies(corpus), top_n, epsilon);
}

double exclusivity(const TopicModel& model, TopicId t, std::span<const WordId> words) {
  if (words.empty()) return 0.0;
  const double beta = model.hyper().beta;
  const double beta_v = beta * static_cast<double>(model.vocabulary_size());
  double sum = 0.0;
  for (WordId w : words) {
    double across = 0.0;
    double own = 0.0;
    for (TopicId u = 0; u < model.num_topics(); ++u) {
      const double phi = (beta + model.word_topic(w, u)) / (beta_v + model.topic_total(u));
      across += phi;
      if (u == t) own = phi;
    }
    sum += own / across;
  }
  return sum / static_cast<double>(words.size());
}

double exclusivity(const TopicModel& model, const Vocabulary& vocabulary, TopicId t, std::size_t top_n) {
  std::vector<WordId> ids;
  for (const auto& w : top_words(model, vocabulary, t, top_n)) ids.push_back(w.id);
  return exclusivity(model, t, ids);
}

double document_entropy(const TopicModel& model, TopicId t) {
  const Count total = model.topic_total(t);
  if (total == 0) {
    spdlog::warn("topic {} has no tokens; document entropy reported as 0", t);
    return 0.0;
  }
  double h = 0.0;
  for (std::size_t d = 0; d < model.num_documents(); ++d) {
    const Count c = model.doc_topic(d, t);
    if (c == 0) continue;
    const double p = static_cast<double>(c) / total;
    h -= p * std::log(p);
  }
  return h;
}

std::vector<TopicReport> topic_reports(const TopicModel& model, const Corpus& corpus, std::size_t top_n,
                                       double epsilon) {
  const DocumentFrequencies frequencies(corpus);
  std::vector<TopicReport> reports;
  reports.reserve(model.num_topics());
  for (TopicId t = 0; t < model.num_topics(); ++t) {
    TopicReport r;
    r.topic = t;
    r.top_words = top_words(model, corpus.vocabulary(), t, top_n);
    std::vector<WordId> ids;
    std::size_t chars = 0;
    for (const auto& w : r.top_words) {
      ids.push_back(w.id);
      chars += w.word.size();
    }
    r.coherence = topic_coherence(ids, frequencies, epsilon);
    r.exclusivity = exclusivity(model, t, ids);
    r.document_entropy = document_entropy(model, t);
    r.tokens = model.topic_total(t);
    r.avg_word_length = ids.empty() ? 0.0 : static_cast<double>(chars) / static_cast<double>(ids.size());
    reports.push_back(std::move(r));
  }
  return reports;
}

ConfidenceStats confidence_stats(std::span<const DocTopicRow> rows) {
  if (rows.empty()) throw UsageError("confidence statistics need at least one row");
  const auto k = rows.front().confidences.size();
  ConfidenceStats stats(k);
  for (std::size_t t = 0; t < k; ++t) {
    auto& s = stats[t];
    s.min = s.max = rows.front().confidences[t];
    double sum = 0.0;
    for (const auto& row : rows) {
      if (row.confidences.size() != k) throw UsageError("rows disagree on the number of topics");
      const double c = row.confidences[t];
      s.min = std::min(s.min, c);
      s.max = std::max(s.max, c);
      sum += c;
    }
    const double n = static_cast<double>(rows.size());
    s.mean = sum / n;
    double sq = 0.0;
    for (const auto& row : rows) {
      const double dev = row.confidences[t] - s.mean;
      sq += dev * dev;
    }
    s.std = std::sqrt(sq / n);
    // mean may round just outside [min, max] when all values are equal
    s.mean = std::clamp(s.mean, s.min, s.max);
  }
  return stats;
}

double ConfidenceHistogram::bin_hi(std::size_t i) const {
  return i + 1 == counts.size() ? 1.0 : static_cast<double>(i + 1) * bin_width;
}

ConfidenceHistogram confidence_histogram(std::span<const DocTopicRow> rows, TopicId topic, double bin_width,
                                         std::uint32_t num_topics) {
  if (!(bin_width > 0.0 && bin_width <= 1.0)) throw UsageError("bin width must be in (0, 1]");
  if (topic >= num_topics) throw UsageError("topic index out of range");
  // Small slack so that e.g. 0.7 with width 0.1 lands in [0.7, 0.8).
  constexpr double kSlack = 1e-9;
  const auto num_bins = static_cast<std::size_t>(std::ceil(1.0 / bin_width - kSlack));
  ConfidenceHistogram h;
  h.topic = topic;
  h.bin_width = bin_width;
  h.counts.assign(num_bins, std::vector<std::uint64_t>(num_topics, 0));
  for (const auto& row : rows) {
    const double c = std::clamp(row.confidences.at(topic), 0.0, 1.0);
    auto bin = static_cast<std::size_t>(std::floor(c / bin_width + kSlack));
    bin = std::min(bin, num_bins - 1);
    if (row.prediction >= num_topics) throw UsageError("prediction out of topic range");
    ++h.counts[bin][row.prediction];
  }
  return h;
}

std::vector<std::uint64_t> topic_counts(std::span<const DocTopicRow> rows, std::uint32_t num_topics) {
  std::vector<std::uint64_t> counts(num_topics, 0);
  for (const auto& row : rows) {
    if (row.prediction >= num_topics) throw UsageError("prediction out of topic range");
    ++counts[row.prediction];
  }
  return counts;
}

}  // namespace ldakit
