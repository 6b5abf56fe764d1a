#include "ldakit/estimate.hpp"

#include <numeric>

namespace ldakit {

std::vector<double> estimate_theta(const TopicModel& model, std::size_t d) {
  const auto& alpha = model.hyper().alpha;
  const double denom = model.hyper().alpha_sum() + static_cast<double>(model.document_length(d));
  std::vector<double> theta(model.num_topics());
  for (TopicId t = 0; t < model.num_topics(); ++t) theta[t] = (alpha[t] + model.doc_topic(d, t)) / denom;
  return theta;
}

std::vector<double> estimate_phi(const TopicModel& model, TopicId t) {
  const double beta = model.hyper().beta;
  const auto v = model.vocabulary_size();
  const double denom = beta * static_cast<double>(v) + model.topic_total(t);
  std::vector<double> phi(v);
  for (WordId w = 0; w < v; ++w) phi[w] = (beta + model.word_topic(w, t)) / denom;
  return phi;
}

DocTopicRow make_doc_topic_row(std::string doc_id, std::vector<double> confidences) {
  DocTopicRow row{std::move(doc_id), std::move(confidences), 0};
  const double sum = std::accumulate(row.confidences.begin(), row.confidences.end(), 0.0);
  if (sum > 0.0) {
    for (auto& c : row.confidences) c /= sum;
  }
  for (std::size_t t = 1; t < row.confidences.size(); ++t) {
    if (row.confidences[t] > row.confidences[row.prediction]) row.prediction = static_cast<TopicId>(t);
  }
  return row;
}

}  // namespace ldakit
