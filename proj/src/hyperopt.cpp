#include "ldakit/hyperopt.hpp"

#include <cmath>
#include <numeric>

#include <boost/math/special_functions/digamma.hpp>
#include <spdlog/spdlog.h>

namespace ldakit {

std::optional<std::vector<double>> alpha_fixed_point_step(std::span<const Count> doc_topic,
                                                          std::span<const std::size_t> doc_lengths,
                                                          std::span<const double> alpha) {
  using boost::math::digamma;
  const std::size_t k = alpha.size();
  const std::size_t num_docs = doc_lengths.size();
  if (k == 0 || doc_topic.size() != num_docs * k) return std::nullopt;

  const double alpha_sum = std::accumulate(alpha.begin(), alpha.end(), 0.0);
  const double psi_sum = digamma(alpha_sum);
  double denominator = 0.0;
  for (std::size_t d = 0; d < num_docs; ++d) {
    denominator += digamma(static_cast<double>(doc_lengths[d]) + alpha_sum) - psi_sum;
  }
  if (!(denominator > 0.0) || !std::isfinite(denominator)) return std::nullopt;

  std::vector<double> updated(k);
  for (std::size_t t = 0; t < k; ++t) {
    const double psi_t = digamma(alpha[t]);
    double numerator = 0.0;
    for (std::size_t d = 0; d < num_docs; ++d) {
      const Count n = doc_topic[d * k + t];
      if (n > 0) numerator += digamma(n + alpha[t]) - psi_t;
    }
    updated[t] = alpha[t] * numerator / denominator;
    if (!(updated[t] > 0.0) || !std::isfinite(updated[t])) return std::nullopt;
  }
  return updated;
}

bool optimize_alpha(TopicModel& model) {
  std::vector<std::size_t> lengths(model.num_documents());
  for (std::size_t d = 0; d < lengths.size(); ++d) lengths[d] = model.document_length(d);
  auto updated = alpha_fixed_point_step(model.raw_doc_topic(), lengths, model.hyper().alpha);
  if (!updated) {
    spdlog::warn("alpha update did not yield a positive finite vector; keeping previous alpha");
    return false;
  }
  model.set_alpha(std::move(*updated));
  return true;
}

}  // namespace ldakit
