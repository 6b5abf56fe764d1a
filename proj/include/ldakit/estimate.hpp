#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ldakit/model.hpp"

namespace ldakit {

// theta_{t|d} = (alpha_t + n_td) / (sum alpha + N_d)
std::vector<double> estimate_theta(const TopicModel& model, std::size_t d);

// phi_{w|t} = (beta + n_wt) / (beta V + n_t)
std::vector<double> estimate_phi(const TopicModel& model, TopicId t);

// Per-document topic confidences with the argmax prediction.
struct DocTopicRow {
  std::string doc_id;
  std::vector<double> confidences;
  TopicId prediction = 0;
};

// Normalises `confidences` and picks the argmax (lowest index on ties).
DocTopicRow make_doc_topic_row(std::string doc_id, std::vector<double> confidences);

}  // namespace ldakit
