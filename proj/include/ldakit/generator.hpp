#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ldakit/corpus.hpp"

namespace ldakit {

struct GeneratorConfig {
  std::uint32_t num_topics = 3;
  std::uint32_t vocabulary_size = 60;
  std::uint32_t num_documents = 300;
  std::uint32_t doc_length = 40;
  double alpha = 0.5;  // symmetric Dirichlet over topics per document
  double beta = 0.05;  // symmetric Dirichlet over words per topic
  std::uint64_t seed = 0;
};

// Synthetic corpus drawn from the LDA generative process, plus ground truth.
struct PlantedCorpus {
  Corpus corpus;
  // num_documents x num_topics
  std::vector<std::vector<double>> theta;
  // num_topics x corpus vocabulary size, indexed by corpus word id. Words
  // that were never drawn are absent, so rows may sum to slightly under 1.
  std::vector<std::vector<double>> phi;
  // corpus word id -> generator word index
  std::vector<std::uint32_t> source_word;
};

// Draws phi_z ~ Dir(beta) for every topic, then per document theta ~ Dir(alpha)
// and per token z ~ theta, w ~ phi_z, all from one Rng(seed) in that order.
PlantedCorpus generate_corpus(const GeneratorConfig& config);

// Letters-only name for generator word `index`: "zz" plus a fixed-width
// base-26 code, so the words pass through clean_text and tokenize unchanged.
std::string generator_word_name(std::uint32_t index, std::uint32_t vocabulary_size);

}  // namespace ldakit
