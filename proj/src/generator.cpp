#include "ldakit/generator.hpp"

#include <string>

#include "ldakit/common.hpp"
#include "ldakit/rng.hpp"

namespace ldakit {

std::string generator_word_name(std::uint32_t index, std::uint32_t vocabulary_size) {
  std::size_t width = 1;
  for (std::uint64_t span = 26; span < vocabulary_size; span *= 26) ++width;
  std::string name(width, 'a');
  for (std::size_t i = width; i-- > 0; index /= 26) name[i] = static_cast<char>('a' + index % 26);
  return "zz" + name;
}

PlantedCorpus generate_corpus(const GeneratorConfig& config) {
  if (config.num_topics == 0 || config.vocabulary_size == 0 || config.num_documents == 0 ||
      config.doc_length == 0 || !(config.alpha > 0.0) || !(config.beta > 0.0)) {
    throw UsageError("generator parameters must all be positive");
  }
  const auto k = config.num_topics;
  const auto v = config.vocabulary_size;
  Rng rng(config.seed);

  std::vector<std::vector<double>> full_phi(k, std::vector<double>(v));
  const std::vector<double> beta(v, config.beta);
  for (auto& row : full_phi) rng.dirichlet(beta, row);

  PlantedCorpus out;
  out.theta.assign(config.num_documents, std::vector<double>(k));
  const std::vector<double> alpha(k, config.alpha);

  Vocabulary vocabulary;
  std::vector<Document> documents;
  documents.reserve(config.num_documents);
  for (std::uint32_t d = 0; d < config.num_documents; ++d) {
    auto& theta = out.theta[d];
    rng.dirichlet(alpha, theta);
    Document doc{std::to_string(d), {}};
    doc.tokens.reserve(config.doc_length);
    for (std::uint32_t i = 0; i < config.doc_length; ++i) {
      const auto z = rng.categorical(theta);
      const auto w = static_cast<std::uint32_t>(rng.categorical(full_phi[z]));
      const auto before = vocabulary.size();
      const WordId id = vocabulary.intern(generator_word_name(w, v));
      if (vocabulary.size() != before) out.source_word.push_back(w);
      doc.tokens.push_back(id);
    }
    documents.push_back(std::move(doc));
  }

  out.phi.assign(k, std::vector<double>(vocabulary.size()));
  for (std::uint32_t t = 0; t < k; ++t) {
    for (WordId id = 0; id < vocabulary.size(); ++id) out.phi[t][id] = full_phi[t][out.source_word[id]];
  }
  out.corpus = Corpus(std::move(documents), std::move(vocabulary));
  return out;
}

}  // namespace ldakit
