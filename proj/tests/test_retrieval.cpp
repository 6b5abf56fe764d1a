#include <doctest.h>

#include <cmath>
#include <map>

#include "ldakit/retrieval.hpp"
#include "oracle.hpp"

using namespace ldakit;

namespace {

struct Toy {
  Corpus corpus = oracle::make_corpus({{"flu", "shot", "flu"}, {"mask", "shot"}, {"mask", "mask", "school", "flu"}});
  TopicModel model;
  Toy() {
    model = TopicModel(corpus, Hyperparameters{{0.3, 0.6}, 0.05, 1, 0, 1, 0});
    model.set_assignments(corpus, std::vector<TopicId>{0, 1, 0, 1, 1, 1, 0, 1, 0});
  }
  std::optional<WordId> id(const std::string& w) const { return corpus.vocabulary().find(w); }
};

// Counted straight from the raw token lists.
double ml(const Corpus& c, WordId w, std::size_t d) {
  const auto& t = c.document(d).tokens;
  return static_cast<double>(std::count(t.begin(), t.end(), w)) / t.size();
}
double coll(const Corpus& c, WordId w) {
  double n = 0, hit = 0;
  for (const auto& doc : c.documents())
    for (auto x : doc.tokens) {
      ++n;
      hit += x == w;
    }
  return hit / n;
}

}  // namespace

TEST_CASE("collection statistics") {
  Toy toy;
  const CollectionModel cm(toy.corpus);
  for (WordId w = 0; w < toy.corpus.vocabulary_size(); ++w) {
    CHECK(cm.collection_prob(w) == coll(toy.corpus, w));
    for (std::size_t d = 0; d < 3; ++d) CHECK(cm.document_prob(w, d) == ml(toy.corpus, w, d));
  }
}

TEST_CASE("Dirichlet smoothing matches the count form") {
  Toy toy;
  const CollectionModel cm(toy.corpus);
  const RetrievalConfig cfg{2.5, 1.0};
  for (WordId w = 0; w < toy.corpus.vocabulary_size(); ++w) {
    for (std::size_t d = 0; d < 3; ++d) {
      const double n = toy.corpus.document(d).tokens.size();
      const double c = ml(toy.corpus, w, d) * n;
      const double expect = (c + cfg.mu * coll(toy.corpus, w)) / (n + cfg.mu);
      CHECK(smoothed_doc_prob(cm, w, d, cfg) == doctest::Approx(expect).epsilon(1e-14));
    }
  }
  CHECK(smoothed_doc_prob(cm, std::nullopt, 0, cfg) == 0.0);
}

TEST_CASE("lda word probability is sum over topics of phi * theta") {
  Toy toy;
  const auto& m = toy.model;
  const auto c = oracle::recount(toy.corpus, m);
  for (WordId w = 0; w < toy.corpus.vocabulary_size(); ++w) {
    for (std::size_t d = 0; d < 3; ++d) {
      double p = 0;
      const double n = toy.corpus.document(d).tokens.size();
      for (TopicId t = 0; t < 2; ++t) {
        const double phi = (0.05 + c.nwk[w][t]) / (0.05 * 4 + c.nk[t]);
        const double theta = (m.hyper().alpha[t] + c.ndk[d][t]) / (0.9 + n);
        p += phi * theta;
      }
      CHECK(lda_word_prob(m, w, d) == doctest::Approx(p).epsilon(1e-14));
    }
  }
}

TEST_CASE("reductions at the extremes of lambda and mu are exact") {
  Toy toy;
  const CollectionModel cm(toy.corpus);
  const QueryTerms q{toy.id("flu"), toy.id("mask"), toy.id("flu")};
  for (std::size_t d = 0; d < 3; ++d) {
    const RetrievalConfig lm{1000, 1.0};
    double expect = 0;
    for (const auto& w : q) expect += std::log(smoothed_doc_prob(cm, w, d, lm));
    CHECK(query_score(cm, toy.model, q, d, lm) == expect);

    const RetrievalConfig pure{1000, 0.0};
    expect = 0;
    for (const auto& w : q) expect += std::log(lda_word_prob(toy.model, w, d));
    CHECK(query_score(cm, toy.model, q, d, pure) == expect);

    const RetrievalConfig ml_only{0.0, 1.0};
    expect = 0;
    bool zero = false;
    for (const auto& w : q) {
      const double p = ml(toy.corpus, *w, d);
      zero |= p == 0.0;
      expect += std::log(p);
    }
    CHECK(query_score(cm, toy.model, q, d, ml_only) == (zero ? kZeroProbabilityScore : expect));
  }
}

TEST_CASE("cached scorer agrees with the direct path") {
  Toy toy;
  const CollectionModel cm(toy.corpus);
  const RetrievalConfig cfg{3.0, 0.7};
  const LdaScorer scorer(toy.corpus, toy.model, cfg);
  const QueryTerms q{toy.id("school"), toy.id("shot")};
  for (std::size_t d = 0; d < 3; ++d) {
    CHECK(scorer.score(q, d) == doctest::Approx(query_score(cm, toy.model, q, d, cfg)).epsilon(1e-14));
  }
  const auto ranked = scorer.rank(q);
  REQUIRE(ranked.size() == 3);
  CHECK(ranked[0].score >= ranked[1].score);
  CHECK(ranked[1].score >= ranked[2].score);
}

TEST_CASE("unknown terms and empty queries") {
  Toy toy;
  const CollectionModel cm(toy.corpus);
  const QueryTerms unknown{std::nullopt};
  CHECK(query_score(cm, toy.model, unknown, 0, RetrievalConfig{}) == kZeroProbabilityScore);
  CHECK(query_score(cm, toy.model, QueryTerms{}, 0, RetrievalConfig{}) == 0.0);
  const LdaScorer scorer(toy.corpus, toy.model, RetrievalConfig{});
  const auto ranked = scorer.rank(unknown);
  for (std::size_t i = 0; i < ranked.size(); ++i) CHECK(ranked[i].doc == i);  // all tied, corpus order kept
}

TEST_CASE("retrieval config validation") {
  CHECK_THROWS_AS((RetrievalConfig{-1.0, 0.5}.validate()), UsageError);
  CHECK_THROWS_AS((RetrievalConfig{1.0, 1.5}.validate()), UsageError);
  CHECK_NOTHROW((RetrievalConfig{0.0, 0.0}.validate()));
}
