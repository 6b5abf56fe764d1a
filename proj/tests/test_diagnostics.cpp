#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "ldakit/diagnostics.hpp"
#include "oracle.hpp"

using namespace ldakit;

namespace {

std::vector<std::set<std::string>> word_sets(const std::vector<std::vector<std::string>>& docs) {
  std::vector<std::set<std::string>> out;
  for (const auto& d : docs) out.emplace_back(d.begin(), d.end());
  return out;
}

std::vector<WordId> ids_of(const Corpus& c, const std::vector<std::string>& words) {
  std::vector<WordId> ids;
  for (const auto& w : words) ids.push_back(*c.vocabulary().find(w));
  return ids;
}

// Model whose every token of word w sits in topic topic_of[w].
TopicModel model_by_word(const Corpus& corpus, std::uint32_t k, const std::vector<TopicId>& topic_of) {
  TopicModel m(corpus, Hyperparameters::symmetric(k, 0.1, 0.01));
  std::vector<TopicId> z;
  for (const auto& doc : corpus.documents())
    for (auto w : doc.tokens) z.push_back(topic_of[w]);
  m.set_assignments(corpus, z);
  return m;
}

}  // namespace

TEST_CASE("coherence of two words, direct evaluation") {
  const auto corpus = oracle::make_corpus({{"a", "b"}, {"c"}});
  const DocumentFrequencies f(corpus);
  const auto always = ids_of(corpus, {"a", "b"});
  CHECK(topic_coherence(always, f, 1e-12) == doctest::Approx(std::log(1.0 + 2e-12)).epsilon(1e-15));
  const auto never = ids_of(corpus, {"c", "a"});
  CHECK(topic_coherence(never, f, 1e-12) == doctest::Approx(std::log(2e-12)).epsilon(1e-12));
  CHECK(topic_coherence(never, f, 1e-12) == doctest::Approx(-26.94).epsilon(1e-3));
  const std::vector<WordId> one{0};
  CHECK_THROWS_AS(topic_coherence(one, f, 1e-12), UsageError);
}

TEST_CASE("coherence equals the brute-force oracle on random corpora") {
  std::mt19937_64 gen(31);
  std::uniform_int_distribution<int> nd(2, 10), len(1, 8), wn(0, 11);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::vector<std::string>> docs(nd(gen));
    for (auto& d : docs) {
      const int n = len(gen);
      for (int i = 0; i < n; ++i) d.push_back("w" + std::to_string(wn(gen)));
    }
    const auto corpus = oracle::make_corpus(docs);
    std::vector<std::string> words = corpus.vocabulary().words();
    std::shuffle(words.begin(), words.end(), gen);
    words.resize(std::min<std::size_t>(words.size(), 2 + trial % 9));
    if (words.size() < 2) continue;
    const DocumentFrequencies f(corpus);
    REQUIRE(topic_coherence(ids_of(corpus, words), f, 1e-12) == oracle::coherence(word_sets(docs), words, 1e-12));
  }
}

TEST_CASE("average coherence is the mean over topics") {
  const auto corpus = oracle::make_corpus({{"a", "b", "c"}, {"a", "d"}, {"c", "d", "e"}, {"b", "e"}});
  const auto m = model_by_word(corpus, 2, {0, 0, 1, 1, 0});
  const DocumentFrequencies f(corpus);
  double sum = 0;
  for (TopicId t = 0; t < 2; ++t) {
    std::vector<WordId> ids;
    for (const auto& w : top_words(m, corpus.vocabulary(), t, 3)) ids.push_back(w.id);
    sum += topic_coherence(ids, f, 1e-12);
  }
  CHECK(average_model_coherence(m, corpus, 3, 1e-12) == doctest::Approx(sum / 2).epsilon(1e-15));

  const auto single = model_by_word(corpus, 1, {0, 0, 0, 0, 0});
  std::vector<WordId> ids;
  for (const auto& w : top_words(single, corpus.vocabulary(), 0, 4)) ids.push_back(w.id);
  CHECK(average_model_coherence(single, corpus, 4, 1e-12) == topic_coherence(ids, f, 1e-12));
}

TEST_CASE("top words rank by count, ties lexicographic") {
  const auto corpus = oracle::make_corpus({{"b", "a", "c", "c"}, {"a", "d"}});
  const auto m = model_by_word(corpus, 2, {0, 0, 0, 1});  // b, a, c -> 0; d -> 1
  const auto top = top_words(m, corpus.vocabulary(), 0, 3);
  REQUIRE(top.size() == 3);
  CHECK(top[0].word == "a");  // 2, wins the tie with c by name
  CHECK(top[1].word == "c");
  CHECK(top[2].word == "b");
  CHECK(top[0].weight == doctest::Approx((0.01 + 2) / (0.01 * 4 + 5)));
  CHECK(top_words(m, corpus.vocabulary(), 1, 99).size() == 4);
}

TEST_CASE("exclusivity") {
  const auto corpus = oracle::make_corpus({{"a", "b"}, {"a", "c"}});
  const auto single = model_by_word(corpus, 1, {0, 0, 0});
  CHECK(exclusivity(single, corpus.vocabulary(), 0, 3) == doctest::Approx(1.0).epsilon(1e-15));

  // two topics with identical counts: every word splits evenly
  const auto twin_corpus = oracle::make_corpus({{"a", "b"}, {"a", "b"}});
  TopicModel twin(twin_corpus, Hyperparameters::symmetric(2, 0.1, 0.01));
  twin.set_assignments(twin_corpus, std::vector<TopicId>{0, 0, 1, 1});
  CHECK(exclusivity(twin, twin_corpus.vocabulary(), 0, 2) == doctest::Approx(0.5).epsilon(1e-15));

  const auto m = model_by_word(corpus, 2, {0, 0, 1});
  // hand computation, beta = 0.01, V = 3; topic 0 has a(2), b(1); topic 1 has c(1)
  const double d0 = 0.03 + 3, d1 = 0.03 + 1;
  const double ea = ((2.01 / d0) / (2.01 / d0 + 0.01 / d1));
  const double eb = ((1.01 / d0) / (1.01 / d0 + 0.01 / d1));
  const std::vector<WordId> ab{0, 1};
  CHECK(std::abs(exclusivity(m, 0, ab) - (ea + eb) / 2) <= 1e-12);
}

TEST_CASE("document entropy") {
  const auto one_doc = oracle::make_corpus({{"a", "a", "a"}, {"b"}});
  const auto m1 = model_by_word(one_doc, 2, {0, 1});
  CHECK(document_entropy(m1, 0) == 0.0);

  std::vector<std::vector<std::string>> eight(8, {"x"});
  const auto uni = oracle::make_corpus(eight);
  CHECK(document_entropy(model_by_word(uni, 1, {0}), 0) == doctest::Approx(std::log(8.0)).epsilon(1e-14));

  const auto toy = oracle::make_corpus({{"a", "a", "a"}, {"a"}, {"a", "a", "a", "a"}});
  CHECK(document_entropy(model_by_word(toy, 1, {0}), 0) == doctest::Approx(0.9743147528693494).epsilon(1e-14));

  const auto idle = model_by_word(toy, 2, {0});
  CHECK(document_entropy(idle, 1) == 0.0);
}

TEST_CASE("topic reports") {
  const auto corpus = oracle::make_corpus({{"aa", "b", "ccc"}, {"aa", "dddd"}, {"ccc", "dddd", "b"}});
  const auto m = model_by_word(corpus, 2, {0, 1, 0, 1});
  const auto reports = topic_reports(m, corpus, 2, 1e-12);
  REQUIRE(reports.size() == 2);
  std::int64_t tokens = 0;
  for (const auto& r : reports) tokens += r.tokens;
  CHECK(tokens == static_cast<std::int64_t>(corpus.total_tokens()));
  CHECK(reports[0].avg_word_length == doctest::Approx(2.5));  // aa, ccc
  CHECK(reports[1].avg_word_length == doctest::Approx(2.5));  // dddd, b
}

TEST_CASE("confidence stats") {
  const std::vector<DocTopicRow> one{{"a", {0.3, 0.7}, 1}};
  const auto s1 = confidence_stats(one);
  CHECK(s1[0].min == s1[0].max);
  CHECK(s1[0].mean == s1[0].min);
  CHECK(s1[0].std == 0.0);
  const std::vector<DocTopicRow> two{{"a", {0.2, 0.8}, 1}, {"b", {0.4, 0.6}, 1}};
  const auto s2 = confidence_stats(two);
  CHECK(s2[0].mean == doctest::Approx(0.3));
  CHECK(s2[0].std == doctest::Approx(0.1));
  CHECK(s2[1].min == 0.6);
  CHECK(s2[1].max == 0.8);
  CHECK_THROWS_AS(confidence_stats(std::vector<DocTopicRow>{}), UsageError);
}

TEST_CASE("confidence histogram") {
  const std::vector<DocTopicRow> row{{"117", {0.739, 0.261}, 0}};
  const auto h = confidence_histogram(row, 0, 0.1, 2);
  CHECK(h.num_bins() == 10);
  CHECK(h.counts[7][0] == 1);
  CHECK(h.bin_lo(7) == doctest::Approx(0.7));
  CHECK(h.bin_hi(9) == 1.0);

  const std::vector<DocTopicRow> edges{{"a", {0.7, 0.3}, 0}, {"b", {1.0, 0.0}, 0}, {"c", {0.0, 1.0}, 1}};
  const auto he = confidence_histogram(edges, 0, 0.1, 2);
  CHECK(he.counts[7][0] == 1);
  CHECK(he.counts[9][0] == 1);
  CHECK(he.counts[0][1] == 1);

  const auto empty = confidence_histogram(std::vector<DocTopicRow>{}, 0, 0.25, 3);
  CHECK(empty.num_bins() == 4);
  for (const auto& bin : empty.counts)
    for (auto c : bin) CHECK(c == 0);

  std::mt19937_64 gen(32);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<DocTopicRow> many;
  for (int i = 0; i < 500; ++i) {
    const double p = u(gen);
    many.push_back(make_doc_topic_row(std::to_string(i), {p, 1 - p}));
  }
  const auto hm = confidence_histogram(many, 1, 0.07, 2);
  std::uint64_t total = 0;
  for (const auto& bin : hm.counts)
    for (auto c : bin) total += c;
  CHECK(total == 500);
  CHECK_THROWS_AS(confidence_histogram(many, 0, 0.0, 2), UsageError);
  CHECK_THROWS_AS(confidence_histogram(many, 2, 0.1, 2), UsageError);
}

TEST_CASE("topic counts") {
  const std::vector<DocTopicRow> rows{{"a", {0.9, 0.1}, 0}, {"b", {0.2, 0.8}, 1}, {"c", {0.6, 0.4}, 0}};
  CHECK(topic_counts(rows, 2) == std::vector<std::uint64_t>{2, 1});
}
