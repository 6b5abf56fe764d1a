#include <doctest.h>

#include <random>
#include <sstream>

#include "ldakit/checkpoint.hpp"
#include "ldakit/sampler.hpp"
#include "oracle.hpp"

using namespace ldakit;

namespace {
std::string saved(const Corpus& c, const TopicModel& m, std::uint32_t sweep) {
  std::ostringstream out;
  save_checkpoint(out, c, m, sweep);
  return out.str();
}
}  // namespace

TEST_CASE("checkpoint round trip") {
  std::mt19937_64 gen(51);
  const auto base = oracle::random_corpus(gen, 12, 9, 7);
  // carry a dropped entry through as well
  std::vector<Document> docs = base.documents();
  const Corpus corpus(docs, base.vocabulary(), {{"gone", "no tokens after preprocessing"}});
  Hyperparameters hyper{{0.25, 0.5, 0.125}, 0.02, 77, 5, 2, 1234};
  Rng rng(3);
  auto model = init_model(corpus, hyper, rng);
  sweep_sparse(corpus, model, rng);

  const auto bytes = saved(corpus, model, 42);
  std::istringstream in(bytes);
  const auto ck = load_checkpoint(in);
  CHECK(ck.sweep == 42);
  CHECK(ck.corpus.vocabulary().words() == corpus.vocabulary().words());
  REQUIRE(ck.corpus.num_documents() == corpus.num_documents());
  for (std::size_t d = 0; d < corpus.num_documents(); ++d) {
    CHECK(ck.corpus.document(d).id == corpus.document(d).id);
    CHECK(ck.corpus.document(d).tokens == corpus.document(d).tokens);
  }
  REQUIRE(ck.corpus.dropped().size() == 1);
  CHECK(ck.corpus.dropped()[0].id == "gone");
  CHECK(ck.model.hyper().alpha == hyper.alpha);
  CHECK(ck.model.hyper().beta == hyper.beta);
  CHECK(ck.model.hyper().iterations == 77);
  CHECK(ck.model.hyper().seed == 1234);
  CHECK(std::vector<TopicId>(ck.model.all_assignments().begin(), ck.model.all_assignments().end()) ==
        std::vector<TopicId>(model.all_assignments().begin(), model.all_assignments().end()));
  CHECK(oracle::counts_match(ck.corpus, ck.model));
  CHECK(saved(ck.corpus, ck.model, 42) == bytes);
}

TEST_CASE("corrupt checkpoints are rejected") {
  const auto corpus = oracle::make_corpus({{"a", "b"}, {"b", "c", "a"}});
  TopicModel model(corpus, Hyperparameters::symmetric(2, 0.5, 0.1));
  model.set_assignments(corpus, std::vector<TopicId>{0, 1, 1, 0, 1});
  const auto bytes = saved(corpus, model, 1);

  std::istringstream bad_magic("NOTACKPT" + bytes.substr(8));
  CHECK_THROWS_AS(load_checkpoint(bad_magic), DataError);
  for (std::size_t cut : {std::size_t{4}, std::size_t{20}, bytes.size() / 2, bytes.size() - 1}) {
    std::istringstream truncated(bytes.substr(0, cut));
    CHECK_THROWS_AS(load_checkpoint(truncated), DataError);
  }
  // flip the final n_wt entry so it disagrees with z
  auto tampered = bytes;
  tampered[tampered.size() - 4] ^= 0x01;
  std::istringstream t(tampered);
  CHECK_THROWS_AS(load_checkpoint(t), DataError);
  CHECK_THROWS_AS(load_checkpoint(std::filesystem::path("/nonexistent/model.ckpt")), DataError);
}
