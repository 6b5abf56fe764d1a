#include <doctest.h>

#include <cmath>
#include <random>

#include "ldakit/selection.hpp"
#include "oracle.hpp"

using namespace ldakit;

namespace {
SweepResult rows_from(std::uint32_t k0, const std::vector<double>& values) {
  SweepResult rows;
  for (std::size_t i = 0; i < values.size(); ++i) rows.push_back({static_cast<std::uint32_t>(k0 + i), values[i], 0, 0, {}});
  return rows;
}
}  // namespace

TEST_CASE("select_k picks the maximum and breaks ties toward small k") {
  CHECK(select_k(rows_from(2, {-3.0, -1.0, -2.0})) == 3);
  CHECK(select_k(rows_from(2, {-1.0, -5.0, -1.0})) == 2);
  auto rows = rows_from(2, {-1.0, -2.0});
  rows[0].error = "boom";
  rows[0].average_coherence = std::nan("");
  CHECK(select_k(rows) == 3);
  rows[1].error = "boom";
  CHECK_THROWS_AS(select_k(rows), UsageError);
  CHECK_THROWS_AS(select_k(SweepResult{}), UsageError);
}

TEST_CASE("sweep seeds") {
  CHECK(sweep_seed(100, 2) == 102);
  CHECK(sweep_seed(100, 50) == 150);
}

TEST_CASE("coherence sweep on a small corpus") {
  std::mt19937_64 gen(41);
  const auto corpus = oracle::random_corpus(gen, 30, 25, 12);
  SweepConfig cfg;
  cfg.k_min = 2;
  cfg.k_max = 5;
  cfg.hyper_template.iterations = 20;
  cfg.hyper_template.seed = 9;
  cfg.hyper_template.beta = 0.0;
  const auto rows = coherence_sweep(corpus, cfg);
  REQUIRE(rows.size() == 4);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].k == 2 + i);
    CHECK(rows[i].seed == 9 + 2 + i);
    CHECK_FALSE(rows[i].error.has_value());
    CHECK(std::isfinite(rows[i].average_coherence));
    CHECK(rows[i].average_coherence <= 1e-9);
  }
  cfg.workers = 3;
  const auto parallel = coherence_sweep(corpus, cfg);
  for (std::size_t i = 0; i < rows.size(); ++i) CHECK(parallel[i].average_coherence == rows[i].average_coherence);

  cfg.k_min = 6;
  CHECK_THROWS_AS(coherence_sweep(corpus, cfg), UsageError);
  cfg.k_min = 2;
  CHECK_THROWS_AS(coherence_sweep(Corpus{}, cfg), DataError);
}

TEST_CASE("a failing k is recorded and the sweep continues") {
  const auto corpus = oracle::make_corpus({{"a", "b"}, {"b", "c"}});
  SweepConfig cfg;
  cfg.k_min = 1;
  cfg.k_max = 2;
  cfg.hyper_template.iterations = 0;  // rejected by validation for every k
  const auto rows = coherence_sweep(corpus, cfg);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].error.has_value());
  CHECK(std::isnan(rows[1].average_coherence));
}
