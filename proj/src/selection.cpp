#include "ldakit/selection.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>

#include <spdlog/spdlog.h>

#include "ldakit/train.hpp"

namespace ldakit {
namespace {

SweepRow run_one(const Corpus& corpus, const DocumentFrequencies& frequencies, const SweepConfig& config,
                 std::uint32_t k) {
  SweepRow row;
  row.k = k;
  row.seed = sweep_seed(config.hyper_template.seed, k);
  const auto start = std::chrono::steady_clock::now();
  try {
    Hyperparameters hyper = config.hyper_template;
    hyper.alpha.assign(k, 50.0 / k);
    if (!(hyper.beta > 0.0)) hyper.beta = 50.0 / static_cast<double>(corpus.vocabulary_size());
    hyper.seed = row.seed;
    TrainOptions options;
    options.engine = config.engine;
    const auto result = train(corpus, hyper, options);
    row.average_coherence =
        average_model_coherence(result.model, corpus, frequencies, config.top_words, config.epsilon);
  } catch (const std::exception& e) {
    row.error = e.what();
    row.average_coherence = std::nan("");
    spdlog::warn("sweep: k={} failed: {}", k, e.what());
  }
  row.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return row;
}

}  // namespace

SweepResult coherence_sweep(const Corpus& corpus, const SweepConfig& config) {
  if (config.k_min < 1 || config.k_min > config.k_max) throw UsageError("need 1 <= k_min <= k_max");
  if (corpus.empty()) throw DataError("cannot sweep an empty corpus");
  const DocumentFrequencies frequencies(corpus);
  const std::uint32_t count = config.k_max - config.k_min + 1;
  SweepResult rows(count);
  const unsigned workers = std::clamp<unsigned>(config.workers, 1, count);

  if (workers == 1) {
    for (std::uint32_t i = 0; i < count; ++i) rows[i] = run_one(corpus, frequencies, config, config.k_min + i);
    return rows;
  }
  std::atomic<std::uint32_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::uint32_t i = next++; i < count; i = next++) rows[i] = run_one(corpus, frequencies, config, config.k_min + i);
    });
  }
  for (auto& th : pool) th.join();
  return rows;
}

std::uint32_t select_k(std::span<const SweepRow> sweep) {
  const SweepRow* best = nullptr;
  for (const auto& row : sweep) {
    if (row.error || !std::isfinite(row.average_coherence)) continue;
    if (!best || row.average_coherence > best->average_coherence ||
        (row.average_coherence == best->average_coherence && row.k < best->k)) {
      best = &row;
    }
  }
  if (!best) throw UsageError("select_k needs at least one successful sweep row");
  return best->k;
}

}  // namespace ldakit
