#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ldakit/corpus.hpp"
#include "ldakit/diagnostics.hpp"
#include "ldakit/model.hpp"
#include "ldakit/sampler.hpp"

namespace ldakit {

struct SweepRow {
  std::uint32_t k = 0;
  double average_coherence = 0.0;
  double wall_time_ms = 0.0;
  std::uint64_t seed = 0;
  std::optional<std::string> error;  // set when this k failed
};

using SweepResult = std::vector<SweepRow>;

struct SweepConfig {
  std::uint32_t k_min = 2;
  std::uint32_t k_max = 50;
  // iterations, opt_interval, chains and seed are taken from here; alpha is
  // 50/k per run. beta is kept if positive, otherwise 50/V.
  Hyperparameters hyper_template;
  Engine engine = Engine::sparse;
  std::size_t top_words = kDefaultTopWords;
  double epsilon = kDefaultEpsilon;
  unsigned workers = 1;
};

// Seed used for the run with k topics.
inline std::uint64_t sweep_seed(std::uint64_t base_seed, std::uint32_t k) { return base_seed + k; }

// Trains one model per k in [k_min, k_max] and records its average
// coherence. Rows come back ordered by k. A failing k is recorded in
// SweepRow::error and the sweep moves on.
SweepResult coherence_sweep(const Corpus& corpus, const SweepConfig& config);

// k with the highest average coherence; ties go to the smallest k. Failed
// rows are ignored. Throws UsageError when nothing is left.
std::uint32_t select_k(std::span<const SweepRow> sweep);

}  // namespace ldakit
