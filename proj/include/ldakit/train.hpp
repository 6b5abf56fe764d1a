#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "ldakit/corpus.hpp"
#include "ldakit/estimate.hpp"
#include "ldakit/model.hpp"
#include "ldakit/sampler.hpp"

namespace ldakit {

struct TrainOptions {
  Engine engine = Engine::sparse;
  // Upper bound on chains run concurrently.
  unsigned workers = 1;
  // Called after every sweep (and any alpha update) of every chain. With
  // workers > 1 it may be invoked from several threads.
  std::function<void(std::uint32_t chain, std::uint32_t sweep, const TopicModel&)> on_sweep;
};

struct TrainResult {
  TopicModel model;               // final state of chain 0
  std::vector<DocTopicRow> rows;  // one per corpus document
  BucketHits hits;                // summed over chains
};

// Runs hyper.chains independent chains of hyper.iterations sweeps. Chain c
// draws from Rng(derive_seed(hyper.seed, c)): first the initial topics, then
// one uniform per token per sweep. Every opt_interval sweeps alpha gets one
// fixed-point update. Rows average the per-chain theta estimates and are
// renormalised.
TrainResult train(const Corpus& corpus, const Hyperparameters& hyper, const TrainOptions& options = {});

}  // namespace ldakit
