#include "ldakit/train.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <optional>
#include <thread>

#include "ldakit/hyperopt.hpp"

namespace ldakit {
namespace {

struct ChainOutput {
  std::optional<TopicModel> model;
  BucketHits hits;
};

ChainOutput run_chain(const Corpus& corpus, const Hyperparameters& hyper, const TrainOptions& options,
                      std::uint32_t chain) {
  Rng rng(derive_seed(hyper.seed, chain));
  ChainOutput out;
  out.model = init_model(corpus, hyper, rng);
  TopicModel& model = *out.model;

  auto after_sweep = [&](std::uint32_t sweep) -> bool {
    bool alpha_changed = false;
    if (hyper.opt_interval > 0 && sweep % hyper.opt_interval == 0) alpha_changed = optimize_alpha(model);
    if (options.on_sweep) options.on_sweep(chain, sweep, model);
    return alpha_changed;
  };

  if (options.engine == Engine::sparse) {
    SparseSampler sampler(corpus, model);
    for (std::uint32_t sweep = 1; sweep <= hyper.iterations; ++sweep) {
      sampler.sweep(rng);
      if (after_sweep(sweep)) sampler.refresh();
    }
    out.hits = sampler.hits();
  } else {
    NaiveSampler sampler(corpus, model);
    for (std::uint32_t sweep = 1; sweep <= hyper.iterations; ++sweep) {
      sampler.sweep(rng);
      after_sweep(sweep);
    }
    out.hits = sampler.hits();
  }
  return out;
}

}  // namespace

TrainResult train(const Corpus& corpus, const Hyperparameters& hyper, const TrainOptions& options) {
  hyper.validate();
  if (corpus.empty()) throw DataError("cannot train on an empty corpus");

  const std::uint32_t chains = hyper.chains;
  std::vector<ChainOutput> outputs(chains);
  std::vector<std::exception_ptr> errors(chains);
  const unsigned workers = std::clamp<unsigned>(options.workers, 1, chains);

  if (workers == 1) {
    for (std::uint32_t c = 0; c < chains; ++c) outputs[c] = run_chain(corpus, hyper, options, c);
  } else {
    std::atomic<std::uint32_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < workers; ++i) {
      pool.emplace_back([&] {
        for (std::uint32_t c = next++; c < chains; c = next++) {
          try {
            outputs[c] = run_chain(corpus, hyper, options, c);
          } catch (...) {
            errors[c] = std::current_exception();
          }
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  TrainResult result;
  const auto k = hyper.k();
  result.rows.reserve(corpus.num_documents());
  for (std::size_t d = 0; d < corpus.num_documents(); ++d) {
    std::vector<double> mean(k, 0.0);
    for (const auto& out : outputs) {
      const auto theta = estimate_theta(*out.model, d);
      for (TopicId t = 0; t < k; ++t) mean[t] += theta[t];
    }
    for (auto& x : mean) x /= chains;
    result.rows.push_back(make_doc_topic_row(corpus.document(d).id, std::move(mean)));
  }
  for (const auto& out : outputs) result.hits += out.hits;
  result.model = std::move(*outputs.front().model);
  return result;
}

}  // namespace ldakit
