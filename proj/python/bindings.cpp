#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include <spdlog/spdlog.h>

#include "ldakit/checkpoint.hpp"
#include "ldakit/cli.hpp"
#include "ldakit/corpus.hpp"
#include "ldakit/diagnostics.hpp"
#include "ldakit/estimate.hpp"
#include "ldakit/generator.hpp"
#include "ldakit/ingest.hpp"
#include "ldakit/retrieval.hpp"
#include "ldakit/selection.hpp"
#include "ldakit/stopwords.hpp"
#include "ldakit/text.hpp"
#include "ldakit/train.hpp"

namespace py = pybind11;
using namespace ldakit;

namespace {

PipelineOptions pipeline(std::optional<WordSet> stopwords, bool stemming, std::optional<WordSet> dictionary) {
  PipelineOptions opts;
  opts.stopwords = stopwords ? std::move(*stopwords) : default_stoplist();
  opts.stemming = stemming;
  opts.dictionary = std::move(dictionary);
  return opts;
}

Engine parse_engine(const std::string& name) {
  if (name == "sparse") return Engine::sparse;
  if (name == "naive") return Engine::naive;
  throw UsageError("engine must be 'sparse' or 'naive', got '" + name + "'");
}

std::vector<WordId> word_ids(const Corpus& corpus, const std::vector<std::string>& words) {
  std::vector<WordId> ids;
  for (const auto& w : words) {
    const auto id = corpus.vocabulary().find(w);
    if (!id) throw UsageError("word not in vocabulary: " + w);
    ids.push_back(*id);
  }
  return ids;
}

std::vector<std::string> document_words(const Corpus& corpus, std::size_t d) {
  std::vector<std::string> out;
  for (auto w : corpus.document(d).tokens) out.push_back(corpus.vocabulary().word(w));
  return out;
}

void check_doc(const Corpus& corpus, std::size_t d) {
  if (d >= corpus.num_documents()) throw py::index_error("document index out of range");
}

// Owns the corpus and model the scorer was built from.
struct Scorer {
  Corpus corpus;
  TopicModel model;
  LdaScorer scorer;
  Scorer(Corpus c, TopicModel m, RetrievalConfig cfg)
      : corpus(std::move(c)), model(std::move(m)), scorer(corpus, model, cfg) {}

  QueryTerms encode(const std::vector<std::string>& tokens) const { return encode_tokens(corpus.vocabulary(), tokens); }
};

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Gibbs-sampled LDA for short texts";

  py::register_exception<DataError>(m, "DataError", PyExc_RuntimeError);
  py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);

  m.def(
      "set_log_level",
      [](const std::string& level) {
        const auto lvl = spdlog::level::from_str(level);
        if (lvl == spdlog::level::off && level != "off") throw UsageError("unknown log level: " + level);
        spdlog::set_level(lvl);
      },
      py::arg("level"));

  // text
  m.def("clean_text", [](const std::string& s) { return clean_text(s); });
  m.def("tokenize", [](const std::string& s) { return tokenize(s); });
  m.def("stem", [](const std::string& s) { return stem(s); });
  m.def("default_stoplist", [] { return default_stoplist(); });
  m.def(
      "preprocess",
      [](const std::string& text, std::optional<WordSet> stopwords, bool stemming, std::optional<WordSet> dictionary) {
        return preprocess(text, pipeline(std::move(stopwords), stemming, std::move(dictionary)));
      },
      py::arg("text"), py::arg("stopwords") = py::none(), py::arg("stemming") = true,
      py::arg("dictionary") = py::none());

  // corpus
  py::class_<Corpus>(m, "Corpus")
      .def_property_readonly("num_documents", &Corpus::num_documents)
      .def_property_readonly("vocabulary_size", &Corpus::vocabulary_size)
      .def_property_readonly("total_tokens", &Corpus::total_tokens)
      .def_property_readonly("vocabulary", [](const Corpus& c) { return c.vocabulary().words(); })
      .def_property_readonly("document_ids",
                             [](const Corpus& c) {
                               std::vector<std::string> ids;
                               for (const auto& d : c.documents()) ids.push_back(d.id);
                               return ids;
                             })
      .def_property_readonly("dropped",
                             [](const Corpus& c) {
                               std::vector<std::pair<std::string, std::string>> out;
                               for (const auto& d : c.dropped()) out.emplace_back(d.id, d.reason);
                               return out;
                             })
      .def("document", [](const Corpus& c, std::size_t d) {
        check_doc(c, d);
        return document_words(c, d);
      })
      .def("__len__", &Corpus::num_documents);

  m.def(
      "build_corpus",
      [](const std::vector<std::pair<std::string, std::string>>& docs, std::optional<WordSet> stopwords, bool stemming,
         std::optional<WordSet> dictionary) {
        std::vector<RawDocument> raw;
        for (const auto& [id, text] : docs) raw.push_back({id, text});
        return build_corpus(raw, pipeline(std::move(stopwords), stemming, std::move(dictionary)));
      },
      py::arg("documents"), py::arg("stopwords") = py::none(), py::arg("stemming") = true,
      py::arg("dictionary") = py::none());

  m.def(
      "read_documents",
      [](const std::filesystem::path& path, const std::string& format, const std::string& id_col,
         const std::string& text_col) {
        InputFormat f;
        if (format == "csv") f = InputFormat::csv;
        else if (format == "jsonl") f = InputFormat::jsonl;
        else throw UsageError("format must be 'csv' or 'jsonl'");
        auto res = read_documents(path, f, ColumnNames{id_col, text_col});
        std::vector<std::pair<std::string, std::string>> docs;
        for (auto& d : res.documents) docs.emplace_back(std::move(d.id), std::move(d.text));
        std::vector<std::pair<std::size_t, std::string>> errors;
        for (auto& e : res.errors) errors.emplace_back(e.line, std::move(e.message));
        return py::make_tuple(docs, errors);
      },
      py::arg("path"), py::arg("format") = "csv", py::arg("id_col") = "id", py::arg("text_col") = "text");

  // model
  py::class_<Hyperparameters>(m, "Hyperparameters")
      .def(py::init<>())
      .def_readwrite("alpha", &Hyperparameters::alpha)
      .def_readwrite("beta", &Hyperparameters::beta)
      .def_readwrite("iterations", &Hyperparameters::iterations)
      .def_readwrite("opt_interval", &Hyperparameters::opt_interval)
      .def_readwrite("chains", &Hyperparameters::chains)
      .def_readwrite("seed", &Hyperparameters::seed)
      .def_property_readonly("k", &Hyperparameters::k)
      .def("validate", &Hyperparameters::validate)
      .def_static("defaults_for", &Hyperparameters::defaults_for, py::arg("k"), py::arg("vocabulary_size"))
      .def_static("symmetric", &Hyperparameters::symmetric, py::arg("k"), py::arg("alpha"), py::arg("beta"));

  py::class_<TopicModel>(m, "TopicModel")
      .def_property_readonly("num_topics", &TopicModel::num_topics)
      .def_property_readonly("num_documents", &TopicModel::num_documents)
      .def_property_readonly("vocabulary_size", &TopicModel::vocabulary_size)
      .def_property_readonly("hyper", &TopicModel::hyper)
      .def("theta",
           [](const TopicModel& mod, std::size_t d) {
             if (d >= mod.num_documents()) throw py::index_error("document index out of range");
             return estimate_theta(mod, d);
           })
      .def("phi",
           [](const TopicModel& mod, TopicId t) {
             if (t >= mod.num_topics()) throw py::index_error("topic index out of range");
             return estimate_phi(mod, t);
           })
      .def("assignments",
           [](const TopicModel& mod, std::size_t d) {
             if (d >= mod.num_documents()) throw py::index_error("document index out of range");
             auto z = mod.assignments(d);
             return std::vector<TopicId>(z.begin(), z.end());
           })
      .def("counts_consistent", &TopicModel::counts_consistent);

  py::class_<DocTopicRow>(m, "DocTopicRow")
      .def_readonly("doc_id", &DocTopicRow::doc_id)
      .def_readonly("confidences", &DocTopicRow::confidences)
      .def_readonly("prediction", &DocTopicRow::prediction);

  py::class_<BucketHits>(m, "BucketHits")
      .def_readonly("smoothing", &BucketHits::smoothing)
      .def_readonly("document", &BucketHits::document)
      .def_readonly("topic_word", &BucketHits::topic_word);

  py::class_<TrainResult>(m, "TrainResult")
      .def_readonly("model", &TrainResult::model)
      .def_readonly("rows", &TrainResult::rows)
      .def_readonly("hits", &TrainResult::hits);

  m.def(
      "train",
      [](const Corpus& corpus, const Hyperparameters& hyper, const std::string& engine, unsigned workers) {
        TrainOptions opts;
        opts.engine = parse_engine(engine);
        opts.workers = workers;
        py::gil_scoped_release nogil;
        return train(corpus, hyper, opts);
      },
      py::arg("corpus"), py::arg("hyper"), py::arg("engine") = "sparse", py::arg("workers") = 1);

  // diagnostics
  m.def(
      "top_words",
      [](const TopicModel& mod, const Corpus& corpus, TopicId t, std::size_t n) {
        if (t >= mod.num_topics()) throw py::index_error("topic index out of range");
        std::vector<py::tuple> out;
        for (const auto& w : top_words(mod, corpus.vocabulary(), t, n)) out.push_back(py::make_tuple(w.word, w.count, w.weight));
        return out;
      },
      py::arg("model"), py::arg("corpus"), py::arg("topic"), py::arg("n") = kDefaultTopWords);
  m.def(
      "topic_coherence",
      [](const Corpus& corpus, const std::vector<std::string>& words, double epsilon) {
        const DocumentFrequencies f(corpus);
        return topic_coherence(word_ids(corpus, words), f, epsilon);
      },
      py::arg("corpus"), py::arg("words"), py::arg("epsilon") = kDefaultEpsilon);
  m.def("mean_coherence", [](const std::vector<double>& v) { return mean_coherence(v); });
  m.def(
      "average_model_coherence",
      [](const TopicModel& mod, const Corpus& corpus, std::size_t top_n, double epsilon) {
        return average_model_coherence(mod, corpus, top_n, epsilon);
      },
      py::arg("model"), py::arg("corpus"), py::arg("top_n") = kDefaultTopWords, py::arg("epsilon") = kDefaultEpsilon);
  m.def(
      "exclusivity",
      [](const TopicModel& mod, const Corpus& corpus, TopicId t, std::size_t top_n) {
        return exclusivity(mod, corpus.vocabulary(), t, top_n);
      },
      py::arg("model"), py::arg("corpus"), py::arg("topic"), py::arg("top_n") = kDefaultTopWords);
  m.def("document_entropy", &document_entropy, py::arg("model"), py::arg("topic"));

  // selection
  py::class_<SweepRow>(m, "SweepRow")
      .def(py::init([](std::uint32_t k, double coherence) {
             SweepRow r;
             r.k = k;
             r.average_coherence = coherence;
             return r;
           }),
           py::arg("k"), py::arg("average_coherence"))
      .def_readonly("k", &SweepRow::k)
      .def_readonly("average_coherence", &SweepRow::average_coherence)
      .def_readonly("wall_time_ms", &SweepRow::wall_time_ms)
      .def_readonly("seed", &SweepRow::seed)
      .def_readonly("error", &SweepRow::error);

  m.def(
      "coherence_sweep",
      [](const Corpus& corpus, std::uint32_t k_min, std::uint32_t k_max, std::uint32_t iterations,
         std::uint32_t opt_interval, std::uint32_t chains, std::uint64_t seed, double beta, const std::string& engine,
         std::size_t top_words, double epsilon, unsigned workers) {
        SweepConfig cfg;
        cfg.k_min = k_min;
        cfg.k_max = k_max;
        cfg.hyper_template.iterations = iterations;
        cfg.hyper_template.opt_interval = opt_interval;
        cfg.hyper_template.chains = chains;
        cfg.hyper_template.seed = seed;
        cfg.hyper_template.beta = beta;
        cfg.engine = parse_engine(engine);
        cfg.top_words = top_words;
        cfg.epsilon = epsilon;
        cfg.workers = workers;
        py::gil_scoped_release nogil;
        return coherence_sweep(corpus, cfg);
      },
      py::arg("corpus"), py::arg("k_min") = 2, py::arg("k_max") = 50, py::arg("iterations") = 1000,
      py::arg("opt_interval") = 10, py::arg("chains") = 1, py::arg("seed") = 0, py::arg("beta") = 0.0,
      py::arg("engine") = "sparse", py::arg("top_words") = kDefaultTopWords, py::arg("epsilon") = kDefaultEpsilon,
      py::arg("workers") = 1);
  m.def("select_k", [](const std::vector<SweepRow>& rows) { return select_k(rows); });

  // retrieval
  py::class_<Scorer>(m, "Scorer")
      .def(py::init([](const Corpus& c, const TopicModel& mod, double mu, double lambda) {
             if (c.num_documents() != mod.num_documents() || c.vocabulary_size() != mod.vocabulary_size())
               throw UsageError("model does not belong to this corpus");
             RetrievalConfig cfg{mu, lambda};
             cfg.validate();
             return std::make_unique<Scorer>(c, mod, cfg);
           }),
           py::arg("corpus"), py::arg("model"), py::arg("mu") = 1000.0, py::arg("lambda_") = 0.7)
      .def(
          "score",
          [](const Scorer& s, const std::vector<std::string>& tokens, std::size_t d) {
            check_doc(s.corpus, d);
            return s.scorer.score(s.encode(tokens), d);
          },
          py::arg("tokens"), py::arg("doc"))
      .def(
          "rank",
          [](const Scorer& s, const std::vector<std::string>& tokens) {
            std::vector<std::pair<std::string, double>> out;
            for (const auto& r : s.scorer.rank(s.encode(tokens))) out.emplace_back(s.corpus.document(r.doc).id, r.score);
            return out;
          },
          py::arg("tokens"));

  // generator
  py::class_<PlantedCorpus>(m, "PlantedCorpus")
      .def_readonly("corpus", &PlantedCorpus::corpus)
      .def_readonly("theta", &PlantedCorpus::theta)
      .def_readonly("phi", &PlantedCorpus::phi);
  m.def(
      "generate_corpus",
      [](std::uint32_t k, std::uint32_t vocabulary_size, std::uint32_t num_documents, std::uint32_t doc_length,
         double alpha, double beta, std::uint64_t seed) {
        return generate_corpus(GeneratorConfig{k, vocabulary_size, num_documents, doc_length, alpha, beta, seed});
      },
      py::arg("k") = 3, py::arg("vocabulary_size") = 60, py::arg("num_documents") = 300, py::arg("doc_length") = 40,
      py::arg("alpha") = 0.5, py::arg("beta") = 0.05, py::arg("seed") = 0);

  // checkpoints
  m.def(
      "save_checkpoint",
      [](const std::filesystem::path& path, const Corpus& corpus, const TopicModel& mod, std::uint32_t sweep) {
        save_checkpoint(path, corpus, mod, sweep);
      },
      py::arg("path"), py::arg("corpus"), py::arg("model"), py::arg("sweep") = 0);
  m.def("load_checkpoint", [](const std::filesystem::path& path) {
    auto ck = load_checkpoint(path);
    return py::make_tuple(std::move(ck.corpus), std::move(ck.model), ck.sweep);
  });

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release nogil;
          code = cli::run(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
