#include "ldakit/cli.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "ldakit/checkpoint.hpp"
#include "ldakit/common.hpp"
#include "ldakit/corpus.hpp"
#include "ldakit/diagnostics.hpp"
#include "ldakit/generator.hpp"
#include "ldakit/ingest.hpp"
#include "ldakit/report.hpp"
#include "ldakit/retrieval.hpp"
#include "ldakit/selection.hpp"
#include "ldakit/stopwords.hpp"
#include "ldakit/train.hpp"

namespace fs = std::filesystem;

namespace ldakit::cli {
namespace {

// Thrown for missing files and bad flag combinations; maps to exit 2.
struct UsageFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  // input
  fs::path input;
  std::string format = "csv";
  std::string id_col = "id";
  std::string text_col = "text";
  fs::path stopwords;
  fs::path dictionary;
  bool no_stem = false;
  // model
  std::uint32_t k = 0;
  std::uint32_t k_min = 2;
  std::uint32_t k_max = 50;
  std::uint32_t iterations = 1000;
  std::uint32_t opt_interval = 10;
  std::uint32_t chains = 1;
  std::string engine = "sparse";
  std::uint64_t seed = 0;
  double alpha = 0.0;  // 0 -> 50/k
  double beta = 0.0;   // 0 -> 50/V
  unsigned workers = 1;
  // diagnostics
  std::size_t top_words = kDefaultTopWords;
  double epsilon = kDefaultEpsilon;
  double bin_width = 0.1;
  // retrieval
  fs::path model;
  fs::path queries;
  double mu = 1000.0;
  double lambda = 0.7;
  // generator
  std::uint32_t vocab_size = 60;
  std::uint32_t docs = 300;
  std::uint32_t doc_length = 40;

  fs::path out_dir = ".";
  std::string log_level = "info";
};

std::string env_name(const std::string& flag) {
  std::string name = kEnvPrefix;
  for (char c : flag) name.push_back(c == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  return name;
}

template <typename T>
CLI::Option* add(CLI::App* app, const std::string& flag, T& value, const std::string& help) {
  return app->add_option("--" + flag, value, help)->envname(env_name(flag))->capture_default_str();
}

void add_input_flags(CLI::App* app, RunConfig& cfg) {
  add(app, "input", cfg.input, "documents file");
  add(app, "format", cfg.format, "csv or jsonl")->check(CLI::IsMember({"csv", "jsonl"}));
  add(app, "id-col", cfg.id_col, "id column / key");
  add(app, "text-col", cfg.text_col, "text column / key");
  add(app, "stopwords", cfg.stopwords, "stopword file, one word per line (default: built-in English list)");
  add(app, "dictionary", cfg.dictionary, "keep only tokens listed in this file");
  app->add_flag("--no-stem", cfg.no_stem, "skip Porter stemming")->envname(env_name("no-stem"));
}

void add_model_flags(CLI::App* app, RunConfig& cfg) {
  add(app, "iterations", cfg.iterations, "Gibbs sweeps")->check(CLI::PositiveNumber);
  add(app, "opt-interval", cfg.opt_interval, "sweeps between alpha updates, 0 = never");
  add(app, "chains", cfg.chains, "independent chains averaged for theta")->check(CLI::PositiveNumber);
  add(app, "engine", cfg.engine, "naive or sparse")->check(CLI::IsMember({"naive", "sparse"}));
  add(app, "seed", cfg.seed, "base seed");
  add(app, "beta", cfg.beta, "topic-word prior, 0 = 50/V");
  add(app, "workers", cfg.workers, "worker threads")->check(CLI::PositiveNumber);
}

void add_diagnostic_flags(CLI::App* app, RunConfig& cfg) {
  add(app, "top-words", cfg.top_words, "words per topic for coherence and reports")->check(CLI::PositiveNumber);
  add(app, "epsilon", cfg.epsilon, "coherence smoothing");
}

void add_output_flags(CLI::App* app, RunConfig& cfg) { add(app, "out-dir", cfg.out_dir, "output directory"); }

void require_file(const fs::path& path, const char* what) {
  if (path.empty()) throw UsageFailure(std::string("missing ") + what);
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) throw UsageFailure(std::string(what) + " not found: " + path.string());
}

void prepare_out_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw UsageFailure("cannot create output directory: " + dir.string());
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

void validate_input_paths(const RunConfig& cfg) {
  require_file(cfg.input, "input");
  if (!cfg.stopwords.empty()) require_file(cfg.stopwords, "stopwords file");
  if (!cfg.dictionary.empty()) require_file(cfg.dictionary, "dictionary file");
}

PipelineOptions pipeline_options(const RunConfig& cfg) {
  PipelineOptions options;
  options.stopwords = cfg.stopwords.empty() ? default_stoplist() : load_stoplist(cfg.stopwords);
  options.stemming = !cfg.no_stem;
  if (!cfg.dictionary.empty()) options.dictionary = load_stoplist(cfg.dictionary);
  return options;
}

struct LoadedCorpus {
  Corpus corpus;
  std::vector<IngestError> errors;
};

LoadedCorpus load_corpus(const RunConfig& cfg) {
  const auto format = cfg.format == "jsonl" ? InputFormat::jsonl : InputFormat::csv;
  auto ingest = read_documents(cfg.input, format, ColumnNames{cfg.id_col, cfg.text_col});
  for (const auto& e : ingest.errors) spdlog::warn("skipping line {}: {}", e.line, e.message);
  spdlog::info("read {} documents, {} malformed rows skipped", ingest.documents.size(), ingest.errors.size());
  if (ingest.documents.empty()) {
    throw DataError(ingest.errors.empty() ? "input has no documents"
                                          : "every row is malformed (" + std::to_string(ingest.errors.size()) + ")");
  }
  LoadedCorpus loaded{build_corpus(ingest.documents, pipeline_options(cfg)), std::move(ingest.errors)};
  spdlog::info("corpus: {} documents, {} dropped, vocabulary {}, {} tokens", loaded.corpus.num_documents(),
               loaded.corpus.dropped().size(), loaded.corpus.vocabulary_size(), loaded.corpus.total_tokens());
  if (loaded.corpus.empty()) throw DataError("no documents left after preprocessing");
  return loaded;
}

Engine engine_of(const RunConfig& cfg) { return cfg.engine == "naive" ? Engine::naive : Engine::sparse; }

Hyperparameters hyper_for(const RunConfig& cfg, std::uint32_t k, std::size_t vocabulary_size) {
  Hyperparameters hyper = Hyperparameters::defaults_for(k, vocabulary_size);
  if (cfg.alpha > 0.0) hyper.alpha.assign(k, cfg.alpha);
  if (cfg.beta > 0.0) hyper.beta = cfg.beta;
  hyper.iterations = cfg.iterations;
  hyper.opt_interval = cfg.opt_interval;
  hyper.chains = cfg.chains;
  hyper.seed = cfg.seed;
  hyper.validate();
  return hyper;
}

void write_model_artifacts(const RunConfig& cfg, const Corpus& corpus, const TopicModel& model,
                           std::span<const DocTopicRow> rows, std::span<const IngestError> ingest_errors) {
  const auto k = model.num_topics();
  const auto reports = topic_reports(model, corpus, cfg.top_words, cfg.epsilon);
  std::vector<ConfidenceHistogram> histograms;
  for (TopicId t = 0; t < k; ++t) histograms.push_back(confidence_histogram(rows, t, cfg.bin_width, k));

  auto out = open_out(cfg.out_dir / "assignments.csv");
  write_assignments_csv(out, rows, k);
  out = open_out(cfg.out_dir / "topics.json");
  write_topics_json(out, reports);
  out = open_out(cfg.out_dir / "diagnostics.csv");
  write_diagnostics_csv(out, reports);
  out = open_out(cfg.out_dir / "stats.csv");
  write_stats_csv(out, confidence_stats(rows));
  out = open_out(cfg.out_dir / "histogram.csv");
  write_histogram_csv(out, histograms);
  out = open_out(cfg.out_dir / "counts.csv");
  write_counts_csv(out, topic_counts(rows, k));
  out = open_out(cfg.out_dir / "dropped.csv");
  write_dropped_csv(out, corpus.dropped(), ingest_errors);
}

int cmd_preprocess(const RunConfig& cfg, std::ostream& console) {
  validate_input_paths(cfg);
  prepare_out_dir(cfg.out_dir);
  const auto loaded = load_corpus(cfg);
  const auto& corpus = loaded.corpus;
  auto out = open_out(cfg.out_dir / "preprocessed.csv");
  out << "doc_id,tokens\n";
  for (const auto& doc : corpus.documents()) {
    std::string tokens;
    for (WordId w : doc.tokens) {
      if (!tokens.empty()) tokens.push_back(' ');
      tokens += corpus.vocabulary().word(w);
    }
    out << csv_field(doc.id) << ',' << csv_field(tokens) << '\n';
  }
  out = open_out(cfg.out_dir / "dropped.csv");
  write_dropped_csv(out, corpus.dropped(), loaded.errors);
  console << "documents=" << corpus.num_documents() << " vocabulary=" << corpus.vocabulary_size()
          << " tokens=" << corpus.total_tokens() << '\n';
  return kExitOk;
}

int cmd_train(const RunConfig& cfg, std::ostream& console) {
  validate_input_paths(cfg);
  if (cfg.k == 0) throw UsageFailure("train needs --k >= 1");
  prepare_out_dir(cfg.out_dir);
  const auto loaded = load_corpus(cfg);
  const auto& corpus = loaded.corpus;
  const auto hyper = hyper_for(cfg, cfg.k, corpus.vocabulary_size());

  TrainOptions options;
  options.engine = engine_of(cfg);
  options.workers = cfg.workers;
  const auto result = train(corpus, hyper, options);

  write_model_artifacts(cfg, corpus, result.model, result.rows, loaded.errors);
  save_checkpoint(cfg.out_dir / "model.ckpt", corpus, result.model, hyper.iterations);
  if (options.engine == Engine::sparse) {
    spdlog::info("topic-word bucket share of draws: {:.4f}", result.hits.topic_word_fraction());
  }
  console << "k=" << cfg.k << " average_coherence="
          << format_float(average_model_coherence(result.model, corpus, cfg.top_words, cfg.epsilon)) << '\n';
  return kExitOk;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& console) {
  validate_input_paths(cfg);
  if (cfg.k_min < 1 || cfg.k_min > cfg.k_max) throw UsageFailure("need 1 <= --k-min <= --k-max");
  prepare_out_dir(cfg.out_dir);
  const auto loaded = load_corpus(cfg);

  SweepConfig sweep;
  sweep.k_min = cfg.k_min;
  sweep.k_max = cfg.k_max;
  sweep.hyper_template = hyper_for(cfg, 1, loaded.corpus.vocabulary_size());
  sweep.hyper_template.beta = cfg.beta;  // 0 keeps the 50/V rule per run
  sweep.engine = engine_of(cfg);
  sweep.top_words = cfg.top_words;
  sweep.epsilon = cfg.epsilon;
  sweep.workers = cfg.workers;
  const auto rows = coherence_sweep(loaded.corpus, sweep);

  auto out = open_out(cfg.out_dir / "sweep.csv");
  write_sweep_csv(out, rows);
  out = open_out(cfg.out_dir / "dropped.csv");
  write_dropped_csv(out, loaded.corpus.dropped(), loaded.errors);
  console << "select_k=" << select_k(rows) << '\n';
  return kExitOk;
}

int cmd_diagnose(const RunConfig& cfg, std::ostream& console) {
  require_file(cfg.model, "model checkpoint");
  prepare_out_dir(cfg.out_dir);
  const auto ckpt = load_checkpoint(cfg.model);
  std::vector<DocTopicRow> rows;
  rows.reserve(ckpt.corpus.num_documents());
  for (std::size_t d = 0; d < ckpt.corpus.num_documents(); ++d) {
    rows.push_back(make_doc_topic_row(ckpt.corpus.document(d).id, estimate_theta(ckpt.model, d)));
  }
  write_model_artifacts(cfg, ckpt.corpus, ckpt.model, rows, {});
  console << "k=" << ckpt.model.num_topics() << " average_coherence="
          << format_float(average_model_coherence(ckpt.model, ckpt.corpus, cfg.top_words, cfg.epsilon)) << '\n';
  return kExitOk;
}

int cmd_score(const RunConfig& cfg, std::ostream& console) {
  require_file(cfg.model, "model checkpoint");
  require_file(cfg.queries, "queries file");
  if (!cfg.stopwords.empty()) require_file(cfg.stopwords, "stopwords file");
  if (!cfg.dictionary.empty()) require_file(cfg.dictionary, "dictionary file");
  RetrievalConfig retrieval{cfg.mu, cfg.lambda};
  try {
    retrieval.validate();
  } catch (const UsageError& e) {
    throw UsageFailure(e.what());
  }
  prepare_out_dir(cfg.out_dir);

  const auto ckpt = load_checkpoint(cfg.model);
  const auto options = pipeline_options(cfg);
  const LdaScorer scorer(ckpt.corpus, ckpt.model, retrieval);

  std::ifstream in(cfg.queries);
  auto out = open_out(cfg.out_dir / "scores.tsv");
  out << "query\tdoc_id\tscore\n";
  std::string line;
  std::size_t count = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const auto tokens = preprocess(line, options);
    if (tokens.empty()) spdlog::warn("query \"{}\" has no terms after preprocessing", line);
    const auto ids = encode_tokens(ckpt.corpus.vocabulary(), tokens);
    std::string query = line;
    std::replace(query.begin(), query.end(), '\t', ' ');
    for (const auto& hit : scorer.rank(ids)) {
      out << query << '\t' << ckpt.corpus.document(hit.doc).id << '\t' << format_float(hit.score) << '\n';
    }
    ++count;
  }
  console << "queries=" << count << '\n';
  return kExitOk;
}

int cmd_generate(const RunConfig& cfg, std::ostream& console) {
  if (cfg.k == 0) throw UsageFailure("generate needs --k >= 1");
  prepare_out_dir(cfg.out_dir);
  GeneratorConfig gen;
  gen.num_topics = cfg.k;
  gen.vocabulary_size = cfg.vocab_size;
  gen.num_documents = cfg.docs;
  gen.doc_length = cfg.doc_length;
  gen.alpha = cfg.alpha > 0.0 ? cfg.alpha : gen.alpha;
  gen.beta = cfg.beta > 0.0 ? cfg.beta : gen.beta;
  gen.seed = cfg.seed;
  const auto planted = generate_corpus(gen);
  const auto& corpus = planted.corpus;
  const auto& vocab = corpus.vocabulary();

  auto text_of = [&](const Document& doc) {
    std::string text;
    for (WordId w : doc.tokens) {
      if (!text.empty()) text.push_back(' ');
      text += vocab.word(w);
    }
    return text;
  };
  if (cfg.format == "jsonl") {
    auto out = open_out(cfg.out_dir / "corpus.jsonl");
    for (const auto& doc : corpus.documents()) {
      out << nlohmann::ordered_json{{"id", doc.id}, {"text", text_of(doc)}}.dump() << '\n';
    }
  } else {
    auto out = open_out(cfg.out_dir / "corpus.csv");
    out << "id,text\n";
    for (const auto& doc : corpus.documents()) out << csv_field(doc.id) << ',' << csv_field(text_of(doc)) << '\n';
  }

  auto out = open_out(cfg.out_dir / "planted_phi.csv");
  out << "topic,word,weight\n";
  for (std::uint32_t t = 0; t < gen.num_topics; ++t) {
    for (WordId w = 0; w < vocab.size(); ++w) out << t << ',' << vocab.word(w) << ',' << format_float(planted.phi[t][w]) << '\n';
  }
  out = open_out(cfg.out_dir / "planted_theta.csv");
  out << "doc_id";
  for (std::uint32_t t = 0; t < gen.num_topics; ++t) out << ",topic_" << t;
  out << '\n';
  for (std::size_t d = 0; d < corpus.num_documents(); ++d) {
    out << corpus.document(d).id;
    for (double p : planted.theta[d]) out << ',' << format_float(p);
    out << '\n';
  }
  console << "documents=" << corpus.num_documents() << " vocabulary=" << vocab.size() << '\n';
  return kExitOk;
}

void configure_logging(const std::string& level) {
  auto logger = spdlog::get("ldakit");
  if (!logger) {
    logger = spdlog::stderr_color_mt("ldakit");
    spdlog::set_default_logger(logger);
  }
  const auto parsed = spdlog::level::from_str(level);
  if (parsed == spdlog::level::off && level != "off") throw UsageFailure("unknown log level: " + level);
  spdlog::set_level(parsed);
}

int fail(std::ostream& err, const char* kind, int code, const std::string& message) {
  err << nlohmann::ordered_json{{"error", kind}, {"exit_code", code}, {"message", message}}.dump() << '\n';
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"ldakit: LDA topic modeling toolkit"};
  app.require_subcommand(1);
  app.add_option("--log-level", cfg.log_level, "trace|debug|info|warn|error|off")
      ->envname(env_name("log-level"))
      ->capture_default_str();

  auto* preprocess = app.add_subcommand("preprocess", "clean, tokenize, filter and stem documents");
  add_input_flags(preprocess, cfg);
  add_output_flags(preprocess, cfg);

  auto* train = app.add_subcommand("train", "fit a model with k topics and write all artifacts");
  add_input_flags(train, cfg);
  add(train, "k", cfg.k, "number of topics")->required();
  add(train, "alpha", cfg.alpha, "symmetric starting alpha, 0 = 50/k");
  add_model_flags(train, cfg);
  add_diagnostic_flags(train, cfg);
  add(train, "bin-width", cfg.bin_width, "confidence histogram bin width")->check(CLI::Range(1e-6, 1.0));
  add_output_flags(train, cfg);

  auto* sweep = app.add_subcommand("sweep", "average coherence for every k in a range");
  add_input_flags(sweep, cfg);
  add(sweep, "k-min", cfg.k_min, "smallest k");
  add(sweep, "k-max", cfg.k_max, "largest k");
  add_model_flags(sweep, cfg);
  add_diagnostic_flags(sweep, cfg);
  add_output_flags(sweep, cfg);

  auto* diagnose = app.add_subcommand("diagnose", "recompute diagnostics from a checkpoint");
  add(diagnose, "model", cfg.model, "checkpoint written by train");
  add_diagnostic_flags(diagnose, cfg);
  add(diagnose, "bin-width", cfg.bin_width, "confidence histogram bin width")->check(CLI::Range(1e-6, 1.0));
  add_output_flags(diagnose, cfg);

  auto* score = app.add_subcommand("score", "rank checkpoint documents for each query line");
  add(score, "model", cfg.model, "checkpoint written by train");
  add(score, "queries", cfg.queries, "one query per line");
  add(score, "stopwords", cfg.stopwords, "stopword file used at training time");
  add(score, "dictionary", cfg.dictionary, "dictionary file used at training time");
  score->add_flag("--no-stem", cfg.no_stem, "skip Porter stemming")->envname(env_name("no-stem"));
  add(score, "mu", cfg.mu, "Dirichlet smoothing prior");
  add(score, "lambda", cfg.lambda, "weight of the smoothed document model");
  add_output_flags(score, cfg);

  auto* generate = app.add_subcommand("generate", "sample a synthetic corpus from the LDA generative process");
  add(generate, "k", cfg.k, "number of planted topics")->required();
  add(generate, "vocab-size", cfg.vocab_size, "generator vocabulary size")->check(CLI::PositiveNumber);
  add(generate, "docs", cfg.docs, "number of documents")->check(CLI::PositiveNumber);
  add(generate, "doc-length", cfg.doc_length, "tokens per document")->check(CLI::PositiveNumber);
  add(generate, "alpha", cfg.alpha, "document-topic prior, 0 = 0.5");
  add(generate, "beta", cfg.beta, "topic-word prior, 0 = 0.05");
  add(generate, "seed", cfg.seed, "seed");
  add(generate, "format", cfg.format, "csv or jsonl")->check(CLI::IsMember({"csv", "jsonl"}));
  add_output_flags(generate, cfg);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    return fail(err, "usage", kExitUsage, e.what());
  }

  try {
    configure_logging(cfg.log_level);
    if (preprocess->parsed()) return cmd_preprocess(cfg, out);
    if (train->parsed()) return cmd_train(cfg, out);
    if (sweep->parsed()) return cmd_sweep(cfg, out);
    if (diagnose->parsed()) return cmd_diagnose(cfg, out);
    if (score->parsed()) return cmd_score(cfg, out);
    return cmd_generate(cfg, out);
  } catch (const UsageFailure& e) {
    return fail(err, "usage", kExitUsage, e.what());
  } catch (const UsageError& e) {
    return fail(err, "usage", kExitUsage, e.what());
  } catch (const DataError& e) {
    return fail(err, "data", kExitData, e.what());
  } catch (const std::exception& e) {
    return fail(err, "internal", kExitInternal, e.what());
  }
}

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace ldakit::cli
