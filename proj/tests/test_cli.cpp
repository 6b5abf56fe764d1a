#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include <json.hpp>

#include "ldakit/checkpoint.hpp"
#include "ldakit/cli.hpp"
#include "oracle.hpp"

namespace fs = std::filesystem;
using ldakit::cli::run;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) {
    path = fs::temp_directory_path() / ("ldakit_cli_" + name + "_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  fs::path operator/(const std::string& f) const { return path / f; }
};

struct Result {
  int code;
  std::string out, err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  // top-level option, so it goes before the subcommand
  args.insert(args.begin(), {"--log-level", "off"});
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

void write_file(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> read_csv_rows(const fs::path& p) {
  std::vector<std::vector<std::string>> rows;
  std::ifstream in(p);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

const char* kToy =
    "id,text\n"
    "t1,\"Vaccine rollout starts today, vaccine supply is low\"\n"
    "t2,Schools closed again as lockdown continues\n"
    "t3,\"Vaccine appointments open for schools staff, lockdown eases\"\n";

const std::vector<std::string> kArtifacts{"assignments.csv", "topics.json", "diagnostics.csv", "stats.csv",
                                          "histogram.csv",   "counts.csv",  "dropped.csv",     "model.ckpt"};

}  // namespace

TEST_CASE("train writes every artifact and the rows are proper distributions") {
  TempDir dir("train");
  write_file(dir / "toy.csv", kToy);
  const auto r = invoke({"train", "--input", (dir / "toy.csv").string(), "--k", "2", "--seed", "3", "--iterations",
                         "50", "--out-dir", (dir / "out").string()});
  REQUIRE(r.code == 0);
  for (const auto& f : kArtifacts) CHECK(fs::exists(dir.path / "out" / f));

  const auto rows = read_csv_rows(dir.path / "out" / "assignments.csv");
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == std::vector<std::string>{"doc_id", "prediction", "confidence_topic_0", "confidence_topic_1"});
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double a = std::stod(rows[i][2]), b = std::stod(rows[i][3]);
    CHECK(a + b == doctest::Approx(1.0).epsilon(1e-5));  // six printed digits each
    CHECK(std::stoi(rows[i][1]) == (b > a ? 1 : 0));
  }

  const auto ck = ldakit::load_checkpoint(dir.path / "out" / "model.ckpt");
  CHECK(ck.corpus.num_documents() == 3);
  CHECK(oracle::counts_match(ck.corpus, ck.model));

  const auto topics = nlohmann::json::parse(read_file(dir.path / "out" / "topics.json"));
  CHECK(topics["topics"].size() == 2);
  CHECK(topics["topics"][0]["top_words"].size() <= 10);
}

TEST_CASE("identical runs give identical bytes") {
  TempDir dir("determinism");
  write_file(dir / "toy.csv", kToy);
  for (const char* out : {"a", "b"}) {
    REQUIRE(invoke({"train", "--input", (dir / "toy.csv").string(), "--k", "3", "--seed", "11", "--iterations",
                    "40", "--chains", "2", "--out-dir", (dir / out).string()})
                .code == 0);
  }
  for (const auto& f : kArtifacts) CHECK(read_file(dir.path / "a" / f) == read_file(dir.path / "b" / f));
}

TEST_CASE("sweep writes one row per k and prints the selection") {
  TempDir dir("sweep");
  write_file(dir / "toy.csv", kToy);
  const auto r = invoke({"sweep", "--input", (dir / "toy.csv").string(), "--k-min", "2", "--k-max", "5",
                         "--iterations", "20", "--out-dir", dir.path.string()});
  REQUIRE(r.code == 0);
  const auto rows = read_csv_rows(dir / "sweep.csv");
  REQUIRE(rows.size() == 5);
  CHECK(rows[0] == std::vector<std::string>{"k", "avg_coherence", "wall_time_ms", "seed"});
  CHECK(r.out.find("select_k=") != std::string::npos);
}

TEST_CASE("exit codes and the machine-readable error line") {
  TempDir dir("errors");
  auto r = invoke({"train", "--input", (dir / "missing.csv").string(), "--k", "2"});
  CHECK(r.code == 2);
  const auto err = nlohmann::json::parse(r.err);
  CHECK(err["error"] == "usage");
  CHECK(err["exit_code"] == 2);

  write_file(dir / "toy.csv", kToy);
  CHECK(invoke({"sweep", "--input", (dir / "toy.csv").string(), "--k-min", "5", "--k-max", "2"}).code == 2);
  CHECK(invoke({"train", "--input", (dir / "toy.csv").string()}).code == 2);  // --k is required
  CHECK(invoke({"train", "--input", (dir / "toy.csv").string(), "--k", "2", "--engine", "turbo"}).code == 2);
  CHECK(invoke({"score", "--model", (dir / "nope.ckpt").string(), "--queries", (dir / "toy.csv").string()}).code == 2);

  write_file(dir / "bad.csv", "id,text\n1,\"never closed\n");
  r = invoke({"train", "--input", (dir / "bad.csv").string(), "--k", "2", "--out-dir", (dir / "o").string()});
  CHECK(r.code == 3);
  CHECK(nlohmann::json::parse(r.err)["error"] == "data");

  write_file(dir / "nocol.csv", "id,body\n1,hello\n");
  CHECK(invoke({"train", "--input", (dir / "nocol.csv").string(), "--k", "2", "--out-dir", (dir / "o").string()}).code ==
        3);

  write_file(dir / "notckpt", "garbage");
  write_file(dir / "q.txt", "vaccine\n");
  CHECK(invoke({"score", "--model", (dir / "notckpt").string(), "--queries", (dir / "q.txt").string(), "--out-dir",
                (dir / "o").string()})
            .code == 3);
}

TEST_CASE("malformed rows are skipped and logged") {
  TempDir dir("malformed");
  write_file(dir / "mixed.csv", std::string(kToy) + ",no id\nt4\nt5,\"unterminated\n");
  const auto r = invoke({"train", "--input", (dir / "mixed.csv").string(), "--k", "2", "--iterations", "10",
                         "--out-dir", dir.path.string()});
  REQUIRE(r.code == 0);
  CHECK(read_csv_rows(dir / "assignments.csv").size() == 4);
  CHECK(read_csv_rows(dir / "dropped.csv").size() == 4);
}

TEST_CASE("environment variables fill unset flags") {
  TempDir dir("env");
  write_file(dir / "toy.csv", kToy);
  ::setenv("LDAKIT_K", "3", 1);
  const auto r = invoke({"train", "--input", (dir / "toy.csv").string(), "--iterations", "5", "--out-dir",
                         dir.path.string()});
  ::unsetenv("LDAKIT_K");
  REQUIRE(r.code == 0);
  CHECK(read_csv_rows(dir / "assignments.csv")[0].size() == 5);
}

TEST_CASE("score ranks every document per query, best first") {
  TempDir dir("score");
  write_file(dir / "toy.csv", kToy);
  REQUIRE(invoke({"train", "--input", (dir / "toy.csv").string(), "--k", "2", "--iterations", "20", "--out-dir",
                  dir.path.string()})
              .code == 0);
  write_file(dir / "q.txt", "vaccine supply\n\nschools\n");
  const auto r = invoke({"score", "--model", (dir / "model.ckpt").string(), "--queries", (dir / "q.txt").string(),
                         "--out-dir", dir.path.string()});
  REQUIRE(r.code == 0);
  std::ifstream in(dir / "scores.tsv");
  std::string line;
  std::getline(in, line);
  CHECK(line == "query\tdoc_id\tscore");
  std::vector<std::pair<std::string, double>> seen;
  while (std::getline(in, line)) {
    const auto a = line.find('\t'), b = line.rfind('\t');
    seen.emplace_back(line.substr(0, a), std::stod(line.substr(b + 1)));
  }
  REQUIRE(seen.size() == 6);
  for (std::size_t i = 1; i < seen.size(); ++i)
    if (seen[i].first == seen[i - 1].first) CHECK(seen[i].second <= seen[i - 1].second);
}

TEST_CASE("diagnose reproduces train artifacts for a single chain") {
  TempDir dir("diagnose");
  write_file(dir / "toy.csv", kToy);
  REQUIRE(invoke({"train", "--input", (dir / "toy.csv").string(), "--k", "2", "--iterations", "20", "--out-dir",
                  (dir / "t").string()})
              .code == 0);
  REQUIRE(invoke({"diagnose", "--model", (dir / "t" / "model.ckpt").string(), "--out-dir", (dir / "d").string()})
              .code == 0);
  for (const char* f : {"assignments.csv", "topics.json", "diagnostics.csv", "stats.csv", "histogram.csv", "counts.csv"})
    CHECK(read_file(dir.path / "t" / f) == read_file(dir.path / "d" / f));
}

TEST_CASE("generate produces a corpus that trains without stemming") {
  TempDir dir("generate");
  REQUIRE(invoke({"generate", "--k", "2", "--docs", "20", "--doc-length", "15", "--vocab-size", "30", "--seed", "4",
                  "--out-dir", dir.path.string()})
              .code == 0);
  write_file(dir / "empty_stop.txt", "");
  const auto r = invoke({"train", "--input", (dir / "corpus.csv").string(), "--no-stem", "--stopwords",
                         (dir / "empty_stop.txt").string(), "--k", "2", "--iterations", "10", "--out-dir",
                         (dir / "model").string()});
  REQUIRE(r.code == 0);
  const auto ck = ldakit::load_checkpoint(dir.path / "model" / "model.ckpt");
  CHECK(ck.corpus.num_documents() == 20);
  CHECK(ck.corpus.total_tokens() == 300);
  CHECK(read_csv_rows(dir / "planted_theta.csv").size() == 21);
}

TEST_CASE("preprocess writes tokens") {
  TempDir dir("preprocess");
  write_file(dir / "toy.jsonl", "{\"id\": \"a\", \"text\": \"Monkey pox https://t.co/x is here\"}\n");
  const auto r = invoke({"preprocess", "--input", (dir / "toy.jsonl").string(), "--format", "jsonl", "--out-dir",
                         dir.path.string()});
  REQUIRE(r.code == 0);
  CHECK(read_file(dir / "preprocessed.csv") == "doc_id,tokens\na,monkei pox\n");
}
