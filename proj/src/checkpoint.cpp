#include "ldakit/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "ldakit/common.hpp"

namespace ldakit {
namespace {

constexpr char kMagic[8] = {'L', 'D', 'A', 'K', 'C', 'K', 'P', 'T'};
constexpr std::uint32_t kVersion = 1;
constexpr std::uint64_t kMaxString = 1u << 30;

class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(out) {}

  void u32(std::uint32_t v) { put(v, 4); }
  void u64(std::uint64_t v) { put(v, 8); }
  void i32(std::int32_t v) { put(static_cast<std::uint32_t>(v), 4); }
  void f64(double v) { put(std::bit_cast<std::uint64_t>(v), 8); }
  void str(const std::string& s) {
    u32(static_cast<std::uint32_t>(s.size()));
    out_.write(s.data(), static_cast<std::streamsize>(s.size()));
  }
  void raw(const char* data, std::size_t n) { out_.write(data, static_cast<std::streamsize>(n)); }

 private:
  void put(std::uint64_t v, int bytes) {
    char buf[8];
    for (int i = 0; i < bytes; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    out_.write(buf, bytes);
  }
  std::ostream& out_;
};

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  std::uint32_t u32() { return static_cast<std::uint32_t>(get(4)); }
  std::uint64_t u64() { return get(8); }
  std::int32_t i32() { return static_cast<std::int32_t>(static_cast<std::uint32_t>(get(4))); }
  double f64() { return std::bit_cast<double>(get(8)); }
  std::string str() {
    const auto n = u32();
    if (n > kMaxString) throw DataError("checkpoint: string length out of range");
    std::string s(n, '\0');
    read(s.data(), n);
    return s;
  }
  void read(char* data, std::size_t n) {
    in_.read(data, static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in_.gcount()) != n) throw DataError("checkpoint: unexpected end of file");
  }

 private:
  std::uint64_t get(int bytes) {
    unsigned char buf[8];
    read(reinterpret_cast<char*>(buf), static_cast<std::size_t>(bytes));
    std::uint64_t v = 0;
    for (int i = 0; i < bytes; ++i) v |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
    return v;
  }
  std::istream& in_;
};

}  // namespace

void save_checkpoint(std::ostream& out, const Corpus& corpus, const TopicModel& model, std::uint32_t sweep) {
  if (model.num_documents() != corpus.num_documents() || model.vocabulary_size() != corpus.vocabulary_size()) {
    throw UsageError("model does not match corpus");
  }
  Writer w(out);
  const auto& hyper = model.hyper();
  w.raw(kMagic, sizeof kMagic);
  w.u32(kVersion);
  w.u64(hyper.seed);
  w.u32(sweep);
  w.u32(hyper.iterations);
  w.u32(hyper.opt_interval);
  w.u32(hyper.chains);
  w.u32(hyper.k());
  w.f64(hyper.beta);
  for (double a : hyper.alpha) w.f64(a);

  w.u64(corpus.vocabulary_size());
  for (const auto& word : corpus.vocabulary().words()) w.str(word);

  w.u64(corpus.num_documents());
  for (std::size_t d = 0; d < corpus.num_documents(); ++d) {
    const auto& doc = corpus.document(d);
    w.str(doc.id);
    w.u64(doc.tokens.size());
    for (WordId id : doc.tokens) w.u32(id);
    for (TopicId t : model.assignments(d)) w.u32(t);
  }

  w.u64(corpus.dropped().size());
  for (const auto& drop : corpus.dropped()) {
    w.str(drop.id);
    w.str(drop.reason);
  }

  for (Count c : model.topic_totals()) w.i32(c);
  for (Count c : model.raw_doc_topic()) w.i32(c);
  for (Count c : model.raw_word_topic()) w.i32(c);
  if (!out) throw DataError("checkpoint: write failed");
}

void save_checkpoint(const std::filesystem::path& path, const Corpus& corpus, const TopicModel& model,
                     std::uint32_t sweep) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot open checkpoint for writing: " + path.string());
  save_checkpoint(out, corpus, model, sweep);
}

Checkpoint load_checkpoint(std::istream& in) {
  Reader r(in);
  char magic[8];
  r.read(magic, sizeof magic);
  if (std::memcmp(magic, kMagic, sizeof magic) != 0) throw DataError("not an ldakit checkpoint");
  if (const auto version = r.u32(); version != kVersion) {
    throw DataError("unsupported checkpoint version " + std::to_string(version));
  }

  Hyperparameters hyper;
  hyper.seed = r.u64();
  const auto sweep = r.u32();
  hyper.iterations = r.u32();
  hyper.opt_interval = r.u32();
  hyper.chains = r.u32();
  const auto k = r.u32();
  if (k == 0 || k > (1u << 20)) throw DataError("checkpoint: topic count out of range");
  hyper.beta = r.f64();
  hyper.alpha.resize(k);
  for (auto& a : hyper.alpha) a = r.f64();

  Vocabulary vocabulary;
  const auto v = r.u64();
  for (std::uint64_t i = 0; i < v; ++i) {
    const auto word = r.str();
    if (vocabulary.intern(word) != i) throw DataError("checkpoint: duplicate vocabulary entry");
  }

  const auto num_docs = r.u64();
  std::vector<Document> documents;
  std::vector<TopicId> z;
  for (std::uint64_t d = 0; d < num_docs; ++d) {
    Document doc{r.str(), {}};
    const auto n = r.u64();
    if (n == 0 || n > kMaxString) throw DataError("checkpoint: document length out of range");
    doc.tokens.resize(n);
    for (auto& id : doc.tokens) id = r.u32();
    for (std::uint64_t i = 0; i < n; ++i) z.push_back(r.u32());
    documents.push_back(std::move(doc));
  }

  const auto num_dropped = r.u64();
  if (num_dropped > kMaxString) throw DataError("checkpoint: dropped-document count out of range");
  std::vector<DroppedDocument> dropped(num_dropped);
  for (auto& drop : dropped) {
    drop.id = r.str();
    drop.reason = r.str();
  }

  Checkpoint ckpt;
  ckpt.corpus = Corpus(std::move(documents), std::move(vocabulary), std::move(dropped));
  ckpt.sweep = sweep;
  try {
    ckpt.model = TopicModel(ckpt.corpus, hyper);
  } catch (const UsageError& e) {
    throw DataError(std::string("checkpoint: ") + e.what());
  }
  ckpt.model.set_assignments(ckpt.corpus, z);

  const auto expect = [&](std::span<const Count> counts) {
    for (Count c : counts) {
      if (r.i32() != c) throw DataError("checkpoint: stored counts disagree with assignments");
    }
  };
  expect(ckpt.model.topic_totals());
  expect(ckpt.model.raw_doc_topic());
  expect(ckpt.model.raw_word_topic());
  return ckpt;
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open checkpoint: " + path.string());
  return load_checkpoint(in);
}

}  // namespace ldakit
