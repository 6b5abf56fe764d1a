#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <ostream>

#include "ldakit/corpus.hpp"
#include "ldakit/model.hpp"

namespace ldakit {

// Binary checkpoint, all integers little-endian, doubles as raw IEEE-754 bits:
//
//   "LDAKCKPT"  u32 version (=1)
//   u64 seed  u32 sweep  u32 iterations  u32 opt_interval  u32 chains
//   u32 k  f64 beta  f64 alpha[k]
//   u64 V      then V x str                       vocabulary in id order
//   u64 D      then D x (str id, u64 n, u32 tokens[n], u32 z[n])
//   u64 drops  then drops x (str id, str reason)
//   i32 n_t[k]  i32 n_td[D*k]  i32 n_wt[V*k]
//
// where str = u32 byte length + bytes. The corpus travels with the model so
// a checkpoint is self-contained. Loading recounts from z and rejects the
// file if the stored counts disagree.
struct Checkpoint {
  Corpus corpus;
  TopicModel model;
  std::uint32_t sweep = 0;
};

void save_checkpoint(std::ostream& out, const Corpus& corpus, const TopicModel& model, std::uint32_t sweep);
void save_checkpoint(const std::filesystem::path& path, const Corpus& corpus, const TopicModel& model,
                     std::uint32_t sweep);

Checkpoint load_checkpoint(std::istream& in);
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace ldakit
