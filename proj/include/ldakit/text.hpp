#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace ldakit {

using WordSet = std::unordered_set<std::string>;

// Strips, in order: URLs (http\S+, case-insensitive), user mentions
// (@[A-Za-z0-9]+), hashtags (#[A-Za-z0-9]+). Every remaining byte outside
// [A-Za-z] becomes a space, letters are lowercased, whitespace runs are
// collapsed and the ends trimmed. The output alphabet is [a-z ].
std::string clean_text(std::string_view text);

// Whitespace split; tokens shorter than two characters are dropped.
std::vector<std::string> tokenize(std::string_view cleaned);

std::vector<std::string> remove_stopwords(std::vector<std::string> tokens,
                                          const WordSet& stoplist);

// Porter (1980) suffix stripper. Input must be lowercase ASCII letters.
std::string stem(std::string_view token);

struct PipelineOptions {
  WordSet stopwords;
  bool stemming = true;
  // When set, tokens outside this word list are discarded after tokenizing.
  std::optional<WordSet> dictionary;
};

// clean_text -> tokenize -> dictionary filter -> remove_stopwords -> stem
std::vector<std::string> preprocess(std::string_view text, const PipelineOptions& options);

}  // namespace ldakit
