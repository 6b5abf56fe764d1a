#include "ldakit/text.hpp"

#include <algorithm>

namespace ldakit {
namespace {

bool is_alpha(unsigned char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_alnum(unsigned char c) { return is_alpha(c) || (c >= '0' && c <= '9'); }
bool is_space(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}
char lower(unsigned char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c + 32) : static_cast<char>(c); }

bool starts_with_http(std::string_view s, std::size_t i) {
  static constexpr std::string_view kHttp = "http";
  if (s.size() - i < kHttp.size()) return false;
  for (std::size_t j = 0; j < kHttp.size(); ++j) {
    if (lower(static_cast<unsigned char>(s[i + j])) != kHttp[j]) return false;
  }
  return true;
}

// Equivalent to regex_replace(text, http\S+, "") with icase.
std::string strip_urls(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (starts_with_http(text, i) && i + 4 < text.size() &&
        !is_space(static_cast<unsigned char>(text[i + 4]))) {
      i += 4;
      while (i < text.size() && !is_space(static_cast<unsigned char>(text[i]))) ++i;
      continue;
    }
    out.push_back(text[i++]);
  }
  return out;
}

// Equivalent to regex_replace(text, <marker>[A-Za-z0-9]+, "").
std::string strip_tags(std::string_view text, char marker) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == marker && i + 1 < text.size() && is_alnum(static_cast<unsigned char>(text[i + 1]))) {
      ++i;
      while (i < text.size() && is_alnum(static_cast<unsigned char>(text[i]))) ++i;
      continue;
    }
    out.push_back(text[i++]);
  }
  return out;
}

}  // namespace

std::string clean_text(std::string_view text) {
  std::string s = strip_urls(text);
  s = strip_tags(s, '@');
  s = strip_tags(s, '#');

  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (unsigned char c : s) {
    if (!is_alpha(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back(lower(c));
  }
  return out;
}

std::vector<std::string> tokenize(std::string_view cleaned) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < cleaned.size()) {
    while (i < cleaned.size() && is_space(static_cast<unsigned char>(cleaned[i]))) ++i;
    const std::size_t start = i;
    while (i < cleaned.size() && !is_space(static_cast<unsigned char>(cleaned[i]))) ++i;
    if (i - start >= 2) tokens.emplace_back(cleaned.substr(start, i - start));
  }
  return tokens;
}

std::vector<std::string> remove_stopwords(std::vector<std::string> tokens, const WordSet& stoplist) {
  std::erase_if(tokens, [&](const std::string& t) { return stoplist.contains(t); });
  return tokens;
}

std::vector<std::string> preprocess(std::string_view text, const PipelineOptions& options) {
  auto tokens = tokenize(clean_text(text));
  if (options.dictionary) {
    std::erase_if(tokens, [&](const std::string& t) { return !options.dictionary->contains(t); });
  }
  tokens = remove_stopwords(std::move(tokens), options.stopwords);
  if (options.stemming) {
    for (auto& t : tokens) t = stem(t);
  }
  return tokens;
}

}  // namespace ldakit
