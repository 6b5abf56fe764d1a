#pragma once

#include <filesystem>
#include <istream>

#include "ldakit/text.hpp"

namespace ldakit {

// Embedded English stoplist (lowercase surface forms).
const WordSet& default_stoplist();

// One word per line, UTF-8; '#' starts a comment line; blanks ignored.
// Entries are trimmed and lowercased.
WordSet parse_stoplist(std::istream& in);
WordSet load_stoplist(const std::filesystem::path& path);

}  // namespace ldakit
