#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ldakit {

using WordId = std::uint32_t;
using TopicId = std::uint32_t;
using Count = std::int32_t;

// Malformed or unusable input data (bad rows, empty corpora, corrupt files).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid parameters or option combinations.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace ldakit
