#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ldakit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitData = 3;

// Every flag can also come from the environment as LDAKIT_<FLAG>, upper case
// with dashes turned into underscores (--k-min -> LDAKIT_K_MIN). A flag on
// the command line wins over the environment.
inline constexpr const char* kEnvPrefix = "LDAKIT_";

// args excludes the program name. On failure a single JSON object is written
// to err: {"error": "usage"|"data"|"internal", "exit_code": n, "message": "..."}.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int main(int argc, char** argv);

}  // namespace ldakit::cli
