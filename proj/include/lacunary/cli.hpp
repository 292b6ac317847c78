#pragma once

// Batch front end: subcommands over every public operation, JSON/CSV output,
// run manifests and config-file experiments.

#include <iosfwd>
#include <string>
#include <vector>

namespace lacunary::cli {

inline constexpr const char* kToolVersion = "1.0.0";

/// Exit codes: 0 success, 1 error, 2 tolerance violation (experiment, replay).
int run(int argc, char** argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Git blob hash: SHA-1 of "blob <size>\0" followed by the content.
std::string git_blob_sha1(const std::string& content);

}  // namespace lacunary::cli
