#pragma once
// Command-line front end: decompose, synth, synth-bench, denoise, metrics.
//
// Exit codes: 0 success, 1 usage or I/O error, 2 numerical degeneracy.

#include <iosfwd>
#include <string>
#include <vector>

namespace tvb::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitDegenerate = 2;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Appends "--key=value" for every key=value line of each --config file whose
// key is not already given as a flag. Blank lines and lines starting with
// '#' or ';' are skipped.
std::vector<std::string> expand_config(const std::vector<std::string>& args);

}  // namespace tvb::cli
