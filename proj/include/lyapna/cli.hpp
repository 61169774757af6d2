#pragma once

#include <string>
#include <vector>

namespace lyapna {

inline constexpr const char* kToolName = "lyapna";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kSeedEnvVar = "LYAPNA_SEED";

// Entry point behind the binary: parses argv, runs one subcommand, writes
// the primary output to --out (or stdout).  Exit codes: 0 success, 1 usage
// or configuration error, 2 computational error (with a machine-readable
// error record on the output stream).
int cli_run(int argc, const char* const* argv);
int cli_run(const std::vector<std::string>& args);

// FNV-1a 64-bit content hash, hex encoded; embedded in every output.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace lyapna
