#pragma once

// Run configuration for the sumlab command line: a flat `key = value` file
// format, desk-scale caps, and the hash stamped into every artifact.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>

namespace sumlab::cli {

inline constexpr const char* kVersion = "0.1.0";

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  int n = 2;
  double r = 0.2;
  std::uint64_t seed = 1;
  std::int64_t N_max = 4096;
  std::int64_t grid_points = 2000;
  int trunc = 40;
  int stages = 3;
  std::string output_dir = ".";
  /// Keys of the form `<command>.<name>`, kept verbatim.
  std::map<std::string, std::string> overrides;
};

/// Applies one `key = value` assignment. Known keys: n, r, seed, nmax,
/// grid, trunc, stages, out; anything containing a dot is stored as a
/// command override. Throws ConfigError on unknown keys or bad values.
void assign(RunConfig& cfg, const std::string& key, const std::string& value);

/// Reads `key = value` lines; `#` starts a comment, blank lines are skipped.
void parse_config(std::istream& in, RunConfig& cfg);
void load_config_file(const std::string& path, RunConfig& cfg);

/// Throws ConfigError unless 2 <= n <= 4, 0 < r <= pi, 1 <= N_max <= 2^16,
/// 1 <= grid_points <= 10^5, trunc >= 1 and 1 <= stages <= 4.
void validate(const RunConfig& cfg);

/// Canonical text form (sorted `key=value` lines, 17 significant digits).
std::string canonical(const RunConfig& cfg);

/// 64-bit FNV-1a of the canonical form.
std::uint64_t config_hash(const RunConfig& cfg);

/// `# sumlab=<version> config=<hash> seed=<seed> command=<command>`
std::string meta_line(const RunConfig& cfg, const std::string& command);

/// Override lookup with a default.
std::string override_or(const RunConfig& cfg, const std::string& key, const std::string& fallback);

}  // namespace sumlab::cli
