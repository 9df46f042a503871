#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "beliefs/family.hpp"

namespace beliefs {

inline constexpr const char* kToolVersion = "0.3.0";

enum class RunMode { Analyze, Evolve, Sample, Homophily, Clusters, Certify };

const char* to_string(RunMode mode);

// Flat key = value text. Top-level keys (before any [section]) are mode, out
// and seed; each mode reads its own [mode] section. '#' starts a comment.
// Relative paths are resolved against the config file's directory. A
// [manifest] section, as written by run(), is accepted and ignored.
struct RunConfig {
  RunMode mode = RunMode::Analyze;
  std::filesystem::path out = "out";
  std::uint64_t seed = 0;
  std::filesystem::path base_dir = ".";
  std::map<std::string, std::string> params;  // the [mode] section

  std::optional<std::string> get(const std::string& key) const;
  std::filesystem::path path(const std::string& key) const;  // resolved; ParseError if absent
  double number(const std::string& key, double fallback) const;
  std::size_t count(const std::string& key, std::size_t fallback) const;
  bool flag(const std::string& key, bool fallback) const;
};

// Throws ParseError("source:line: what").
RunConfig parse_config(std::istream& in, const std::string& source,
                       const std::filesystem::path& base_dir);
RunConfig read_config(const std::filesystem::path& file);

// Canonical text of a config: top-level keys, then the mode section with
// sorted keys and absolute paths. Replaying it reproduces the run.
std::string canonical_config(const RunConfig& cfg);

// 64-bit FNV-1a of the canonical text, as 16 hex digits.
std::string config_hash(const RunConfig& cfg);

struct RunResult {
  std::vector<std::filesystem::path> artifacts;
  std::string report;  // human-readable summary
  std::optional<std::size_t> stabilized_at;
};

// Loads every input before computing, writes artifacts and manifest.cfg
// under cfg.out, and returns a summary. Module errors propagate.
RunResult run(const RunConfig& cfg);

// Directory of member CSVs (sorted by file name) plus an optional
// weights.txt of `index weight` lines with 0-based indices; uniform weights
// without it.
MatrixFamily load_family(const std::filesystem::path& dir);

// "3 groups: {1,5},{2,4},{3}" with 1-based members.
std::string format_groups(const std::vector<std::vector<std::size_t>>& groups);

}  // namespace beliefs
