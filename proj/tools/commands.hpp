#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gmaze/adaptive_search.hpp"
#include "gmaze/fitness.hpp"
#include "gmaze/maze.hpp"
#include "gmaze/verification.hpp"

namespace gmaze::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;

/// Bad flags, bad config values, unknown keys, unreadable inputs. Exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using KeyValues = std::map<std::string, std::string>;

/// Flat `key = value` lines; `#` starts a comment. Underscores in keys read as dashes.
/// Unknown, duplicate or malformed entries throw UsageError.
KeyValues parse_config(std::string_view text, const std::set<std::string>& allowed);

enum class Format { Csv, Json };

/// Stream used to derive the generator seed of a solve without --maze.
inline constexpr std::uint64_t kMazeStream = 0;

struct RunConfig {
  std::string maze_path;  // empty: generate an m x m maze from the seed
  int grid_size = 4;
  int length = 2;
  FitnessFormula formula = FitnessFormula::PowerOfTwo;
  SimMode mode = SimMode::WallAware;
  SearchConfig search;
  std::string out;
  Format format = Format::Csv;

  Maze load_maze() const;
};

RunConfig solve_config(const KeyValues& kv);

struct SolveOutput {
  std::string body;     // trace CSV or result JSON
  std::string summary;  // one line
  SearchResult result;
};

SolveOutput cmd_solve(const RunConfig& config);

/// Serialized maze file. Throws UsageError for m < 2.
std::string cmd_generate(int grid_size, std::uint64_t seed);

/// Synthetic marked set {0, ..., k-1}. rmax defaults to max(3 r*, 6).
std::string cmd_dynamics(int length, std::uint64_t k, std::optional<std::uint64_t> rmax, Format format);

VerifyReport cmd_verify(const VerifyOptions& opts, const ComparatorFactory& factory = default_comparator);

std::string cmd_resources(int length, int grid_size, std::optional<Format> format);

/// One solve per seed s_i = derive_seed(seed, i), maze generated from s_i.
struct SweepRow {
  std::uint64_t seed = 0;
  SearchResult result;
};
std::vector<SweepRow> cmd_sweep(const RunConfig& base, int runs);
std::string sweep_csv(const std::vector<SweepRow>& rows);

/// Full command line without the program name. Returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gmaze::cli
