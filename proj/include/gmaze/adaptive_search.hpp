#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gmaze/fitness.hpp"
#include "gmaze/grover.hpp"
#include "gmaze/maze.hpp"

namespace gmaze {

/// KnownK: rounds chosen from the exact marked count (white-box).
/// GuessedK: rounds drawn at random from an escalating range (black-box).
enum class IterationPolicy { KnownK, GuessedK };

/// StrictGreater: always mark f > C_t.
/// GreaterEqualAtMax: mark f > C_t, except f >= C_t once C_t reaches f_max.
enum class Strictness { StrictGreater, GreaterEqualAtMax };

enum class SearchStatus { ConvergedOptimal, BudgetExhausted, Degenerate };

std::string_view status_name(SearchStatus status);

struct SearchConfig {
  std::int64_t initial_cutoff = 0;
  double epsilon = 0.05;
  int max_rounds = 32;
  IterationPolicy policy = IterationPolicy::KnownK;
  Strictness strictness = Strictness::GreaterEqualAtMax;
  int samples = 1;
  std::uint64_t seed = 1;
  double growth = 1.2;  // GuessedK escalation factor

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

struct RoundRecord {
  int round = 0;
  std::int64_t cutoff = 0;
  std::uint64_t marked = 0;
  double theta = 0.0;
  std::uint64_t rounds = 0;
  std::uint64_t shots = 0;
  std::uint64_t outcome = 0;
  std::int64_t outcome_fitness = 0;
  std::int64_t new_cutoff = 0;
};

struct CutoffTrace {
  std::vector<RoundRecord> rounds;
  SearchStatus status = SearchStatus::BudgetExhausted;

  std::size_t strict_increases() const;
};

struct SearchResult {
  CutoffTrace trace;
  int length = 0;
  std::int64_t f_max = 0;
  bool found = false;  // false only when no round ran
  std::uint64_t best_index = 0;
  std::int64_t best_fitness = 0;
};

/// C_{t+1} = max(C_t, f*_t)
constexpr std::int64_t update_cutoff(std::int64_t cutoff, std::int64_t observed) {
  return observed > cutoff ? observed : cutoff;
}

/// Oracle set for a round, honoring the strictness policy.
MarkedSet round_marked_set(const FitnessLandscape& land, std::int64_t cutoff, Strictness strictness);

/// r_t for the KnownK policy: optimal_rounds on the exact geometry.
/// Throws DegenerateGeometry when nothing is marked.
std::uint64_t rounds_for_cutoff(const FitnessLandscape& land, std::int64_t cutoff,
                                Strictness strictness = Strictness::StrictGreater);

/// r_t for the GuessedK policy: uniform in [0, min(ceil(growth^level), ceil(sqrt N))).
std::uint64_t guessed_rounds(std::uint64_t total, int level, double growth, Rng& rng);

/// delta_t = epsilon / T for each of T rounds.
std::vector<double> failure_budget_schedule(double epsilon, int rounds);

/// Smallest shot count with (1 - p)^shots <= delta. Returns 1 when p >= 1.
std::uint64_t shots_for_budget(double delta, double p);

SearchResult run_adaptive(const Maze& maze, int length, const FitnessSpec& spec, const SearchConfig& config);
/// Same loop on a precomputed landscape.
SearchResult run_adaptive(const FitnessLandscape& land, const SearchConfig& config);

/// `round,cutoff,k,theta,r,outcome_index,outcome_fitness,new_cutoff`
std::string trace_csv(const CutoffTrace& trace);
std::string result_json(const SearchResult& result);

}  // namespace gmaze
