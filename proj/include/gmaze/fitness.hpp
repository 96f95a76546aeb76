#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "gmaze/maze.hpp"
#include "gmaze/path_codec.hpp"

namespace gmaze {

/// PowerOfTwo: C - d^2 with C the smallest power of two strictly above 2(m-1)^2.
/// Linear: 2m - d^2.
enum class FitnessFormula { PowerOfTwo, Linear };

struct FitnessSpec {
  int grid_size = 2;
  std::int64_t offset = 4;  // C
  int exponent = 2;         // r
  FitnessFormula formula = FitnessFormula::PowerOfTwo;
  SimMode mode = SimMode::WallAware;
};

FitnessSpec make_spec(int grid_size, FitnessFormula formula = FitnessFormula::PowerOfTwo,
                      SimMode mode = SimMode::WallAware);

std::int64_t squared_distance(Cell a, Cell b);

/// Throws std::invalid_argument if spec.grid_size differs from the maze.
std::int64_t fitness(const Maze& maze, const Path& path, const FitnessSpec& spec);

struct FitnessLandscape {
  int length = 0;
  std::vector<std::int64_t> values;  // values[u] is the fitness of path index u

  std::int64_t max() const;
  std::int64_t min() const;
  std::size_t size() const { return values.size(); }
};

FitnessLandscape landscape(const Maze& maze, int length, const FitnessSpec& spec);

inline constexpr std::int64_t kCutoffBelowAll = std::numeric_limits<std::int64_t>::min();

struct MarkedSet {
  std::vector<std::uint64_t> indices;  // ascending
  std::size_t count() const { return indices.size(); }
  bool empty() const { return indices.empty(); }
};

/// Paths whose fitness is strictly greater than `cutoff`.
MarkedSet marked_set(const FitnessLandscape& land, std::int64_t cutoff);
/// Paths whose fitness is at least `cutoff`.
MarkedSet marked_set_at_least(const FitnessLandscape& land, std::int64_t cutoff);
/// Paths attaining the landscape maximum.
MarkedSet argmax_set(const FitnessLandscape& land);

std::string landscape_csv(const FitnessLandscape& land);

}  // namespace gmaze
