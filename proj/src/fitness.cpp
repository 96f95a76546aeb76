#include "gmaze/fitness.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace gmaze {

FitnessSpec make_spec(int grid_size, FitnessFormula formula, SimMode mode) {
  if (grid_size < 2) throw std::invalid_argument("m must be >= 2");
  FitnessSpec spec;
  spec.grid_size = grid_size;
  spec.formula = formula;
  spec.mode = mode;
  if (formula == FitnessFormula::PowerOfTwo) {
    const std::int64_t bound = 2LL * (grid_size - 1) * (grid_size - 1);
    int r = 0;
    while ((std::int64_t{1} << r) <= bound) ++r;
    spec.exponent = r;
    spec.offset = std::int64_t{1} << r;
  } else {
    spec.offset = 2LL * grid_size;
    int r = 0;
    while ((std::int64_t{1} << r) < spec.offset + 1) ++r;
    spec.exponent = r;
  }
  return spec;
}

std::int64_t squared_distance(Cell a, Cell b) {
  const std::int64_t di = a.row - b.row;
  const std::int64_t dj = a.col - b.col;
  return di * di + dj * dj;
}

std::int64_t fitness(const Maze& maze, const Path& path, const FitnessSpec& spec) {
  if (spec.grid_size != maze.size()) throw std::invalid_argument("fitness spec built for a different m");
  const Trajectory t = simulate_path(maze, path, spec.mode);
  return spec.offset - squared_distance(t.end(), maze.goal());
}

std::int64_t FitnessLandscape::max() const { return *std::max_element(values.begin(), values.end()); }
std::int64_t FitnessLandscape::min() const { return *std::min_element(values.begin(), values.end()); }

FitnessLandscape landscape(const Maze& maze, int length, const FitnessSpec& spec) {
  check_materializable(length);
  FitnessLandscape land;
  land.length = length;
  const std::uint64_t count = path_count(length);
  land.values.resize(count);
  for (std::uint64_t u = 0; u < count; ++u) land.values[u] = fitness(maze, decode_index({u, length}), spec);
  return land;
}

namespace {

template <typename Pred>
MarkedSet select(const FitnessLandscape& land, Pred pred) {
  MarkedSet set;
  for (std::size_t u = 0; u < land.values.size(); ++u) {
    if (pred(land.values[u])) set.indices.push_back(u);
  }
  return set;
}

}  // namespace

MarkedSet marked_set(const FitnessLandscape& land, std::int64_t cutoff) {
  return select(land, [cutoff](std::int64_t f) { return f > cutoff; });
}

MarkedSet marked_set_at_least(const FitnessLandscape& land, std::int64_t cutoff) {
  return select(land, [cutoff](std::int64_t f) { return f >= cutoff; });
}

MarkedSet argmax_set(const FitnessLandscape& land) { return marked_set_at_least(land, land.max()); }

std::string landscape_csv(const FitnessLandscape& land) {
  std::ostringstream out;
  out << "index,bits,path,fitness\n";
  for (std::size_t u = 0; u < land.values.size(); ++u) {
    const PathIndex idx{u, land.length};
    out << u << ',' << index_bits(idx) << ',' << path_letters(decode_index(idx)) << ',' << land.values[u]
        << '\n';
  }
  return out.str();
}

}  // namespace gmaze
