#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gmaze {

/// A single move on the grid. The underlying value is the 2-bit path code.
enum class Direction : std::uint8_t { N = 0, E = 1, S = 2, W = 3 };

inline constexpr std::array<Direction, 4> kAllDirections{Direction::N, Direction::E, Direction::S,
                                                         Direction::W};

char direction_letter(Direction d);
Direction direction_from_letter(char c);

/// Row increases southward, column increases eastward.
struct Cell {
  int row = 0;
  int col = 0;

  friend bool operator==(const Cell&, const Cell&) = default;
};

Cell step(Cell c, Direction d);

/// How a move is checked against the maze when simulating a path.
///  - WallAware: a move must stay in the grid and cross an open passage.
///  - BoundsOnly: a move must stay in the grid; walls are ignored.
///  - WallBlind: moves are pure coordinate arithmetic and may leave the grid.
enum class SimMode { WallAware, BoundsOnly, WallBlind };

std::string_view sim_mode_name(SimMode mode);

class MazeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A perfect m x m maze: its open passages form a spanning tree over the cells.
///
/// Openness is stored per cell as a 4-bit mask (8 = N, 4 = E, 2 = S, 1 = W).
/// Instances are validated on construction and immutable afterwards.
class Maze {
 public:
  static constexpr std::uint8_t kOpenN = 8;
  static constexpr std::uint8_t kOpenE = 4;
  static constexpr std::uint8_t kOpenS = 2;
  static constexpr std::uint8_t kOpenW = 1;

  /// Throws MazeError naming the first violated invariant.
  Maze(int size, std::vector<std::uint8_t> open_masks, Cell start, Cell goal);

  int size() const { return size_; }
  Cell start() const { return start_; }
  Cell goal() const { return goal_; }

  bool contains(Cell c) const { return c.row >= 0 && c.col >= 0 && c.row < size_ && c.col < size_; }
  std::uint8_t open_mask(Cell c) const { return open_[index_of(c)]; }
  bool is_open(Cell c, Direction d) const;
  std::size_t passage_count() const;

  /// Same walls, different endpoints.
  Maze with_endpoints(Cell start, Cell goal) const;

  friend bool operator==(const Maze&, const Maze&) = default;

 private:
  std::size_t index_of(Cell c) const {
    return static_cast<std::size_t>(c.row) * static_cast<std::size_t>(size_) +
           static_cast<std::size_t>(c.col);
  }

  int size_;
  std::vector<std::uint8_t> open_;
  Cell start_;
  Cell goal_;
};

std::uint8_t direction_bit(Direction d);

/// Recursive-backtracker generation. Start defaults to (0,0), goal to (m-1,m-1).
Maze generate_maze(int size, std::uint64_t seed);
Maze generate_maze(int size, std::uint64_t seed, Cell start, Cell goal);

/// One step of the transition function. nullopt means the move is blocked.
std::optional<Cell> transition(const Maze& maze, Cell cell, Direction d, SimMode mode);

struct Trajectory {
  std::vector<Cell> cells;  // cells[0] is the start, one entry per step after it
  std::optional<std::size_t> failed_step;  // 1-based index of the first blocked move
  Cell end() const { return cells.back(); }
};

/// Blocked moves freeze the position for the rest of the path.
Trajectory simulate_path(const Maze& maze, const std::vector<Direction>& path, SimMode mode);

/// Length of the unique tree path between two cells.
int shortest_path_length(const Maze& maze, Cell from, Cell to);

/// The tree path between two cells as a direction sequence.
std::vector<Direction> tree_path(const Maze& maze, Cell from, Cell to);

/// Text format: `m i_s j_s i_f j_f`, then m rows of m hex digits giving open sides.
Maze parse_maze(std::string_view text);
std::string serialize_maze(const Maze& maze);

}  // namespace gmaze
