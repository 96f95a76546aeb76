#include "gmaze/maze.hpp"

#include <algorithm>
#include <cctype>
#include <queue>
#include <sstream>
#include <utility>

#include "gmaze/rng.hpp"

namespace gmaze {

char direction_letter(Direction d) {
  switch (d) {
    case Direction::N: return 'N';
    case Direction::E: return 'E';
    case Direction::S: return 'S';
    case Direction::W: return 'W';
  }
  return '?';
}

Direction direction_from_letter(char c) {
  switch (std::toupper(static_cast<unsigned char>(c))) {
    case 'N': return Direction::N;
    case 'E': return Direction::E;
    case 'S': return Direction::S;
    case 'W': return Direction::W;
    default: throw std::invalid_argument(std::string("not a direction letter: ") + c);
  }
}

Cell step(Cell c, Direction d) {
  switch (d) {
    case Direction::N: return {c.row - 1, c.col};
    case Direction::E: return {c.row, c.col + 1};
    case Direction::S: return {c.row + 1, c.col};
    case Direction::W: return {c.row, c.col - 1};
  }
  return c;
}

std::string_view sim_mode_name(SimMode mode) {
  switch (mode) {
    case SimMode::WallAware: return "wall-aware";
    case SimMode::BoundsOnly: return "bounds";
    case SimMode::WallBlind: return "blind";
  }
  return "?";
}

std::uint8_t direction_bit(Direction d) {
  switch (d) {
    case Direction::N: return Maze::kOpenN;
    case Direction::E: return Maze::kOpenE;
    case Direction::S: return Maze::kOpenS;
    case Direction::W: return Maze::kOpenW;
  }
  return 0;
}

namespace {

Direction opposite(Direction d) {
  return static_cast<Direction>((static_cast<std::uint8_t>(d) + 2) % 4);
}

}  // namespace

Maze::Maze(int size, std::vector<std::uint8_t> open_masks, Cell start, Cell goal)
    : size_(size), open_(std::move(open_masks)), start_(start), goal_(goal) {
  if (size_ < 2) throw MazeError("m must be >= 2");
  const auto cells = static_cast<std::size_t>(size_) * static_cast<std::size_t>(size_);
  if (open_.size() != cells) throw MazeError("malformed grid: expected m*m cells");
  if (!contains(start_)) throw MazeError("start cell out of range");
  if (!contains(goal_)) throw MazeError("goal cell out of range");
  if (start_ == goal_) throw MazeError("start and goal must differ");

  for (int i = 0; i < size_; ++i) {
    for (int j = 0; j < size_; ++j) {
      const Cell c{i, j};
      if (open_[index_of(c)] > 0xF) throw MazeError("malformed grid: mask exceeds 4 bits");
      for (Direction d : kAllDirections) {
        if (!is_open(c, d)) continue;
        const Cell nb = step(c, d);
        if (!contains(nb)) throw MazeError("passage leaves the grid");
        if (!is_open(nb, opposite(d))) throw MazeError("asymmetric walls");
      }
    }
  }

  if (passage_count() != cells - 1) throw MazeError("not a tree: passage count is not m*m-1");
  // With m*m-1 edges, connectivity is equivalent to acyclicity.
  std::vector<bool> seen(cells, false);
  std::vector<Cell> stack{Cell{0, 0}};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const Cell c = stack.back();
    stack.pop_back();
    for (Direction d : kAllDirections) {
      if (!is_open(c, d)) continue;
      const Cell nb = step(c, d);
      if (!seen[index_of(nb)]) {
        seen[index_of(nb)] = true;
        ++reached;
        stack.push_back(nb);
      }
    }
  }
  if (reached != cells) throw MazeError("not a tree: passage graph is disconnected");
}

bool Maze::is_open(Cell c, Direction d) const { return (open_[index_of(c)] & direction_bit(d)) != 0; }

std::size_t Maze::passage_count() const {
  std::size_t count = 0;
  for (std::uint8_t mask : open_) {
    // Count each passage once, from its west or north end.
    count += (mask & kOpenE) ? 1 : 0;
    count += (mask & kOpenS) ? 1 : 0;
  }
  return count;
}

Maze Maze::with_endpoints(Cell start, Cell goal) const { return Maze(size_, open_, start, goal); }

Maze generate_maze(int size, std::uint64_t seed) {
  if (size < 2) throw std::invalid_argument("m must be >= 2");
  return generate_maze(size, seed, Cell{0, 0}, Cell{size - 1, size - 1});
}

Maze generate_maze(int size, std::uint64_t seed, Cell start, Cell goal) {
  if (size < 2) throw std::invalid_argument("m must be >= 2");
  const auto cells = static_cast<std::size_t>(size) * static_cast<std::size_t>(size);
  std::vector<std::uint8_t> open(cells, 0);
  std::vector<bool> visited(cells, false);
  auto idx = [size](Cell c) { return static_cast<std::size_t>(c.row * size + c.col); };
  auto inside = [size](Cell c) { return c.row >= 0 && c.col >= 0 && c.row < size && c.col < size; };

  Rng rng(seed);
  std::vector<Cell> stack{Cell{0, 0}};
  visited[0] = true;
  while (!stack.empty()) {
    const Cell cur = stack.back();
    std::array<Direction, 4> choices{};
    std::size_t count = 0;
    for (Direction d : kAllDirections) {
      const Cell nb = step(cur, d);
      if (inside(nb) && !visited[idx(nb)]) choices[count++] = d;
    }
    if (count == 0) {
      stack.pop_back();
      continue;
    }
    const Direction d = choices[rng.below(count)];
    const Cell nb = step(cur, d);
    open[idx(cur)] |= direction_bit(d);
    open[idx(nb)] |= direction_bit(opposite(d));
    visited[idx(nb)] = true;
    stack.push_back(nb);
  }
  return Maze(size, std::move(open), start, goal);
}

std::optional<Cell> transition(const Maze& maze, Cell cell, Direction d, SimMode mode) {
  const Cell next = step(cell, d);
  switch (mode) {
    case SimMode::WallBlind:
      return next;
    case SimMode::BoundsOnly:
      if (!maze.contains(next)) return std::nullopt;
      return next;
    case SimMode::WallAware:
      if (!maze.contains(next) || !maze.contains(cell) || !maze.is_open(cell, d)) return std::nullopt;
      return next;
  }
  return std::nullopt;
}

Trajectory simulate_path(const Maze& maze, const std::vector<Direction>& path, SimMode mode) {
  Trajectory t;
  t.cells.reserve(path.size() + 1);
  t.cells.push_back(maze.start());
  Cell pos = maze.start();
  for (std::size_t k = 0; k < path.size(); ++k) {
    if (!t.failed_step) {
      if (auto next = transition(maze, pos, path[k], mode)) {
        pos = *next;
      } else {
        t.failed_step = k + 1;
      }
    }
    t.cells.push_back(pos);
  }
  return t;
}

std::vector<Direction> tree_path(const Maze& maze, Cell from, Cell to) {
  if (!maze.contains(from) || !maze.contains(to)) throw std::invalid_argument("cell outside the grid");
  const int m = maze.size();
  const auto cells = static_cast<std::size_t>(m) * static_cast<std::size_t>(m);
  auto idx = [m](Cell c) { return static_cast<std::size_t>(c.row * m + c.col); };

  // BFS from `from`, remembering the move used to enter each cell.
  std::vector<int> came_by(cells, -1);
  std::vector<bool> seen(cells, false);
  std::queue<Cell> frontier;
  frontier.push(from);
  seen[idx(from)] = true;
  while (!frontier.empty()) {
    const Cell c = frontier.front();
    frontier.pop();
    if (c == to) break;
    for (Direction d : kAllDirections) {
      if (!maze.is_open(c, d)) continue;
      const Cell nb = step(c, d);
      if (seen[idx(nb)]) continue;
      seen[idx(nb)] = true;
      came_by[idx(nb)] = static_cast<int>(d);
      frontier.push(nb);
    }
  }

  std::vector<Direction> path;
  for (Cell c = to; !(c == from);) {
    const auto d = static_cast<Direction>(came_by[idx(c)]);
    path.push_back(d);
    c = step(c, opposite(d));
  }
  std::reverse(path.begin(), path.end());
  return path;
}

int shortest_path_length(const Maze& maze, Cell from, Cell to) {
  return static_cast<int>(tree_path(maze, from, to).size());
}

namespace {

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

Maze parse_maze(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string header;
  if (!std::getline(in, header)) throw MazeError("malformed grid: missing header line");
  std::istringstream hs(header);
  int m = 0;
  Cell start, goal;
  if (!(hs >> m >> start.row >> start.col >> goal.row >> goal.col))
    throw MazeError("malformed grid: header must be `m i_s j_s i_f j_f`");
  std::string extra;
  if (hs >> extra) throw MazeError("malformed grid: trailing header fields");
  if (m < 2) throw MazeError("m must be >= 2");

  std::vector<std::uint8_t> open;
  open.reserve(static_cast<std::size_t>(m) * static_cast<std::size_t>(m));
  std::string line;
  for (int i = 0; i < m; ++i) {
    if (!std::getline(in, line)) throw MazeError("malformed grid: too few rows");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (static_cast<int>(line.size()) != m) throw MazeError("malformed grid: row width is not m");
    for (char ch : line) {
      const int v = hex_value(ch);
      if (v < 0) throw MazeError("malformed grid: non-hex cell character");
      open.push_back(static_cast<std::uint8_t>(v));
    }
  }
  while (std::getline(in, line)) {
    if (!line.empty() && line != "\r") throw MazeError("malformed grid: trailing content");
  }
  return Maze(m, std::move(open), start, goal);
}

std::string serialize_maze(const Maze& maze) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::ostringstream out;
  const int m = maze.size();
  out << m << ' ' << maze.start().row << ' ' << maze.start().col << ' ' << maze.goal().row << ' '
      << maze.goal().col << '\n';
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) out << kHex[maze.open_mask({i, j})];
    out << '\n';
  }
  return out.str();
}

}  // namespace gmaze
