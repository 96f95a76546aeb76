#include "gmaze/maze.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "gmaze/path_codec.hpp"
#include "oracles.hpp"

namespace gmaze {
namespace {

Maze worked_example() {
  std::ifstream in(oracle::data_path("worked_example.maze"));
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_maze(buf.str());
}

std::string parse_error(const std::string& text) {
  try {
    parse_maze(text);
  } catch (const MazeError& e) {
    return e.what();
  }
  return "";
}

TEST(Maze, WorkedExampleParses) {
  const Maze m = worked_example();
  EXPECT_EQ(m.size(), 2);
  EXPECT_EQ(m.start(), (Cell{0, 0}));
  EXPECT_EQ(m.goal(), (Cell{1, 1}));
  EXPECT_EQ(m.passage_count(), 3u);
  EXPECT_TRUE(m.is_open({0, 0}, Direction::S));
  EXPECT_TRUE(m.is_open({0, 0}, Direction::E));
  EXPECT_TRUE(m.is_open({1, 0}, Direction::E));
  EXPECT_FALSE(m.is_open({0, 1}, Direction::S));
  EXPECT_TRUE(oracle::is_perfect(m));
}

TEST(Maze, SerializeRoundTrip) {
  const Maze m = worked_example();
  EXPECT_EQ(serialize_maze(m), "2 0 0 1 1\n61\nC1\n");
  EXPECT_EQ(parse_maze(serialize_maze(m)), m);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Maze g = generate_maze(7, seed);
    EXPECT_EQ(parse_maze(serialize_maze(g)), g);
  }
}

TEST(Maze, LowercaseHexAccepted) { EXPECT_EQ(parse_maze("2 0 0 1 1\n61\nc1\n"), worked_example()); }

TEST(Maze, ParseRejectsNamedInvariants) {
  // 2x2 ring: four passages, one cycle.
  EXPECT_NE(parse_error("2 0 0 1 1\n63\nC9\n").find("not a tree"), std::string::npos);
  // (0,1) and (1,1) isolated from the rest: two passages.
  EXPECT_NE(parse_error("2 0 0 1 1\n20\n80\n").find("not a tree"), std::string::npos);
  EXPECT_NE(parse_error("2 0 0 1 1\n41\nC1\n").find("asymmetric"), std::string::npos);
  EXPECT_NE(parse_error("2 0 0 2 1\n61\nC1\n").find("goal cell out of range"), std::string::npos);
  EXPECT_NE(parse_error("2 -1 0 1 1\n61\nC1\n").find("start cell out of range"), std::string::npos);
  EXPECT_NE(parse_error("2 0 0 0 0\n61\nC1\n").find("start and goal must differ"), std::string::npos);
  EXPECT_NE(parse_error("2 0 0 1 1\n61\n").find("malformed"), std::string::npos);
  EXPECT_NE(parse_error("2 0 0 1 1\n6G\nC1\n").find("malformed"), std::string::npos);
  EXPECT_NE(parse_error("2 0 0 1 1\n611\nC1\n").find("malformed"), std::string::npos);
  EXPECT_NE(parse_error("1 0 0 0 0\n0\n").find("m must be"), std::string::npos);
  // Passage through the outer border.
  EXPECT_NE(parse_error("2 0 0 1 1\nE1\nC1\n").find("leaves the grid"), std::string::npos);
}

TEST(Maze, GenerateSmall) {
  const Maze a = generate_maze(2, 7);
  EXPECT_EQ(oracle::open_edges(a).size(), 3u);
  EXPECT_EQ(a, generate_maze(2, 7));
  EXPECT_THROW(generate_maze(1, 7), std::invalid_argument);
}

TEST(Maze, GeneratedMazesArePerfect) {
  for (int m = 2; m <= 16; ++m) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const Maze g = generate_maze(m, seed);
      EXPECT_TRUE(oracle::is_perfect(g)) << "m=" << m << " seed=" << seed;
      EXPECT_EQ(g.passage_count(), static_cast<std::size_t>(m * m - 1));
    }
  }
}

TEST(Maze, EightByEightAllPairsConnectedByBfs) {
  const Maze g = generate_maze(8, 1);
  for (int a = 0; a < 64; ++a) {
    for (int b = 0; b < 64; ++b) {
      const Cell ca{a / 8, a % 8}, cb{b / 8, b % 8};
      const int d = oracle::bfs_distance(g, ca, cb);
      ASSERT_GE(d, 0);
      EXPECT_EQ(shortest_path_length(g, ca, cb), d);
    }
  }
}

TEST(Maze, SeedsChangeTheMaze) {
  int distinct = 0;
  const Maze base = generate_maze(8, 1);
  for (std::uint64_t s = 2; s < 12; ++s) distinct += generate_maze(8, s) == base ? 0 : 1;
  EXPECT_EQ(distinct, 10);
}

TEST(Maze, TransitionModes) {
  const Maze m = worked_example();
  EXPECT_EQ(transition(m, {0, 0}, Direction::S, SimMode::WallAware), (Cell{1, 0}));
  EXPECT_EQ(transition(m, {0, 0}, Direction::N, SimMode::BoundsOnly), std::nullopt);
  EXPECT_EQ(transition(m, {0, 0}, Direction::N, SimMode::WallBlind), (Cell{-1, 0}));
  // (0,1)-(1,1) is a wall: blocked only when walls count.
  EXPECT_EQ(transition(m, {0, 1}, Direction::S, SimMode::WallAware), std::nullopt);
  EXPECT_EQ(transition(m, {0, 1}, Direction::S, SimMode::BoundsOnly), (Cell{1, 1}));
}

TEST(Maze, SimulatePath) {
  const Maze m = worked_example();
  const Trajectory se = simulate_path(m, {Direction::S, Direction::E}, SimMode::WallAware);
  EXPECT_EQ(se.end(), (Cell{1, 1}));
  EXPECT_FALSE(se.failed_step);
  EXPECT_EQ(se.cells.size(), 3u);

  const Trajectory empty = simulate_path(m, {}, SimMode::WallAware);
  EXPECT_EQ(empty.end(), m.start());

  const Trajectory nn = simulate_path(m, {Direction::N, Direction::N}, SimMode::BoundsOnly);
  ASSERT_TRUE(nn.failed_step);
  EXPECT_EQ(*nn.failed_step, 1u);
  EXPECT_EQ(nn.end(), (Cell{0, 0}));

  // Frozen after a block: later legal moves are ignored.
  const Trajectory frozen = simulate_path(m, {Direction::N, Direction::S}, SimMode::WallAware);
  EXPECT_EQ(frozen.end(), (Cell{0, 0}));

  const Trajectory blind = simulate_path(m, {Direction::N, Direction::W}, SimMode::WallBlind);
  EXPECT_EQ(blind.end(), (Cell{-1, -1}));
}

TEST(Maze, ShortestPath) {
  const Maze m = worked_example();
  EXPECT_EQ(shortest_path_length(m, {0, 0}, {0, 0}), 0);
  EXPECT_EQ(shortest_path_length(m, {0, 0}, {1, 1}), 2);
  EXPECT_EQ(path_letters(tree_path(m, {0, 0}, {1, 1})), "SE");
  // ES crosses the (0,1)-(1,1) wall.
  EXPECT_EQ(shortest_path_length(m, {0, 1}, {1, 1}), 3);
}

TEST(Maze, TreePathWalksToTarget) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Maze g = generate_maze(8, seed);
    const auto path = tree_path(g, g.start(), g.goal());
    const Trajectory t = simulate_path(g, path, SimMode::WallAware);
    EXPECT_FALSE(t.failed_step);
    EXPECT_EQ(t.end(), g.goal());
    EXPECT_EQ(static_cast<int>(path.size()), oracle::bfs_distance(g, g.start(), g.goal()));
  }
}

}  // namespace
}  // namespace gmaze
