#pragma once

#include <cstdint>

#include "gmaze/fitness.hpp"
#include "gmaze/maze.hpp"
#include "gmaze/rev_circuit.hpp"

namespace gmaze {

/// Longest path for which gate-level circuits are built.
inline constexpr int kMaxCircuitLength = 8;
inline constexpr int kMaxCircuitGridSize = 64;

/// Everything the gate-level circuits need: they ignore walls, so no Maze is required.
struct ProblemGeometry {
  int grid_size = 2;
  int length = 1;
  Cell start{0, 0};
  Cell goal{1, 1};
};

ProblemGeometry geometry_of(const Maze& maze, int length);

/// Register widths used by every builder below.
///
/// Positions are stored with an offset of n (coordinate i lives as i + n) so
/// unchecked moves never underflow; the extra bit doubles as a sign bit when
/// the goal is subtracted. The fitness register is two's complement and wide
/// enough for C and for C minus the largest reachable squared distance.
struct RegisterLayout {
  int path = 0;
  int position = 0;
  int distance = 0;
  int fitness = 0;
  int flag = 1;
};

int position_width(int grid_size, int length);
int fitness_register_width(int grid_size, int length, std::int64_t offset);
RegisterLayout register_layout(int grid_size, int length, const FitnessSpec& spec);

/// F: |x>|0>_f -> |x>|fitness(x)> with WallBlind semantics and every workspace
/// register returned to zero. Registers: "path", "i", "j", "di", "dj",
/// "sign_i", "sign_j", "dist", "fitness", plus pooled ancillas.
/// Stages: "path-simulation", "distance", "fitness", and their "-uncompute" twins.
RevCircuit build_fitness_circuit(const ProblemGeometry& geo, const FitnessSpec& spec);

/// Phase oracle: F, flag ^= [fitness > cutoff], Z on flag, then the comparator and
/// F undone. Net effect on |x>|0...0> is the sign (-1)^[fitness(x) > cutoff].
/// Adds register "flag" and stage "comparator".
RevCircuit build_oracle_circuit(const ProblemGeometry& geo, const FitnessSpec& spec, std::int64_t cutoff);

/// S: |x>|0>_v -> |x>|valid(x)>, valid meaning every position along the path stays
/// in [0, m-1]^2. Registers: "path", "i", "j", "valid", plus pooled ancillas.
RevCircuit build_validity_circuit(const ProblemGeometry& geo);

/// Basis state with `path` loaded into the path register and every other bit zero.
BasisState path_input(const RevCircuit& circuit, std::uint64_t path_index);

}  // namespace gmaze
