#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gmaze/maze_circuits.hpp"
#include "gmaze/rev_circuit.hpp"

namespace gmaze {

struct StageCosts {
  GateCounts path_simulation;
  GateCounts distance_fitness;
  GateCounts comparator;
};

/// Cost of one diffuser on 2n qubits, kept out of the oracle rows. The
/// multi-controlled Z is expanded as a V-chain of 2c-3 Toffolis for c >= 2 controls.
struct DiffuserCost {
  std::size_t hadamard = 0;
  std::size_t not_gates = 0;
  std::size_t controls = 0;
  std::size_t toffoli = 0;
};

struct ResourceReport {
  int length = 0;
  int grid_size = 0;
  RegisterLayout widths;
  int fitness_exponent = 0;  // r in C = 2^r
  std::size_t ancilla = 0;  // predicted budget, or measured high-water
  StageCosts stages;        // forward (compute) halves only
  std::size_t depth = 0;    // full oracle circuit; 0 in predictions
  DiffuserCost diffuser;

  std::size_t total_qubits() const;
};

/// Register widths and stage costs from closed-form counts of this library's
/// constructions. Comparator and distance/fitness Toffoli figures are upper bounds
/// (the exact count depends on the constant bits); the rest are exact for start (0,0).
ResourceReport predict(int length, int grid_size);

/// Counts taken from an oracle circuit actually built for start (0,0), goal (m-1,m-1), cutoff 0.
ResourceReport measure_resources(int length, int grid_size);

DiffuserCost diffuser_cost(int length);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual_ratio = 0.0;  // max |residual| / max |y|
  bool linear = false;          // residual_ratio < kLinearFitTolerance
};

inline constexpr double kLinearFitTolerance = 0.05;

/// Least-squares y = a x + b. Throws std::invalid_argument with fewer than 3 points.
LinearFit check_asymptotics(const std::vector<std::pair<double, double>>& points);

/// (width, Toffoli count) for the register-cutoff comparator.
std::vector<std::pair<double, double>> comparator_sweep(int min_width, int max_width);
/// (n, path-simulation Toffoli count) at fixed m.
std::vector<std::pair<double, double>> path_simulation_sweep(int grid_size, int min_length, int max_length);

std::string resources_json(const ResourceReport& predicted, const ResourceReport& actual, const LinearFit& comparator,
                           const LinearFit& path_simulation);
std::string resources_table(const ResourceReport& predicted, const ResourceReport& actual, const LinearFit& comparator,
                            const LinearFit& path_simulation);

}  // namespace gmaze
