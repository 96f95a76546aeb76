#include "gmaze/maze_circuits.hpp"

#include <limits>
#include <stdexcept>

#include "gmaze/arithmetic.hpp"

namespace gmaze {

namespace {

int ceil_log2(std::int64_t x) {
  int k = 0;
  while ((std::int64_t{1} << k) < x) ++k;
  return k;
}

void check_geometry(const ProblemGeometry& geo) {
  if (geo.grid_size < 2) throw std::invalid_argument("m must be >= 2");
  if (geo.length < 1) throw std::invalid_argument("circuits need path length >= 1");
  if (geo.length > kMaxCircuitLength || geo.grid_size > kMaxCircuitGridSize)
    throw std::length_error("register cap exceeded: n <= " + std::to_string(kMaxCircuitLength) +
                            ", m <= " + std::to_string(kMaxCircuitGridSize));
  auto inside = [&](Cell c) { return c.row >= 0 && c.col >= 0 && c.row < geo.grid_size && c.col < geo.grid_size; };
  if (!inside(geo.start) || !inside(geo.goal)) throw std::invalid_argument("start/goal outside the grid");
}

struct Positions {
  Register i;
  Register j;
};

// One move: four doubly-controlled +-1 updates selected by the 2-bit slice of step k (1-based).
void simulate_step(CircuitBuilder& b, const Register& path, int length, int k, const Positions& pos) {
  const Bit hi = path.bit(2 * (length - k) + 1);
  const Bit lo = path.bit(2 * (length - k));
  struct Update {
    const Register* target;
    std::int64_t delta;
  };
  const Update updates[4] = {{&pos.i, -1}, {&pos.j, +1}, {&pos.i, +1}, {&pos.j, -1}};  // N E S W
  for (unsigned code = 0; code < 4; ++code) {
    const Bit match = b.acquire_one();
    auto decode = [&] {
      if (!(code & 2U)) b.x(hi);
      if (!(code & 1U)) b.x(lo);
      b.ccx(hi, lo, match);
      if (!(code & 2U)) b.x(hi);
      if (!(code & 1U)) b.x(lo);
    };
    decode();
    add_constant(b, updates[code].target->bits(), updates[code].delta, {match});
    decode();
    b.release(match);
  }
}

void load_start(CircuitBuilder& b, const ProblemGeometry& geo, const Positions& pos) {
  load_constant(b, pos.i.bits(), static_cast<std::uint64_t>(geo.start.row + geo.length));
  load_constant(b, pos.j.bits(), static_cast<std::uint64_t>(geo.start.col + geo.length));
}

struct FitnessRegisters {
  Register path;
  Register fitness;
  std::size_t begin = 0;
  std::size_t end = 0;
};

FitnessRegisters emit_fitness(CircuitBuilder& b, const ProblemGeometry& geo, const FitnessSpec& spec) {
  check_geometry(geo);
  if (spec.formula != FitnessFormula::PowerOfTwo)
    throw std::invalid_argument("the fitness circuit implements the C - d formula only");
  if (spec.grid_size != geo.grid_size) throw std::invalid_argument("fitness spec built for a different m");

  const RegisterLayout layout = register_layout(geo.grid_size, geo.length, spec);
  const int n = geo.length;
  FitnessRegisters out;
  out.path = b.add_register("path", layout.path, RegisterRole::Path);
  const Positions pos{b.add_register("i", layout.position, RegisterRole::PositionI),
                      b.add_register("j", layout.position, RegisterRole::PositionJ)};
  const Register di = b.add_register("di", layout.position, RegisterRole::Ancilla);
  const Register dj = b.add_register("dj", layout.position, RegisterRole::Ancilla);
  const Register sign_i = b.add_register("sign_i", 1, RegisterRole::Ancilla);
  const Register sign_j = b.add_register("sign_j", 1, RegisterRole::Ancilla);
  const Register dist = b.add_register("dist", layout.distance, RegisterRole::Distance);
  out.fitness = b.add_register("fitness", layout.fitness, RegisterRole::Fitness);

  out.begin = b.mark();
  b.begin_stage("path-simulation");
  const std::size_t sim_begin = b.mark();
  load_start(b, geo, pos);
  for (int k = 1; k <= n; ++k) simulate_step(b, out.path, n, k, pos);
  const std::size_t sim_end = b.mark();
  b.end_stage();

  b.begin_stage("distance");
  const std::size_t dist_begin = b.mark();
  copy_bits(b, di.bits(), pos.i.bits());
  add_constant(b, di.bits(), -(geo.goal.row + n));
  abs_in_place(b, di.bits(), sign_i.bit(0));
  copy_bits(b, dj.bits(), pos.j.bits());
  add_constant(b, dj.bits(), -(geo.goal.col + n));
  abs_in_place(b, dj.bits(), sign_j.bit(0));
  square_into(b, dist.bits(), di.bits());
  square_into(b, dist.bits(), dj.bits());
  const std::size_t dist_end = b.mark();
  b.end_stage();

  b.begin_stage("fitness");
  load_constant(b, out.fitness.bits(), static_cast<std::uint64_t>(spec.offset));
  add_register(b, out.fitness.bits(), dist.bits(), /*subtract=*/true);
  b.end_stage();

  b.begin_stage("distance-uncompute");
  b.append_inverse(dist_begin, dist_end);
  b.end_stage();
  b.begin_stage("path-simulation-uncompute");
  b.append_inverse(sim_begin, sim_end);
  b.end_stage();
  out.end = b.mark();
  return out;
}

}  // namespace

ProblemGeometry geometry_of(const Maze& maze, int length) {
  return {maze.size(), length, maze.start(), maze.goal()};
}

int position_width(int grid_size, int length) { return ceil_log2(grid_size + 2 * length) + 1; }

int fitness_register_width(int grid_size, int length, std::int64_t offset) {
  const std::int64_t reach = length + grid_size - 1;
  const std::int64_t max_distance = 2 * reach * reach;
  int w = 2;
  while (!((std::int64_t{1} << (w - 1)) > offset && (std::int64_t{1} << (w - 1)) >= max_distance - offset)) ++w;
  return w;
}

RegisterLayout register_layout(int grid_size, int length, const FitnessSpec& spec) {
  RegisterLayout layout;
  layout.path = 2 * length;
  layout.position = position_width(grid_size, length);
  layout.distance = 2 * layout.position + 1;
  layout.fitness = fitness_register_width(grid_size, length, spec.offset);
  layout.flag = 1;
  return layout;
}

RevCircuit build_fitness_circuit(const ProblemGeometry& geo, const FitnessSpec& spec) {
  CircuitBuilder b;
  emit_fitness(b, geo, spec);
  return b.finish();
}

RevCircuit build_oracle_circuit(const ProblemGeometry& geo, const FitnessSpec& spec, std::int64_t cutoff) {
  CircuitBuilder b;
  const FitnessRegisters fr = emit_fitness(b, geo, spec);
  const Register flag = b.add_register("flag", 1, RegisterRole::Flag);

  // Signed comparison as unsigned on biased values: flipping the sign bit adds 2^(w-1).
  const int w = fr.fitness.width;
  const std::int64_t bias = std::int64_t{1} << (w - 1);
  const std::int64_t biased = cutoff < -bias ? -1 : cutoff + bias;
  const Bit msb = fr.fitness.bit(w - 1);

  b.begin_stage("comparator");
  const std::size_t cmp_begin = b.mark();
  b.x(msb);
  greater_than_constant(b, fr.fitness.bits(), biased, flag.bit(0));
  b.x(msb);
  const std::size_t cmp_end = b.mark();
  b.end_stage();

  b.begin_stage("phase");
  b.z(flag.bit(0));
  b.end_stage();

  b.begin_stage("comparator-uncompute");
  b.append_inverse(cmp_begin, cmp_end);
  b.end_stage();
  b.begin_stage("fitness-operator-uncompute");
  b.append_inverse(fr.begin, fr.end);
  b.end_stage();
  return b.finish();
}

RevCircuit build_validity_circuit(const ProblemGeometry& geo) {
  check_geometry(geo);
  const int n = geo.length;
  const int m = geo.grid_size;
  CircuitBuilder b;
  const Register path = b.add_register("path", 2 * n, RegisterRole::Path);
  const Positions pos{b.add_register("i", position_width(m, n), RegisterRole::PositionI),
                      b.add_register("j", position_width(m, n), RegisterRole::PositionJ)};
  const Register valid = b.add_register("valid", 1, RegisterRole::Flag);

  const std::size_t begin = b.mark();
  load_start(b, geo, pos);
  Bits running;  // running[k] = positions after steps 1..k all in bounds
  running.push_back(b.acquire_one());
  b.x(running.back());
  for (int k = 1; k <= n; ++k) {
    b.begin_stage("path-simulation");
    simulate_step(b, path, n, k, pos);
    b.end_stage();

    b.begin_stage("bounds-check");
    const Bit next = b.acquire_one();
    const std::size_t check_begin = b.mark();
    // In bounds on an axis: offset coordinate > n-1 and not > n+m-1.
    const Bits above = b.acquire(4);
    greater_than_constant(b, pos.i.bits(), n - 1, above[0]);
    greater_than_constant(b, pos.i.bits(), n + m - 1, above[1]);
    greater_than_constant(b, pos.j.bits(), n - 1, above[2]);
    greater_than_constant(b, pos.j.bits(), n + m - 1, above[3]);
    const Bits in = b.acquire(3);
    b.x(above[1]);
    b.ccx(above[0], above[1], in[0]);
    b.x(above[1]);
    b.x(above[3]);
    b.ccx(above[2], above[3], in[1]);
    b.x(above[3]);
    b.ccx(in[0], in[1], in[2]);
    const std::size_t check_end = b.mark();
    b.ccx(in[2], running.back(), next);
    b.append_inverse(check_begin, check_end);
    b.release(in);
    b.release(above);
    running.push_back(next);
    b.end_stage();
  }
  const std::size_t end = b.mark();
  b.cx(running.back(), valid.bit(0));
  b.begin_stage("validity-uncompute");
  b.append_inverse(begin, end);
  b.end_stage();
  b.release(running);
  return b.finish();
}

BasisState path_input(const RevCircuit& circuit, std::uint64_t path_index) {
  BasisState state(circuit.width(), 0);
  write_register(state, circuit.reg("path"), path_index);
  return state;
}

}  // namespace gmaze
