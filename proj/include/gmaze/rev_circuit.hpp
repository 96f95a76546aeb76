#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace gmaze {

using Bit = std::uint32_t;
using Bits = std::vector<Bit>;  // least significant bit first

/// X: flip `target` when every control is 1 (NOT, CNOT, Toffoli).
/// Z: multiply the basis state by -1 when every control and the target are 1.
enum class GateKind : std::uint8_t { X, Z };

struct Gate {
  GateKind kind = GateKind::X;
  std::uint8_t num_controls = 0;
  std::array<Bit, 2> controls{};
  Bit target = 0;
};

enum class RegisterRole { Path, PositionI, PositionJ, Distance, Fitness, Flag, Ancilla, Constant, Operand };

std::string_view role_name(RegisterRole role);

struct Register {
  std::string name;
  Bit offset = 0;
  int width = 0;
  RegisterRole role = RegisterRole::Operand;

  Bit bit(int i) const { return offset + static_cast<Bit>(i); }
  Bits bits() const;
};

/// A named, contiguous range of gates (e.g. "path-simulation").
struct Stage {
  std::string name;
  std::size_t begin = 0;
  std::size_t end = 0;
};

/// Ordered list of self-inverse classical gates over named registers, plus Z
/// markers that contribute a per-basis-state sign. Every circuit is a bijection
/// on basis states.
class RevCircuit {
 public:
  RevCircuit() = default;

  const std::vector<Gate>& gates() const { return gates_; }
  const std::vector<Register>& registers() const { return registers_; }
  const std::vector<Stage>& stages() const { return stages_; }
  std::size_t width() const { return width_; }

  bool has_register(std::string_view name) const;
  /// Throws std::out_of_range for unknown names.
  const Register& reg(std::string_view name) const;

  /// Bits that must be zero before and after a compute-use-uncompute build.
  Bits workspace_bits() const;
  /// Bits of registers with RegisterRole::Ancilla.
  std::size_t ancilla_count() const;
  /// Gate indices of Z markers.
  std::vector<std::size_t> phase_markers() const;

  /// Reversed gate order. Every gate is an involution, so this is the exact inverse.
  RevCircuit inverse() const;

  /// Runs `other` after this one. Both must share the same register layout.
  RevCircuit then(const RevCircuit& other) const;

 private:
  friend class CircuitBuilder;
  std::vector<Gate> gates_;
  std::vector<Register> registers_;
  std::vector<Stage> stages_;
  std::size_t width_ = 0;
};

/// Full assignment of every circuit bit, index = Bit.
using BasisState = std::vector<std::uint8_t>;

struct BasisResult {
  BasisState bits;
  int sign = 1;
};

/// Throws std::invalid_argument on width mismatch.
BasisResult run_on_basis(const RevCircuit& circuit, BasisState input);

/// Helpers for reading and writing register values in a basis state.
std::uint64_t read_register(const BasisState& state, const Register& reg);
void write_register(BasisState& state, const Register& reg, std::uint64_t value);
/// Two's-complement reading.
std::int64_t read_signed(const BasisState& state, const Register& reg);

struct GateCounts {
  std::size_t toffoli = 0;
  std::size_t cnot = 0;
  std::size_t not_gates = 0;
  std::size_t phase = 0;
  std::size_t ancilla_high_water = 0;
  std::size_t depth = 0;

  std::size_t total() const { return toffoli + cnot + not_gates + phase; }
  /// Gate tallies add; ancilla takes the max; depth adds (serial composition bound).
  GateCounts& operator+=(const GateCounts& o);
  friend GateCounts operator+(GateCounts a, const GateCounts& b) { return a += b; }
  friend bool operator==(const GateCounts&, const GateCounts&) = default;
};

GateCounts count_gates(const RevCircuit& circuit);
/// Tallies over every stage with exactly this name. Depth is of that gate subset.
GateCounts count_gates(const RevCircuit& circuit, std::string_view stage);

/// One gate per line: `GATE target controls...`, preceded by `# register` lines.
std::string circuit_text(const RevCircuit& circuit);
std::string gate_counts_json(const GateCounts& counts);

/// Incremental construction with a reusable ancilla pool. Released ancillas
/// must already be back at zero; tests check this on every basis input.
class CircuitBuilder {
 public:
  Register add_register(std::string name, int width, RegisterRole role);

  Bits acquire(int count);
  Bit acquire_one() { return acquire(1).front(); }
  void release(const Bits& bits);
  void release(Bit bit) { release(Bits{bit}); }

  void x(Bit target);
  void cx(Bit control, Bit target);
  void ccx(Bit c1, Bit c2, Bit target);
  void z(Bit target);

  std::size_t mark() const { return circuit_.gates_.size(); }
  /// Appends the inverse of gates [begin, end).
  void append_inverse(std::size_t begin, std::size_t end);
  /// Replaces gates [begin, mark()) with their inverse.
  void invert_since(std::size_t begin);

  void begin_stage(std::string name);
  void end_stage();

  const RevCircuit& peek() const { return circuit_; }
  RevCircuit finish();

 private:
  void push(Gate g);

  RevCircuit circuit_;
  std::vector<Bit> free_ancillas_;
  int ancilla_serial_ = 0;
  std::vector<Stage> open_stages_;
};

}  // namespace gmaze
