#include "gmaze/rev_circuit.hpp"

#include <algorithm>
#include "json.hpp"
#include <sstream>
#include <stdexcept>

namespace gmaze {

std::string_view role_name(RegisterRole role) {
  switch (role) {
    case RegisterRole::Path: return "path";
    case RegisterRole::PositionI: return "position-i";
    case RegisterRole::PositionJ: return "position-j";
    case RegisterRole::Distance: return "distance";
    case RegisterRole::Fitness: return "fitness";
    case RegisterRole::Flag: return "flag";
    case RegisterRole::Ancilla: return "ancilla";
    case RegisterRole::Constant: return "constant";
    case RegisterRole::Operand: return "operand";
  }
  return "?";
}

Bits Register::bits() const {
  Bits out(static_cast<std::size_t>(width));
  for (int i = 0; i < width; ++i) out[static_cast<std::size_t>(i)] = bit(i);
  return out;
}

bool RevCircuit::has_register(std::string_view name) const {
  return std::any_of(registers_.begin(), registers_.end(), [&](const Register& r) { return r.name == name; });
}

const Register& RevCircuit::reg(std::string_view name) const {
  for (const auto& r : registers_) {
    if (r.name == name) return r;
  }
  throw std::out_of_range("no register named " + std::string(name));
}

Bits RevCircuit::workspace_bits() const {
  Bits out;
  for (const auto& r : registers_) {
    switch (r.role) {
      case RegisterRole::PositionI:
      case RegisterRole::PositionJ:
      case RegisterRole::Distance:
      case RegisterRole::Ancilla:
      case RegisterRole::Constant:
        for (int i = 0; i < r.width; ++i) out.push_back(r.bit(i));
        break;
      default:
        break;
    }
  }
  return out;
}

std::size_t RevCircuit::ancilla_count() const {
  std::size_t n = 0;
  for (const auto& r : registers_) {
    if (r.role == RegisterRole::Ancilla) n += static_cast<std::size_t>(r.width);
  }
  return n;
}

std::vector<std::size_t> RevCircuit::phase_markers() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < gates_.size(); ++i) {
    if (gates_[i].kind == GateKind::Z) out.push_back(i);
  }
  return out;
}

RevCircuit RevCircuit::inverse() const {
  RevCircuit inv = *this;
  std::reverse(inv.gates_.begin(), inv.gates_.end());
  const std::size_t total = gates_.size();
  for (auto& s : inv.stages_) s = Stage{s.name, total - s.end, total - s.begin};
  std::reverse(inv.stages_.begin(), inv.stages_.end());
  return inv;
}

RevCircuit RevCircuit::then(const RevCircuit& other) const {
  if (other.width_ != width_) throw std::invalid_argument("circuits have different widths");
  RevCircuit out = *this;
  const std::size_t shift = gates_.size();
  out.gates_.insert(out.gates_.end(), other.gates_.begin(), other.gates_.end());
  for (const auto& s : other.stages_) out.stages_.push_back({s.name, s.begin + shift, s.end + shift});
  return out;
}

BasisResult run_on_basis(const RevCircuit& circuit, BasisState input) {
  if (input.size() != circuit.width())
    throw std::invalid_argument("basis state has " + std::to_string(input.size()) + " bits, circuit has " +
                                std::to_string(circuit.width()));
  BasisResult result{std::move(input), 1};
  auto& s = result.bits;
  for (const Gate& g : circuit.gates()) {
    bool active = true;
    for (std::uint8_t c = 0; c < g.num_controls; ++c) active = active && s[g.controls[c]] != 0;
    if (!active) continue;
    if (g.kind == GateKind::X) {
      s[g.target] ^= 1U;
    } else if (s[g.target] != 0) {
      result.sign = -result.sign;
    }
  }
  return result;
}

std::uint64_t read_register(const BasisState& state, const Register& reg) {
  std::uint64_t v = 0;
  for (int i = reg.width - 1; i >= 0; --i) v = (v << 1) | (state.at(reg.bit(i)) & 1U);
  return v;
}

void write_register(BasisState& state, const Register& reg, std::uint64_t value) {
  for (int i = 0; i < reg.width; ++i) state.at(reg.bit(i)) = static_cast<std::uint8_t>((value >> i) & 1U);
}

std::int64_t read_signed(const BasisState& state, const Register& reg) {
  const std::uint64_t raw = read_register(state, reg);
  if (reg.width >= 64) return static_cast<std::int64_t>(raw);
  const std::uint64_t sign = std::uint64_t{1} << (reg.width - 1);
  return (raw & sign) ? static_cast<std::int64_t>(raw) - static_cast<std::int64_t>(sign << 1)
                      : static_cast<std::int64_t>(raw);
}

GateCounts& GateCounts::operator+=(const GateCounts& o) {
  toffoli += o.toffoli;
  cnot += o.cnot;
  not_gates += o.not_gates;
  phase += o.phase;
  ancilla_high_water = std::max(ancilla_high_water, o.ancilla_high_water);
  depth += o.depth;
  return *this;
}

namespace {

GateCounts tally(const RevCircuit& circuit, const std::vector<std::pair<std::size_t, std::size_t>>& ranges) {
  GateCounts c;
  std::vector<std::size_t> layer(circuit.width(), 0);
  for (auto [begin, end] : ranges) {
    for (std::size_t i = begin; i < end; ++i) {
      const Gate& g = circuit.gates()[i];
      if (g.kind == GateKind::Z) {
        ++c.phase;
      } else if (g.num_controls == 0) {
        ++c.not_gates;
      } else if (g.num_controls == 1) {
        ++c.cnot;
      } else {
        ++c.toffoli;
      }
      std::size_t level = layer[g.target];
      for (std::uint8_t k = 0; k < g.num_controls; ++k) level = std::max(level, layer[g.controls[k]]);
      ++level;
      layer[g.target] = level;
      for (std::uint8_t k = 0; k < g.num_controls; ++k) layer[g.controls[k]] = level;
      c.depth = std::max(c.depth, level);
    }
  }
  c.ancilla_high_water = circuit.ancilla_count();
  return c;
}

}  // namespace

GateCounts count_gates(const RevCircuit& circuit) { return tally(circuit, {{0, circuit.gates().size()}}); }

GateCounts count_gates(const RevCircuit& circuit, std::string_view stage) {
  std::vector<std::pair<std::size_t, std::size_t>> ranges;
  for (const auto& s : circuit.stages()) {
    if (s.name == stage) ranges.emplace_back(s.begin, s.end);
  }
  return tally(circuit, ranges);
}

std::string circuit_text(const RevCircuit& circuit) {
  std::ostringstream out;
  for (const auto& r : circuit.registers())
    out << "# register " << r.name << ' ' << r.offset << ' ' << r.width << ' ' << role_name(r.role) << '\n';
  for (const Gate& g : circuit.gates()) {
    if (g.kind == GateKind::Z) {
      out << (g.num_controls == 0 ? "Z" : "CZ");
    } else {
      static constexpr const char* kNames[] = {"X", "CX", "CCX"};
      out << kNames[g.num_controls];
    }
    out << ' ' << g.target;
    for (std::uint8_t k = 0; k < g.num_controls; ++k) out << ' ' << g.controls[k];
    out << '\n';
  }
  return out.str();
}

std::string gate_counts_json(const GateCounts& c) {
  nlohmann::ordered_json j;
  j["toffoli"] = c.toffoli;
  j["cnot"] = c.cnot;
  j["not"] = c.not_gates;
  j["phase"] = c.phase;
  j["ancilla_high_water"] = c.ancilla_high_water;
  j["depth"] = c.depth;
  return j.dump(2);
}

Register CircuitBuilder::add_register(std::string name, int width, RegisterRole role) {
  if (width < 0) throw std::invalid_argument("register width must be non-negative");
  if (circuit_.has_register(name)) throw std::invalid_argument("duplicate register " + name);
  Register r{std::move(name), static_cast<Bit>(circuit_.width_), width, role};
  circuit_.width_ += static_cast<std::size_t>(width);
  circuit_.registers_.push_back(r);
  return r;
}

Bits CircuitBuilder::acquire(int count) {
  Bits out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    if (!free_ancillas_.empty()) {
      out.push_back(free_ancillas_.back());
      free_ancillas_.pop_back();
    } else {
      out.push_back(add_register("anc" + std::to_string(ancilla_serial_++), 1, RegisterRole::Ancilla).offset);
    }
  }
  return out;
}

void CircuitBuilder::release(const Bits& bits) {
  // Reverse order so a release/acquire pair hands back the same bits.
  free_ancillas_.insert(free_ancillas_.end(), bits.rbegin(), bits.rend());
}

void CircuitBuilder::push(Gate g) {
  const auto check = [this](Bit b) {
    if (b >= circuit_.width_) throw std::out_of_range("gate references an unallocated bit");
  };
  check(g.target);
  for (std::uint8_t k = 0; k < g.num_controls; ++k) {
    check(g.controls[k]);
    if (g.controls[k] == g.target) throw std::invalid_argument("gate control equals target");
  }
  if (g.num_controls == 2 && g.controls[0] == g.controls[1])
    throw std::invalid_argument("repeated gate control");
  circuit_.gates_.push_back(g);
}

void CircuitBuilder::x(Bit target) { push({GateKind::X, 0, {}, target}); }
void CircuitBuilder::cx(Bit control, Bit target) { push({GateKind::X, 1, {control, 0}, target}); }
void CircuitBuilder::ccx(Bit c1, Bit c2, Bit target) { push({GateKind::X, 2, {c1, c2}, target}); }
void CircuitBuilder::z(Bit target) { push({GateKind::Z, 0, {}, target}); }

void CircuitBuilder::append_inverse(std::size_t begin, std::size_t end) {
  if (begin > end || end > circuit_.gates_.size()) throw std::out_of_range("bad gate range");
  auto& g = circuit_.gates_;
  g.reserve(g.size() + (end - begin));
  for (std::size_t i = end; i > begin; --i) g.push_back(g[i - 1]);
}

void CircuitBuilder::invert_since(std::size_t begin) {
  auto& g = circuit_.gates_;
  std::reverse(g.begin() + static_cast<std::ptrdiff_t>(begin), g.end());
}

void CircuitBuilder::begin_stage(std::string name) { open_stages_.push_back({std::move(name), mark(), mark()}); }

void CircuitBuilder::end_stage() {
  if (open_stages_.empty()) throw std::logic_error("end_stage without begin_stage");
  Stage s = std::move(open_stages_.back());
  open_stages_.pop_back();
  s.end = mark();
  circuit_.stages_.push_back(std::move(s));
}

RevCircuit CircuitBuilder::finish() {
  if (!open_stages_.empty()) throw std::logic_error("unclosed stage " + open_stages_.back().name);
  return std::move(circuit_);
}

}  // namespace gmaze
