#pragma once

#include <cstdint>

#include "gmaze/rev_circuit.hpp"

namespace gmaze {

// In-place reversible arithmetic on bit spans (LSB first). All workspace is
// taken from the builder's ancilla pool and returned to it clean.

/// target += addend (mod 2^|target|), Cuccaro ripple-carry. A shorter addend is
/// zero-extended; a longer one is truncated. `subtract` emits the inverse.
void add_register(CircuitBuilder& b, const Bits& target, const Bits& addend, bool subtract = false);

/// target += control ? addend : 0.
void controlled_add_register(CircuitBuilder& b, const Bits& target, const Bits& addend, Bit control,
                             bool subtract = false);

/// target += constant (mod 2^|target|). `controls` holds zero or one bit.
void add_constant(CircuitBuilder& b, const Bits& target, std::int64_t constant, const Bits& controls = {});

/// dst ^= src, bitwise.
void copy_bits(CircuitBuilder& b, const Bits& dst, const Bits& src);
/// XOR a classical constant into a register.
void load_constant(CircuitBuilder& b, const Bits& dst, std::uint64_t constant);

/// out += a*a (mod 2^|out|) by schoolbook controlled shift-and-add. Requires |out| >= 2|a|.
void square_into(CircuitBuilder& b, const Bits& out, const Bits& a);

/// Two's-complement absolute value in place. `sign` (initially 0) receives the
/// original sign bit, which makes the map reversible.
void abs_in_place(CircuitBuilder& b, const Bits& value, Bit sign);

/// flag ^= [a > c], unsigned, following the MSB-first prefix-equality formula:
/// OR over i of a_i AND NOT c_i AND (a_j == c_j for all j > i).
void greater_than_constant(CircuitBuilder& b, const Bits& a, std::int64_t c, Bit flag);
/// Same formula with the cutoff held in a register of equal width.
void greater_than_register(CircuitBuilder& b, const Bits& a, const Bits& c, Bit flag);

/// flag ^= [a > c] via the borrow of a - c - 1 in a (|a|+1)-bit subtractor.
void greater_than_constant_subtractor(CircuitBuilder& b, const Bits& a, std::int64_t c, Bit flag);
void greater_than_register_subtractor(CircuitBuilder& b, const Bits& a, const Bits& c, Bit flag);

// Standalone circuits over operand registers, used for testing and resource sweeps.

/// Registers: "a" (addend), "b" (target), "ctl" (num_controls bits, 0..2).
RevCircuit build_adder(int width, bool subtract, int num_controls = 0);
/// Registers: "b" (target), "ctl".
RevCircuit build_constant_adder(int width, std::int64_t constant, bool subtract, int num_controls = 0);
/// Registers: "a" (width), "out" (out_width >= 2*width).
RevCircuit build_squarer(int width, int out_width = -1);

enum class CutoffSource { Constant, Register };
enum class ComparatorKind { PrefixEquality, Subtractor };

/// Registers: "f" (width), "flag", and "c" (width) for CutoffSource::Register.
/// `constant` is used only for CutoffSource::Constant.
RevCircuit build_gt_comparator(int width, CutoffSource source, std::int64_t constant = 0,
                               ComparatorKind kind = ComparatorKind::PrefixEquality);

}  // namespace gmaze
