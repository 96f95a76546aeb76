#include "gmaze/arithmetic.hpp"

#include <stdexcept>

namespace gmaze {

namespace {

std::uint64_t mask_to(std::int64_t value, std::size_t width) {
  const auto v = static_cast<std::uint64_t>(value);
  return width >= 64 ? v : v & ((std::uint64_t{1} << width) - 1);
}

bool fits_unsigned(std::int64_t value, std::size_t width) {
  return value >= 0 && (width >= 63 || value < (std::int64_t{1} << width));
}

// Cuccaro majority / unmajority-and-add blocks.
void maj(CircuitBuilder& b, Bit x, Bit y, Bit z) {
  b.cx(z, y);
  b.cx(z, x);
  b.ccx(x, y, z);
}

void uma(CircuitBuilder& b, Bit x, Bit y, Bit z) {
  b.ccx(x, y, z);
  b.cx(z, x);
  b.cx(x, y);
}

// target += addend for equal widths, carry out discarded.
void cuccaro(CircuitBuilder& b, const Bits& target, const Bits& addend) {
  const std::size_t w = target.size();
  if (w == 0) return;
  const Bit carry = b.acquire_one();
  maj(b, carry, target[0], addend[0]);
  for (std::size_t i = 1; i < w; ++i) maj(b, addend[i - 1], target[i], addend[i]);
  for (std::size_t i = w - 1; i >= 1; --i) uma(b, addend[i - 1], target[i], addend[i]);
  uma(b, carry, target[0], addend[0]);
  b.release(carry);
}

void combine_controls(CircuitBuilder& b, const Register& ctl, Bit flag) {
  if (ctl.width == 1) {
    b.cx(ctl.bit(0), flag);
  } else {
    b.ccx(ctl.bit(0), ctl.bit(1), flag);
  }
}

}  // namespace

void add_register(CircuitBuilder& b, const Bits& target, const Bits& addend, bool subtract) {
  const std::size_t w = target.size();
  if (w == 0) return;
  Bits operand(addend.begin(), addend.begin() + static_cast<std::ptrdiff_t>(std::min(w, addend.size())));
  Bits pad;
  if (operand.size() < w) {
    pad = b.acquire(static_cast<int>(w - operand.size()));
    operand.insert(operand.end(), pad.begin(), pad.end());
  }
  const std::size_t start = b.mark();
  cuccaro(b, target, operand);
  if (subtract) b.invert_since(start);
  b.release(pad);
}

void controlled_add_register(CircuitBuilder& b, const Bits& target, const Bits& addend, Bit control,
                             bool subtract) {
  const Bits masked = b.acquire(static_cast<int>(addend.size()));
  auto load = [&] {
    for (std::size_t i = 0; i < addend.size(); ++i) {
      if (addend[i] == control) {
        b.cx(control, masked[i]);
      } else {
        b.ccx(control, addend[i], masked[i]);
      }
    }
  };
  load();
  add_register(b, target, masked, subtract);
  load();
  b.release(masked);
}

void add_constant(CircuitBuilder& b, const Bits& target, std::int64_t constant, const Bits& controls) {
  if (controls.size() > 1) throw std::invalid_argument("add_constant takes at most one control");
  const std::size_t w = target.size();
  const std::uint64_t k = mask_to(constant, w);
  if (w == 0 || k == 0) return;
  const Bits operand = b.acquire(static_cast<int>(w));
  auto load = [&] {
    for (std::size_t i = 0; i < w; ++i) {
      if (((k >> i) & 1U) == 0) continue;
      if (controls.empty()) {
        b.x(operand[i]);
      } else {
        b.cx(controls[0], operand[i]);
      }
    }
  };
  load();
  add_register(b, target, operand);
  load();
  b.release(operand);
}

void copy_bits(CircuitBuilder& b, const Bits& dst, const Bits& src) {
  for (std::size_t i = 0; i < std::min(dst.size(), src.size()); ++i) b.cx(src[i], dst[i]);
}

void load_constant(CircuitBuilder& b, const Bits& dst, std::uint64_t constant) {
  for (std::size_t i = 0; i < dst.size() && i < 64; ++i) {
    if ((constant >> i) & 1U) b.x(dst[i]);
  }
}

void square_into(CircuitBuilder& b, const Bits& out, const Bits& a) {
  const std::size_t w = a.size();
  if (out.size() < 2 * w) throw std::invalid_argument("squarer output register must hold 2*width bits");
  for (std::size_t k = 0; k < w; ++k) {
    // partial = a_k ? a : 0, then out += partial << k
    const Bits partial = b.acquire(static_cast<int>(w));
    auto load = [&] {
      for (std::size_t i = 0; i < w; ++i) {
        if (i == k) {
          b.cx(a[k], partial[i]);
        } else {
          b.ccx(a[k], a[i], partial[i]);
        }
      }
    };
    load();
    const Bits shifted(out.begin() + static_cast<std::ptrdiff_t>(k), out.end());
    add_register(b, shifted, partial);
    load();
    b.release(partial);
  }
}

void abs_in_place(CircuitBuilder& b, const Bits& value, Bit sign) {
  if (value.empty()) return;
  b.cx(value.back(), sign);
  for (Bit v : value) b.cx(sign, v);
  add_constant(b, value, 1, {sign});
}

void greater_than_constant(CircuitBuilder& b, const Bits& a, std::int64_t c, Bit flag) {
  const std::size_t w = a.size();
  if (c < 0) {
    b.x(flag);
    return;
  }
  if (w == 0 || !fits_unsigned(c, w)) return;

  // equal_above[i]: bits above position i agree with c.
  std::vector<Bit> equal_above(w);
  const std::size_t chain_start = b.mark();
  const Bits chain = b.acquire(static_cast<int>(w));
  equal_above[w - 1] = chain[w - 1];
  b.x(chain[w - 1]);
  for (std::size_t i = w - 1; i >= 1; --i) {
    const bool ci = (c >> i) & 1;
    if (!ci) b.x(a[i]);
    b.ccx(a[i], equal_above[i], chain[i - 1]);
    if (!ci) b.x(a[i]);
    equal_above[i - 1] = chain[i - 1];
  }
  const std::size_t chain_end = b.mark();

  // At most one term is true, so XOR-accumulating them is the OR.
  for (std::size_t i = 0; i < w; ++i) {
    if (((c >> i) & 1) == 0) b.ccx(a[i], equal_above[i], flag);
  }

  b.append_inverse(chain_start, chain_end);
  b.release(chain);
}

void greater_than_register(CircuitBuilder& b, const Bits& a, const Bits& c, Bit flag) {
  const std::size_t w = a.size();
  if (c.size() != w) throw std::invalid_argument("comparator operands must have equal width");
  if (w == 0) return;

  const std::size_t prep_start = b.mark();
  for (std::size_t i = 0; i < w; ++i) b.cx(a[i], c[i]);  // c_i <- a_i xor c_i
  std::vector<Bit> equal_above(w);
  const Bits chain = b.acquire(static_cast<int>(w));
  equal_above[w - 1] = chain[w - 1];
  b.x(chain[w - 1]);
  for (std::size_t i = w - 1; i >= 1; --i) {
    b.x(c[i]);
    b.ccx(c[i], equal_above[i], chain[i - 1]);
    b.x(c[i]);
    equal_above[i - 1] = chain[i - 1];
  }
  const std::size_t prep_end = b.mark();

  // a_i AND NOT c_i == a_i AND (a_i xor c_i)
  const Bit t = b.acquire_one();
  for (std::size_t i = 0; i < w; ++i) {
    b.ccx(c[i], equal_above[i], t);
    b.ccx(a[i], t, flag);
    b.ccx(c[i], equal_above[i], t);
  }
  b.release(t);

  b.append_inverse(prep_start, prep_end);
  b.release(chain);
}

void greater_than_constant_subtractor(CircuitBuilder& b, const Bits& a, std::int64_t c, Bit flag) {
  const std::size_t w = a.size();
  if (c < 0) {
    b.x(flag);
    return;
  }
  if (!fits_unsigned(c, w)) return;
  const Bits diff = b.acquire(static_cast<int>(w + 1));
  const std::size_t start = b.mark();
  copy_bits(b, diff, a);
  add_constant(b, diff, -(c + 1));
  const std::size_t end = b.mark();
  // a - c - 1 >= 0  <=>  sign bit clear
  b.cx(diff[w], flag);
  b.x(flag);
  b.append_inverse(start, end);
  b.release(diff);
}

void greater_than_register_subtractor(CircuitBuilder& b, const Bits& a, const Bits& c, Bit flag) {
  const std::size_t w = a.size();
  if (c.size() != w) throw std::invalid_argument("comparator operands must have equal width");
  const Bits diff = b.acquire(static_cast<int>(w + 1));
  const std::size_t start = b.mark();
  copy_bits(b, diff, a);
  add_register(b, diff, c, /*subtract=*/true);
  add_constant(b, diff, -1);
  const std::size_t end = b.mark();
  b.cx(diff[w], flag);
  b.x(flag);
  b.append_inverse(start, end);
  b.release(diff);
}

RevCircuit build_adder(int width, bool subtract, int num_controls) {
  if (width < 1) throw std::invalid_argument("adder width must be >= 1");
  if (num_controls < 0 || num_controls > 2) throw std::invalid_argument("adder supports 0..2 controls");
  CircuitBuilder b;
  const Register a = b.add_register("a", width, RegisterRole::Operand);
  const Register t = b.add_register("b", width, RegisterRole::Operand);
  const Register ctl = b.add_register("ctl", num_controls, RegisterRole::Operand);
  if (num_controls == 0) {
    add_register(b, t.bits(), a.bits(), subtract);
  } else {
    const Bit on = b.acquire_one();
    combine_controls(b, ctl, on);
    controlled_add_register(b, t.bits(), a.bits(), on, subtract);
    combine_controls(b, ctl, on);
    b.release(on);
  }
  return b.finish();
}

RevCircuit build_constant_adder(int width, std::int64_t constant, bool subtract, int num_controls) {
  if (width < 1) throw std::invalid_argument("adder width must be >= 1");
  if (num_controls < 0 || num_controls > 2) throw std::invalid_argument("adder supports 0..2 controls");
  CircuitBuilder b;
  const Register t = b.add_register("b", width, RegisterRole::Operand);
  const Register ctl = b.add_register("ctl", num_controls, RegisterRole::Operand);
  const std::int64_t k = subtract ? -constant : constant;
  if (num_controls == 0) {
    add_constant(b, t.bits(), k);
  } else {
    const Bit on = b.acquire_one();
    combine_controls(b, ctl, on);
    add_constant(b, t.bits(), k, {on});
    combine_controls(b, ctl, on);
    b.release(on);
  }
  return b.finish();
}

RevCircuit build_squarer(int width, int out_width) {
  if (width < 1) throw std::invalid_argument("squarer width must be >= 1");
  if (out_width < 0) out_width = 2 * width;
  if (out_width < 2 * width) throw std::invalid_argument("insufficient output width for squarer");
  CircuitBuilder b;
  const Register a = b.add_register("a", width, RegisterRole::Operand);
  const Register out = b.add_register("out", out_width, RegisterRole::Operand);
  square_into(b, out.bits(), a.bits());
  return b.finish();
}

RevCircuit build_gt_comparator(int width, CutoffSource source, std::int64_t constant, ComparatorKind kind) {
  if (width < 1) throw std::invalid_argument("comparator width must be >= 1");
  CircuitBuilder b;
  const Register f = b.add_register("f", width, RegisterRole::Fitness);
  const Register flag = b.add_register("flag", 1, RegisterRole::Flag);
  b.begin_stage("comparator");
  if (source == CutoffSource::Register) {
    const Register c = b.add_register("c", width, RegisterRole::Operand);
    if (kind == ComparatorKind::PrefixEquality) {
      greater_than_register(b, f.bits(), c.bits(), flag.bit(0));
    } else {
      greater_than_register_subtractor(b, f.bits(), c.bits(), flag.bit(0));
    }
  } else if (kind == ComparatorKind::PrefixEquality) {
    greater_than_constant(b, f.bits(), constant, flag.bit(0));
  } else {
    greater_than_constant_subtractor(b, f.bits(), constant, flag.bit(0));
  }
  b.end_stage();
  return b.finish();
}

}  // namespace gmaze
