#include "gmaze/verification.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "gmaze/fitness.hpp"
#include "gmaze/grover.hpp"
#include "gmaze/maze.hpp"
#include "gmaze/maze_circuits.hpp"
#include "gmaze/path_codec.hpp"
#include "gmaze/rng.hpp"

namespace gmaze {

namespace {

bool workspace_clear(const RevCircuit& c, const BasisState& s) {
  const Bits ws = c.workspace_bits();
  return std::all_of(ws.begin(), ws.end(), [&](Bit b) { return s[b] == 0; });
}

void fail(SuiteResult& r, const std::string& msg) {
  if (r.passed) {
    r.passed = false;
    r.counterexample = msg;
  }
}

std::string describe(const ProblemGeometry& g) {
  std::ostringstream out;
  out << "n=" << g.length << " m=" << g.grid_size << " start=(" << g.start.row << ',' << g.start.col << ") goal=("
      << g.goal.row << ',' << g.goal.col << ')';
  return out.str();
}

// Default endpoints plus one seeded random pair per (n, m).
std::vector<ProblemGeometry> geometries(int n, int m, std::uint64_t seed) {
  std::vector<ProblemGeometry> out{{m, n, Cell{0, 0}, Cell{m - 1, m - 1}}};
  Rng rng(derive_seed(seed, static_cast<std::uint64_t>(n * 1000 + m)));
  Cell s, g;
  do {
    s = {static_cast<int>(rng.below(m)), static_cast<int>(rng.below(m))};
    g = {static_cast<int>(rng.below(m)), static_cast<int>(rng.below(m))};
  } while (s == g);
  out.push_back({m, n, s, g});
  return out;
}

Maze maze_for(const ProblemGeometry& g, std::uint64_t seed) { return generate_maze(g.grid_size, seed, g.start, g.goal); }

}  // namespace

RevCircuit default_comparator(int width, std::int64_t cutoff) {
  return build_gt_comparator(width, CutoffSource::Constant, cutoff);
}

SuiteResult verify_comparator(int max_width, const ComparatorFactory& factory) {
  SuiteResult r;
  r.name = "comparator";
  for (int w = 1; w <= max_width && r.passed; ++w) {
    const std::int64_t limit = std::int64_t{1} << w;
    for (std::int64_t c = 0; c < limit && r.passed; ++c) {
      const RevCircuit circ = factory(w, c);
      for (std::int64_t f = 0; f < limit; ++f) {
        BasisState in(circ.width(), 0);
        write_register(in, circ.reg("f"), static_cast<std::uint64_t>(f));
        const BasisResult out = run_on_basis(circ, in);
        ++r.cases;
        const auto got = read_register(out.bits, circ.reg("flag"));
        const std::uint64_t want = f > c ? 1 : 0;
        if (got != want || read_register(out.bits, circ.reg("f")) != static_cast<std::uint64_t>(f) ||
            !workspace_clear(circ, out.bits)) {
          std::ostringstream msg;
          msg << "width=" << w << " f=" << f << " c=" << c << " expected flag " << want << " got " << got;
          fail(r, msg.str());
          break;
        }
      }
    }
  }
  return r;
}

SuiteResult verify_comparator_variants(int max_width) {
  SuiteResult r;
  r.name = "comparator-variants";
  for (int w = 1; w <= max_width && r.passed; ++w) {
    const std::int64_t limit = std::int64_t{1} << w;
    for (ComparatorKind kind : {ComparatorKind::PrefixEquality, ComparatorKind::Subtractor}) {
      const RevCircuit reg_circ = build_gt_comparator(w, CutoffSource::Register, 0, kind);
      for (std::int64_t c = 0; c < limit && r.passed; ++c) {
        const RevCircuit const_circ = build_gt_comparator(w, CutoffSource::Constant, c, kind);
        for (std::int64_t f = 0; f < limit; ++f) {
          const std::uint64_t want = f > c ? 1 : 0;
          BasisState in(reg_circ.width(), 0);
          write_register(in, reg_circ.reg("f"), static_cast<std::uint64_t>(f));
          write_register(in, reg_circ.reg("c"), static_cast<std::uint64_t>(c));
          const BasisResult a = run_on_basis(reg_circ, in);
          BasisState in2(const_circ.width(), 0);
          write_register(in2, const_circ.reg("f"), static_cast<std::uint64_t>(f));
          const BasisResult b = run_on_basis(const_circ, in2);
          r.cases += 2;
          const bool ok = read_register(a.bits, reg_circ.reg("flag")) == want &&
                          read_register(a.bits, reg_circ.reg("c")) == static_cast<std::uint64_t>(c) &&
                          workspace_clear(reg_circ, a.bits) && read_register(b.bits, const_circ.reg("flag")) == want &&
                          workspace_clear(const_circ, b.bits);
          if (!ok) {
            std::ostringstream msg;
            msg << (kind == ComparatorKind::Subtractor ? "subtractor" : "prefix-equality") << " width=" << w
                << " f=" << f << " c=" << c;
            fail(r, msg.str());
            break;
          }
        }
      }
    }
  }
  return r;
}

SuiteResult verify_fitness(const VerifyOptions& opts) {
  SuiteResult r;
  r.name = "fitness";
  for (int n = 1; n <= opts.max_length && r.passed; ++n) {
    for (int m = 2; m <= opts.max_grid && r.passed; ++m) {
      const FitnessSpec spec = make_spec(m, FitnessFormula::PowerOfTwo, SimMode::WallBlind);
      for (const ProblemGeometry& geo : geometries(n, m, opts.seed)) {
        const Maze maze = maze_for(geo, opts.seed);
        const RevCircuit circ = build_fitness_circuit(geo, spec);
        const RevCircuit inv = circ.inverse();
        for (std::uint64_t u = 0; u < path_count(n); ++u) {
          const BasisState in = path_input(circ, u);
          const BasisResult out = run_on_basis(circ, in);
          ++r.cases;
          const std::int64_t want = fitness(maze, decode_index({u, n}), spec);
          const std::int64_t got = read_signed(out.bits, circ.reg("fitness"));
          const bool ok = got == want && out.sign == 1 && read_register(out.bits, circ.reg("path")) == u &&
                          workspace_clear(circ, out.bits) && run_on_basis(inv, out.bits).bits == in;
          if (!ok) {
            std::ostringstream msg;
            msg << describe(geo) << " path=" << path_letters(decode_index({u, n})) << " expected fitness " << want
                << " got " << got;
            fail(r, msg.str());
            break;
          }
        }
        if (!r.passed) break;
      }
    }
  }
  return r;
}

SuiteResult verify_oracle(const VerifyOptions& opts) {
  SuiteResult r;
  r.name = "oracle-sign";
  for (int n = 1; n <= opts.max_length && r.passed; ++n) {
    for (int m = 2; m <= opts.max_grid && r.passed; ++m) {
      const FitnessSpec spec = make_spec(m, FitnessFormula::PowerOfTwo, SimMode::WallBlind);
      for (const ProblemGeometry& geo : geometries(n, m, opts.seed)) {
        const Maze maze = maze_for(geo, opts.seed);
        const FitnessLandscape land = landscape(maze, n, spec);
        std::set<std::int64_t> distinct(land.values.begin(), land.values.end());
        distinct.insert(land.min() - 1);
        std::vector<std::int64_t> cutoffs(distinct.begin(), distinct.end());
        if (cutoffs.size() > 8) {
          std::vector<std::int64_t> picked;
          for (std::size_t i = 0; i < 8; ++i) picked.push_back(cutoffs[i * (cutoffs.size() - 1) / 7]);
          cutoffs = picked;
        }
        for (std::int64_t cutoff : cutoffs) {
          const RevCircuit circ = build_oracle_circuit(geo, spec, cutoff);
          const MarkedSet marked = marked_set(land, cutoff);
          std::vector<bool> is_marked(land.size(), false);
          for (std::uint64_t u : marked.indices) is_marked[u] = true;
          for (std::uint64_t u = 0; u < land.size(); ++u) {
            const BasisState in = path_input(circ, u);
            const BasisResult once = run_on_basis(circ, in);
            const BasisResult twice = run_on_basis(circ, once.bits);
            ++r.cases;
            const int want = is_marked[u] ? -1 : 1;
            const bool ok = once.sign == want && once.bits == in && twice.bits == in && once.sign * twice.sign == 1;
            if (!ok) {
              std::ostringstream msg;
              msg << describe(geo) << " cutoff=" << cutoff << " path=" << path_letters(decode_index({u, n}))
                  << " fitness=" << land.values[u] << " expected sign " << want << " got " << once.sign;
              fail(r, msg.str());
              break;
            }
          }
          if (!r.passed) break;
        }
        if (!r.passed) break;
      }
    }
  }
  return r;
}

SuiteResult verify_validity(const VerifyOptions& opts) {
  SuiteResult r;
  r.name = "validity";
  for (int n = 1; n <= opts.max_length && r.passed; ++n) {
    for (int m = 2; m <= opts.max_grid && r.passed; ++m) {
      for (const ProblemGeometry& geo : geometries(n, m, opts.seed)) {
        const Maze maze = maze_for(geo, opts.seed);
        const RevCircuit circ = build_validity_circuit(geo);
        for (std::uint64_t u = 0; u < path_count(n); ++u) {
          const BasisState in = path_input(circ, u);
          const BasisResult out = run_on_basis(circ, in);
          ++r.cases;
          const Path path = decode_index({u, n});
          const std::uint64_t want = simulate_path(maze, path, SimMode::BoundsOnly).failed_step ? 0 : 1;
          const std::uint64_t got = read_register(out.bits, circ.reg("valid"));
          const bool ok = got == want && read_register(out.bits, circ.reg("path")) == u &&
                          workspace_clear(circ, out.bits);
          if (!ok) {
            std::ostringstream msg;
            msg << describe(geo) << " path=" << path_letters(path) << " expected valid " << want << " got " << got;
            fail(r, msg.str());
            break;
          }
        }
        if (!r.passed) break;
      }
    }
  }
  return r;
}

SuiteResult verify_arithmetic_cleanup(int max_width) {
  SuiteResult r;
  r.name = "ancilla-cleanup";
  const int top = std::min(max_width, 4);
  auto check = [&](const RevCircuit& c, const std::string& label) {
    const std::size_t inputs_width = c.width() - c.workspace_bits().size();
    if (inputs_width > 16) return;
    // Enumerate all non-workspace bits.
    Bits free_bits;
    const Bits ws = c.workspace_bits();
    for (Bit b = 0; b < c.width(); ++b) {
      if (std::find(ws.begin(), ws.end(), b) == ws.end()) free_bits.push_back(b);
    }
    const RevCircuit inv = c.inverse();
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << free_bits.size()); ++v) {
      BasisState in(c.width(), 0);
      for (std::size_t k = 0; k < free_bits.size(); ++k) in[free_bits[k]] = static_cast<std::uint8_t>((v >> k) & 1U);
      const BasisResult out = run_on_basis(c, in);
      ++r.cases;
      if (!workspace_clear(c, out.bits) || run_on_basis(inv, out.bits).bits != in) {
        fail(r, label + " input=" + std::to_string(v));
        return;
      }
    }
  };
  for (int w = 1; w <= top && r.passed; ++w) {
    for (int controls = 0; controls <= 2; ++controls) {
      check(build_adder(w, false, controls), "adder w=" + std::to_string(w));
      check(build_adder(w, true, controls), "subtractor w=" + std::to_string(w));
      check(build_constant_adder(w, (std::int64_t{1} << w) - 1, false, controls), "constant adder w=" + std::to_string(w));
    }
    check(build_squarer(w), "squarer w=" + std::to_string(w));
    check(build_gt_comparator(w, CutoffSource::Register), "register comparator w=" + std::to_string(w));
    check(build_gt_comparator(w, CutoffSource::Register, 0, ComparatorKind::Subtractor),
          "register subtractor comparator w=" + std::to_string(w));
  }
  return r;
}

SuiteResult verify_involutions(const VerifyOptions& opts) {
  SuiteResult r;
  r.name = "involutions";
  Rng rng(derive_seed(opts.seed, 0xD1FF));
  for (int n = 1; n <= opts.max_length && r.passed; ++n) {
    for (int trial = 0; trial < 4; ++trial) {
      PathState s{n, AmplitudeVector<double>(static_cast<Eigen::Index>(path_count(n)))};
      for (Eigen::Index u = 0; u < s.dimension(); ++u) s.amplitudes[u] = {rng.uniform() - 0.5, rng.uniform() - 0.5};
      s.amplitudes.normalize();
      std::vector<std::uint64_t> marked;
      for (std::uint64_t u = 0; u < path_count(n); ++u) {
        if (rng.below(3) == 0) marked.push_back(u);
      }
      PathState d = s;
      apply_diffuser(d);
      apply_diffuser(d);
      PathState o = s;
      apply_oracle(o, marked);
      apply_oracle(o, marked);
      ++r.cases;
      const double d_err = (d.amplitudes - s.amplitudes).cwiseAbs().maxCoeff();
      const double o_err = (o.amplitudes - s.amplitudes).cwiseAbs().maxCoeff();
      if (d_err > 1e-12 || o_err > 1e-12 || std::abs(d.norm() - 1.0) > 1e-12) {
        fail(r, "n=" + std::to_string(n) + " trial=" + std::to_string(trial) + " D^2 error " + std::to_string(d_err) +
                    " O^2 error " + std::to_string(o_err));
        break;
      }
    }
  }
  return r;
}

bool VerifyReport::all_passed() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.passed; });
}

std::string VerifyReport::text() const {
  std::ostringstream out;
  for (const auto& s : suites) {
    out << (s.passed ? "PASS " : "FAIL ") << s.name << " (" << s.cases << " cases)";
    if (!s.passed) out << ": counterexample " << s.counterexample;
    out << '\n';
  }
  return out.str();
}

VerifyReport run_verification(const VerifyOptions& opts, const ComparatorFactory& factory) {
  if (opts.max_length < 1 || opts.max_grid < 2 || opts.max_comparator_width < 1)
    throw std::invalid_argument("verification needs n >= 1, m >= 2, width >= 1");
  if (opts.max_length > kVerifyMaxLength || opts.max_grid > kVerifyMaxGrid ||
      opts.max_comparator_width > kVerifyMaxComparatorWidth)
    throw std::length_error("verification cap exceeded: n <= " + std::to_string(kVerifyMaxLength) +
                            ", m <= " + std::to_string(kVerifyMaxGrid) +
                            ", width <= " + std::to_string(kVerifyMaxComparatorWidth));
  VerifyReport report;
  report.suites.push_back(verify_comparator(opts.max_comparator_width, factory));
  report.suites.push_back(verify_comparator_variants(std::min(opts.max_comparator_width, 5)));
  report.suites.push_back(verify_fitness(opts));
  report.suites.push_back(verify_validity(opts));
  report.suites.push_back(verify_oracle(opts));
  report.suites.push_back(verify_arithmetic_cleanup(opts.max_comparator_width));
  report.suites.push_back(verify_involutions(opts));
  return report;
}

}  // namespace gmaze
