// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>

#include "commands.hpp"
#include "gmaze/adaptive_search.hpp"
#include "gmaze/arithmetic.hpp"
#include "gmaze/grover.hpp"
#include "gmaze/maze_circuits.hpp"
#include "gmaze/resource_model.hpp"
#include "oracles.hpp"

using namespace gmaze;

namespace {

using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass = true;
  std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

void fail(Verdict& v, const std::string& why) {
  if (v.pass) v.detail = why;
  v.pass = false;
}

Maze worked_maze() {
  std::ifstream in(oracle::data_path("worked_example.maze"));
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_maze(buf.str());
}

bool workspace_clear(const RevCircuit& c, const BasisState& s) {
  const Bits ws = c.workspace_bits();
  return std::all_of(ws.begin(), ws.end(), [&](Bit b) { return s[b] == 0; });
}

// 1. Worked example, classical and gate level.
Verdict worked_example() {
  Verdict v;
  const auto t0 = Clock::now();
  const Maze maze = worked_maze();
  const FitnessSpec spec = make_spec(2);
  const std::int64_t classical = fitness(maze, decode_index({0b1001, 2}), spec);
  if (classical != 4) fail(v, "classical fitness " + std::to_string(classical));

  const ProblemGeometry geo = geometry_of(maze, 2);
  const RevCircuit f = build_fitness_circuit(geo, make_spec(2, FitnessFormula::PowerOfTwo, SimMode::WallBlind));
  const BasisResult r = run_on_basis(f, path_input(f, 0b1001));
  const Register& reg = f.reg("fitness");
  std::string low3;
  for (int i = 2; i >= 0; --i) low3 += static_cast<char>('0' + r.bits[reg.bit(i)]);
  if (read_signed(r.bits, reg) != 4 || low3 != "100") fail(v, "fitness register reads " + low3);

  const RevCircuit o = build_oracle_circuit(geo, make_spec(2, FitnessFormula::PowerOfTwo, SimMode::WallBlind), 2);
  const BasisState in = path_input(o, 0b1001);
  const BasisResult ro = run_on_basis(o, in);
  if (ro.sign != -1 || ro.bits != in) fail(v, "oracle did not flip |1001> cleanly");

  const double dt = seconds_since(t0);
  if (dt >= 1.0) fail(v, "took " + fmt("%.3f s", dt));
  if (v.pass) v.detail = "fitness 4, register 100, sign -1 at cutoff 2, " + fmt("%.3f s", dt);
  return v;
}

// 2. Comparator against integer > on every pair, widths 1..6.
Verdict comparator_exactness() {
  Verdict v;
  const auto t0 = Clock::now();
  std::size_t pairs = 0;
  for (int w = 1; w <= 6 && v.pass; ++w) {
    const std::int64_t lim = std::int64_t{1} << w;
    for (std::int64_t c = 0; c < lim && v.pass; ++c) {
      const RevCircuit circ = build_gt_comparator(w, CutoffSource::Constant, c);
      for (std::int64_t f = 0; f < lim; ++f) {
        BasisState s(circ.width(), 0);
        write_register(s, circ.reg("f"), static_cast<std::uint64_t>(f));
        const BasisResult r = run_on_basis(circ, s);
        ++pairs;
        if (read_register(r.bits, circ.reg("flag")) != (f > c ? 1u : 0u) || !workspace_clear(circ, r.bits)) {
          fail(v, "w=" + std::to_string(w) + " f=" + std::to_string(f) + " c=" + std::to_string(c));
          break;
        }
      }
    }
  }
  const RevCircuit gt9 = build_gt_comparator(4, CutoffSource::Constant, 9);
  for (auto [f, want] : {std::pair<std::uint64_t, std::uint64_t>{11, 1}, {5, 0}}) {
    BasisState s(gt9.width(), 0);
    write_register(s, gt9.reg("f"), f);
    if (read_register(run_on_basis(gt9, s).bits, gt9.reg("flag")) != want)
      fail(v, "worked pair f=" + std::to_string(f));
  }
  const double dt = seconds_since(t0);
  if (dt >= 10.0) fail(v, "took " + fmt("%.2f s", dt));
  if (v.pass) v.detail = std::to_string(pairs) + " pairs, 0 mismatches, " + fmt("%.2f s", dt);
  return v;
}

// 3. Uniform amplitudes are exactly 2^-n.
Verdict uniform_superposition() {
  Verdict v;
  for (int n = 0; n <= 8 && v.pass; ++n) {
    const PathState s = prepare_uniform(n);
    const double want = 1.0 / static_cast<double>(std::uint64_t{1} << n);
    if (static_cast<std::uint64_t>(s.dimension()) != (std::uint64_t{1} << (2 * n))) fail(v, "dimension at n=" + std::to_string(n));
    for (Eigen::Index u = 0; u < s.dimension(); ++u) {
      if (s.amplitudes[u] != std::complex<double>(want, 0.0)) {
        fail(v, "n=" + std::to_string(n) + " index " + std::to_string(u));
        break;
      }
    }
  }
  if (v.pass) v.detail = "n = 0..8 exact";
  return v;
}

// 4. Simulated rotation vs sin^2((2r+1) theta).
Verdict rotation_dynamics() {
  Verdict v;
  const auto t0 = Clock::now();
  double worst = 0.0;
  int cases = 0;
  Rng rng(404);
  for (int n = 1; n <= 6; ++n) {
    const std::uint64_t total = std::uint64_t{1} << (2 * n);
    const std::set<std::uint64_t> ks{1, 2, total / 4, total / 2, total - 1};
    for (std::uint64_t k : ks) {
      // Random marked subset of size k.
      std::vector<std::uint64_t> all(total);
      for (std::uint64_t u = 0; u < total; ++u) all[u] = u;
      for (std::uint64_t i = 0; i < k; ++i) std::swap(all[i], all[i + rng.below(total - i)]);
      std::vector<std::uint64_t> marked(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k));
      std::sort(marked.begin(), marked.end());

      const double theta = std::asin(std::sqrt(double(k) / double(total)));
      // k = N/4 gives theta = pi/6 and an exact integer; absorb the last-ulp error.
      const auto r_star = static_cast<std::uint64_t>(std::max(0.0, std::floor(M_PI / (4 * theta) - 0.5 + 1e-9)));
      if (optimal_rounds(make_geometry(total, k)) != r_star) fail(v, "r* mismatch");
      const std::uint64_t r_max = std::max<std::uint64_t>(3 * r_star, 1);

      PathState s = prepare_uniform(n);
      std::uint64_t argmax = 0;
      double best = -1.0;
      for (std::uint64_t r = 0; r <= r_max; ++r) {
        if (r > 0) grover_iterate(s, marked, 1);
        const double sim = marked_probability(s, marked);
        const double formula = std::pow(std::sin((2.0 * double(r) + 1.0) * theta), 2);
        worst = std::max(worst, std::abs(sim - formula));
        if (sim > best + 1e-12) {
          best = sim;
          argmax = r;
        }
      }
      ++cases;
      const std::uint64_t gap = argmax > r_star ? argmax - r_star : r_star - argmax;
      if (gap > 1) fail(v, "n=" + std::to_string(n) + " k=" + std::to_string(k) + " argmax " + std::to_string(argmax));
    }
  }
  if (worst > 1e-9) fail(v, "max deviation " + fmt("%.3g", worst));
  const double dt = seconds_since(t0);
  if (dt >= 60.0) fail(v, "took " + fmt("%.1f s", dt));
  if (v.pass) v.detail = std::to_string(cases) + " (n,k) cases, max |dP| " + fmt("%.2g", worst) + ", " + fmt("%.2f s", dt);
  return v;
}

std::vector<ProblemGeometry> sample_geometries(int m, int n, Rng& rng) {
  std::vector<ProblemGeometry> out{{m, n, {0, 0}, {m - 1, m - 1}}};
  while (out.size() < 3) {
    const Cell s{static_cast<int>(rng.below(m)), static_cast<int>(rng.below(m))};
    const Cell g{static_cast<int>(rng.below(m)), static_cast<int>(rng.below(m))};
    if (!(s == g)) out.push_back({m, n, s, g});
  }
  return out;
}

// 5. Gate-level oracle sign vs the diagonal oracle built from the landscape.
Verdict oracle_interchangeability() {
  Verdict v;
  Rng rng(5);
  std::size_t checks = 0;
  for (int n = 1; n <= 3 && v.pass; ++n) {
    for (int m = 2; m <= 4 && v.pass; ++m) {
      for (const ProblemGeometry& geo : sample_geometries(m, n, rng)) {
        const Maze maze = generate_maze(m, rng.next(), geo.start, geo.goal);
        const FitnessSpec spec = make_spec(m, FitnessFormula::PowerOfTwo, SimMode::WallBlind);
        const FitnessLandscape land = landscape(maze, n, spec);
        std::set<std::int64_t> cutoffs(land.values.begin(), land.values.end());
        cutoffs.insert(land.min() - 1);
        for (std::int64_t cutoff : cutoffs) {
          const RevCircuit o = build_oracle_circuit(geo, spec, cutoff);
          const MarkedSet marked = marked_set(land, cutoff);
          for (std::uint64_t u = 0; u < land.size(); ++u) {
            // Diagonal oracle applied to |u>.
            PathState basis = basis_state(n, u);
            apply_oracle(basis, marked.indices);
            const int diagonal = basis.amplitudes[static_cast<Eigen::Index>(u)].real() < 0 ? -1 : 1;
            const int independent = oracle::blind_fitness(m, geo.start, geo.goal, u, n) > cutoff ? -1 : 1;

            const BasisState in = path_input(o, u);
            const BasisResult once = run_on_basis(o, in);
            const BasisResult twice = run_on_basis(o, once.bits);
            ++checks;
            if (once.sign != diagonal || diagonal != independent || once.bits != in || twice.bits != in ||
                once.sign * twice.sign != 1) {
              fail(v, "m=" + std::to_string(m) + " n=" + std::to_string(n) + " cutoff=" + std::to_string(cutoff) +
                          " u=" + std::to_string(u));
              break;
            }
          }
          if (!v.pass) break;
        }
        if (!v.pass) break;
      }
    }
  }
  if (v.pass) v.detail = std::to_string(checks) + " (geometry, cutoff, input) checks, 0 mismatches";
  return v;
}

// 6. Validity flag vs the bounds check.
Verdict validity_operator() {
  Verdict v;
  std::size_t checks = 0;
  for (int m = 2; m <= 4 && v.pass; ++m) {
    for (int n = 1; n <= 3 && v.pass; ++n) {
      for (int s = 0; s < m * m && v.pass; ++s) {
        const Cell start{s / m, s % m};
        const Cell goal = start == Cell{0, 0} ? Cell{1, 1} : Cell{0, 0};
        const RevCircuit c = build_validity_circuit({m, n, start, goal});
        for (std::uint64_t u = 0; u < (std::uint64_t{1} << (2 * n)); ++u) {
          const BasisResult r = run_on_basis(c, path_input(c, u));
          ++checks;
          const std::uint64_t want = oracle::stays_in_bounds(m, start, u, n) ? 1 : 0;
          if (read_register(r.bits, c.reg("valid")) != want || !workspace_clear(c, r.bits)) {
            fail(v, "m=" + std::to_string(m) + " n=" + std::to_string(n) + " start=" + std::to_string(s) +
                        " u=" + std::to_string(u));
            break;
          }
        }
      }
    }
  }
  if (v.pass) v.detail = std::to_string(checks) + " inputs over every start cell, 0 mismatches";
  return v;
}

// 7. Adaptive search over 100 random mazes.
Verdict cutoff_convergence() {
  Verdict v;
  const auto t0 = Clock::now();
  const double epsilon = 0.05;
  const int runs = 100;
  int wins = 0;
  for (int i = 0; i < runs; ++i) {
    const std::uint64_t seed = derive_seed(7777, static_cast<std::uint64_t>(i));
    const int m = 2 + static_cast<int>(i % 3);
    const int n = 1 + static_cast<int>((i / 3) % 4);
    const Maze maze = generate_maze(m, seed);
    SearchConfig cfg;
    cfg.initial_cutoff = 0;
    cfg.epsilon = epsilon;
    cfg.policy = IterationPolicy::KnownK;
    cfg.seed = seed;
    const SearchResult r = run_adaptive(maze, n, make_spec(m), cfg);
    std::int64_t prev = cfg.initial_cutoff;
    for (const auto& rec : r.trace.rounds) {
      if (rec.cutoff != prev || rec.new_cutoff < rec.cutoff) fail(v, "non-monotone trace at run " + std::to_string(i));
      prev = rec.new_cutoff;
    }
    if (static_cast<std::int64_t>(r.trace.strict_increases()) > r.f_max - cfg.initial_cutoff)
      fail(v, "too many increases at run " + std::to_string(i));
    wins += r.found && r.best_fitness == r.f_max ? 1 : 0;
  }
  const double sigma = std::sqrt(epsilon * (1 - epsilon) / runs);
  const double fraction = double(wins) / runs;
  if (fraction < 1 - epsilon - 3 * sigma) fail(v, "success fraction " + fmt("%.2f", fraction));
  const double dt = seconds_since(t0);
  if (dt >= 300.0) fail(v, "took " + fmt("%.1f s", dt));
  if (v.pass)
    v.detail = std::to_string(wins) + "/100 optimal (threshold " + fmt("%.3f", 1 - epsilon - 3 * sigma) + "), " +
               fmt("%.2f s", dt);
  return v;
}

// 8. Linear resource fits and the 2n path register.
Verdict resource_scaling() {
  Verdict v;
  const LinearFit comparator = check_asymptotics(comparator_sweep(2, 8));
  const LinearFit path_sim = check_asymptotics(path_simulation_sweep(4, 1, 6));
  if (!(comparator.residual_ratio < 0.05)) fail(v, "comparator residual " + fmt("%.3f", comparator.residual_ratio));
  if (!(path_sim.residual_ratio < 0.05)) fail(v, "path simulation residual " + fmt("%.3f", path_sim.residual_ratio));
  for (int m = 2; m <= 4; ++m) {
    for (int n = 1; n <= 6; ++n) {
      const ProblemGeometry geo{m, n, {0, 0}, {m - 1, m - 1}};
      const int f = build_fitness_circuit(geo, make_spec(m)).reg("path").width;
      const int o = build_oracle_circuit(geo, make_spec(m), 0).reg("path").width;
      const int s = build_validity_circuit(geo).reg("path").width;
      if (f != 2 * n || o != 2 * n || s != 2 * n) fail(v, "path register width at n=" + std::to_string(n));
    }
  }
  if (v.pass)
    v.detail = "comparator Toffoli ~ " + fmt("%.3g", comparator.slope) + " w (resid " +
               fmt("%.2g", comparator.residual_ratio) + "), path sim ~ " + fmt("%.4g", path_sim.slope) + " n (resid " +
               fmt("%.3f", path_sim.residual_ratio) + ")";
  return v;
}

// 9. cmd_solve is byte-identical across repeated runs.
Verdict determinism() {
  Verdict v;
  for (cli::Format format : {cli::Format::Csv, cli::Format::Json}) {
    for (cli::RunConfig cfg : {cli::RunConfig{}, cli::RunConfig{}}) {
      cfg.format = format;
      cfg.grid_size = 4;
      cfg.length = 3;
      cfg.search.seed = 99;
      const cli::SolveOutput a = cli::cmd_solve(cfg);
      const cli::SolveOutput b = cli::cmd_solve(cfg);
      if (a.body != b.body || a.summary != b.summary) fail(v, "outputs differ");
      cfg.search.policy = IterationPolicy::GuessedK;
      if (cli::cmd_solve(cfg).body != cli::cmd_solve(cfg).body) fail(v, "guessed-k outputs differ");
    }
  }
  cli::RunConfig worked;
  worked.maze_path = oracle::data_path("worked_example.maze");
  worked.format = cli::Format::Json;
  if (cli::cmd_solve(worked).body != cli::cmd_solve(worked).body) fail(v, "worked example outputs differ");
  if (v.pass) v.detail = "CSV and JSON identical across reruns (known-k and guessed-k)";
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"worked example reproduction", worked_example},
      {"comparator exactness, widths 1-6", comparator_exactness},
      {"uniform superposition, n <= 8", uniform_superposition},
      {"rotation dynamics, n <= 6", rotation_dynamics},
      {"oracle interchangeability, n <= 3, m <= 4", oracle_interchangeability},
      {"validity operator, n <= 3, m in {2,3,4}", validity_operator},
      {"cutoff convergence, 100 random mazes", cutoff_convergence},
      {"resource scaling fits", resource_scaling},
      {"solve determinism", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    failures += v.pass ? 0 : 1;
    std::printf("%s [%zu] %s: %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), v.detail.c_str());
  }
  return failures == 0 ? 0 : 1;
}
