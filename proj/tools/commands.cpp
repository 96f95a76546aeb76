#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "gmaze/grover.hpp"
#include "gmaze/maze_circuits.hpp"
#include "gmaze/path_codec.hpp"
#include "gmaze/resource_model.hpp"
#include "json.hpp"

namespace gmaze::cli {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string normalize_key(std::string key) {
  std::replace(key.begin(), key.end(), '_', '-');
  return key;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
  if (!out) throw UsageError("write failed: " + path);
}

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
  T value{};
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) throw UsageError("bad value for " + key + ": '" + text + "'");
  return value;
}

template <typename T>
T get(const KeyValues& kv, const std::string& key, T fallback) {
  const auto it = kv.find(key);
  return it == kv.end() ? fallback : parse_number<T>(key, it->second);
}

std::string get_string(const KeyValues& kv, const std::string& key, std::string fallback = {}) {
  const auto it = kv.find(key);
  return it == kv.end() ? fallback : it->second;
}

SimMode parse_mode(const std::string& s) {
  if (s == "wall-aware") return SimMode::WallAware;
  if (s == "bounds") return SimMode::BoundsOnly;
  if (s == "blind") return SimMode::WallBlind;
  throw UsageError("mode must be wall-aware, bounds or blind");
}

FitnessFormula parse_formula(const std::string& s) {
  if (s == "maintext") return FitnessFormula::PowerOfTwo;
  if (s == "appendix") return FitnessFormula::Linear;
  throw UsageError("formula must be maintext or appendix");
}

IterationPolicy parse_policy(const std::string& s) {
  if (s == "known-k") return IterationPolicy::KnownK;
  if (s == "guessed-k") return IterationPolicy::GuessedK;
  throw UsageError("policy must be known-k or guessed-k");
}

Strictness parse_strictness(const std::string& s) {
  if (s == "at-max") return Strictness::GreaterEqualAtMax;
  if (s == "strict") return Strictness::StrictGreater;
  throw UsageError("strictness must be at-max or strict");
}

std::optional<Format> parse_format(const std::string& s, bool allow_table) {
  if (s == "csv") return Format::Csv;
  if (s == "json") return Format::Json;
  if (allow_table && (s.empty() || s == "table")) return std::nullopt;
  throw UsageError(allow_table ? "format must be csv, json or table" : "format must be csv or json");
}

void check_length(int n) {
  if (n < 1) throw UsageError("n must be >= 1");
  if (n > kMaxMaterializedLength)
    throw UsageError("n must be <= " + std::to_string(kMaxMaterializedLength) + " for state-vector runs");
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string summary_line(const SearchResult& r) {
  std::ostringstream out;
  out << "status=" << status_name(r.trace.status);
  if (r.found) {
    out << " best=" << path_letters(decode_index({r.best_index, r.length})) << " fitness=" << r.best_fitness;
  } else {
    out << " best=none";
  }
  out << " f_max=" << r.f_max << " rounds=" << r.trace.rounds.size()
      << " success=" << (r.found && r.best_fitness == r.f_max ? 1 : 0);
  return out.str();
}

}  // namespace

KeyValues parse_config(std::string_view text, const std::set<std::string>& allowed) {
  KeyValues kv;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw UsageError("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = normalize_key(trim(std::string_view(body).substr(0, eq)));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    if (key.empty()) throw UsageError("config line " + std::to_string(lineno) + ": empty key");
    if (!allowed.count(key)) throw UsageError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    if (!kv.emplace(key, value).second)
      throw UsageError("config line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
  }
  return kv;
}

Maze RunConfig::load_maze() const {
  if (!maze_path.empty()) {
    try {
      return parse_maze(read_file(maze_path));
    } catch (const MazeError& e) {
      throw UsageError(maze_path + ": " + e.what());
    }
  }
  if (grid_size < 2) throw UsageError("m must be ≥ 2");
  return generate_maze(grid_size, derive_seed(search.seed, kMazeStream));
}

RunConfig solve_config(const KeyValues& kv) {
  RunConfig c;
  c.maze_path = get_string(kv, "maze");
  c.grid_size = get<int>(kv, "m", c.grid_size);
  c.length = get<int>(kv, "n", c.length);
  c.formula = parse_formula(get_string(kv, "formula", "maintext"));
  c.mode = parse_mode(get_string(kv, "mode", "wall-aware"));
  c.search.seed = get<std::uint64_t>(kv, "seed", c.search.seed);
  c.search.epsilon = get<double>(kv, "epsilon", c.search.epsilon);
  c.search.initial_cutoff = get<std::int64_t>(kv, "cutoff0", c.search.initial_cutoff);
  c.search.policy = parse_policy(get_string(kv, "policy", "known-k"));
  c.search.strictness = parse_strictness(get_string(kv, "strictness", "at-max"));
  c.search.max_rounds = get<int>(kv, "max-rounds", c.search.max_rounds);
  c.search.samples = get<int>(kv, "samples", c.search.samples);
  c.search.growth = get<double>(kv, "growth", c.search.growth);
  c.out = get_string(kv, "out");
  c.format = *parse_format(get_string(kv, "format", "csv"), false);
  check_length(c.length);
  try {
    c.search.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return c;
}

SolveOutput cmd_solve(const RunConfig& config) {
  check_length(config.length);
  const Maze maze = config.load_maze();
  const FitnessSpec spec = make_spec(maze.size(), config.formula, config.mode);
  SolveOutput out;
  out.result = run_adaptive(maze, config.length, spec, config.search);
  out.body = config.format == Format::Json ? result_json(out.result) + "\n" : trace_csv(out.result.trace);
  out.summary = summary_line(out.result);
  return out;
}

std::string cmd_generate(int grid_size, std::uint64_t seed) {
  if (grid_size < 2) throw UsageError("m must be ≥ 2");
  return serialize_maze(generate_maze(grid_size, seed));
}

std::string cmd_dynamics(int length, std::uint64_t k, std::optional<std::uint64_t> rmax, Format format) {
  check_length(length);
  const std::uint64_t total = path_count(length);
  if (k < 1 || k > total) throw UsageError("k must satisfy 1 <= k <= 4^n");
  const std::uint64_t r_star = optimal_rounds(make_geometry(total, k));
  const std::uint64_t last = rmax.value_or(std::max<std::uint64_t>(3 * r_star, 6));
  std::vector<std::uint64_t> marked(k);
  for (std::uint64_t u = 0; u < k; ++u) marked[u] = u;
  const auto rows = dynamics_trace(length, marked, last);
  if (format == Format::Csv) return dynamics_csv(rows);
  nlohmann::ordered_json j;
  j["n"] = length;
  j["k"] = k;
  j["r_star"] = r_star;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : rows) arr.push_back({{"r", r.rounds}, {"predicted", r.predicted}, {"simulated", r.simulated}});
  j["rows"] = std::move(arr);
  return j.dump(2) + "\n";
}

VerifyReport cmd_verify(const VerifyOptions& opts, const ComparatorFactory& factory) {
  try {
    return run_verification(opts, factory);
  } catch (const std::length_error& e) {
    throw UsageError(e.what());
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::string cmd_resources(int length, int grid_size, std::optional<Format> format) {
  if (length < 1 || length > kMaxCircuitLength)
    throw UsageError("n must lie in [1, " + std::to_string(kMaxCircuitLength) + "]");
  if (grid_size < 2 || grid_size > kMaxCircuitGridSize)
    throw UsageError("m must lie in [2, " + std::to_string(kMaxCircuitGridSize) + "]");
  const ResourceReport p = predict(length, grid_size);
  const ResourceReport a = measure_resources(length, grid_size);
  const LinearFit comparator = check_asymptotics(comparator_sweep(2, 8));
  const LinearFit path_sim = check_asymptotics(path_simulation_sweep(grid_size, 1, 6));
  if (!format) return resources_table(p, a, comparator, path_sim);
  if (*format == Format::Json) return resources_json(p, a, comparator, path_sim) + "\n";

  std::ostringstream out;
  out << "quantity,predicted,actual\n";
  auto row = [&](const char* name, std::size_t pv, std::size_t av) { out << name << ',' << pv << ',' << av << '\n'; };
  auto w = [](int v) { return static_cast<std::size_t>(v); };
  row("path_qubits", w(p.widths.path), w(a.widths.path));
  row("position_qubits", w(p.widths.position), w(a.widths.position));
  row("distance_qubits", w(p.widths.distance), w(a.widths.distance));
  row("fitness_qubits", w(p.widths.fitness), w(a.widths.fitness));
  row("fitness_exponent", w(p.fitness_exponent), w(a.fitness_exponent));
  row("flag_qubits", w(p.widths.flag), w(a.widths.flag));
  row("ancilla", p.ancilla, a.ancilla);
  row("path_simulation_toffoli", p.stages.path_simulation.toffoli, a.stages.path_simulation.toffoli);
  row("distance_fitness_toffoli", p.stages.distance_fitness.toffoli, a.stages.distance_fitness.toffoli);
  row("comparator_toffoli", p.stages.comparator.toffoli, a.stages.comparator.toffoli);
  row("oracle_depth", p.depth, a.depth);
  row("diffuser_toffoli", p.diffuser.toffoli, a.diffuser.toffoli);
  return out.str();
}

std::vector<SweepRow> cmd_sweep(const RunConfig& base, int runs) {
  if (runs < 1) throw UsageError("runs must be >= 1");
  check_length(base.length);
  std::vector<SweepRow> rows;
  rows.reserve(static_cast<std::size_t>(runs));
  for (int i = 1; i <= runs; ++i) {
    RunConfig c = base;
    c.search.seed = derive_seed(base.search.seed, static_cast<std::uint64_t>(i));
    const Maze maze = c.load_maze();
    const FitnessSpec spec = make_spec(maze.size(), c.formula, c.mode);
    rows.push_back({c.search.seed, run_adaptive(maze, c.length, spec, c.search)});
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "seed,f_max,best_fitness,rounds_used,status,success\n";
  for (const auto& row : rows) {
    const SearchResult& r = row.result;
    out << row.seed << ',' << r.f_max << ',' << r.best_fitness << ',' << r.trace.rounds.size() << ','
        << status_name(r.trace.status) << ',' << (r.found && r.best_fitness == r.f_max ? 1 : 0) << '\n';
  }
  return out.str();
}

namespace {

struct Subcommand {
  CLI::App* app = nullptr;
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;
  std::string config_path;

  void add(const std::string& key, const std::string& help) {
    options[key] = app->add_option("--" + key, values[key], help);
  }

  std::set<std::string> keys() const {
    std::set<std::string> out;
    for (const auto& [k, _] : options) out.insert(k);
    return out;
  }

  /// Config file entries, overridden by flags given on the command line.
  KeyValues collect() const {
    KeyValues kv;
    if (!config_path.empty()) kv = parse_config(read_file(config_path), keys());
    for (const auto& [k, opt] : options) {
      if (opt->count() > 0) kv[k] = values.at(k);
    }
    return kv;
  }
};

void emit(const std::string& body, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << body;
  } else {
    write_file(out_path, body);
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Classical simulation of a Grover-based maze path solver"};
  app.require_subcommand(1);

  std::map<std::string, Subcommand> subs;
  auto make = [&](const std::string& name, const std::string& help) -> Subcommand& {
    Subcommand& s = subs[name];
    s.app = app.add_subcommand(name, help);
    s.app->add_option("--config", s.config_path, "flat key = value file; flags override it");
    return s;
  };

  Subcommand& gen = make("generate", "write a random perfect maze");
  gen.add("m", "grid size");
  gen.add("seed", "generator seed");
  gen.add("out", "output file (default stdout)");

  Subcommand& solve = make("solve", "run the adaptive cutoff search");
  Subcommand& sweep = make("sweep", "repeat solve over derived seeds");
  for (Subcommand* s : {&solve, &sweep}) {
    s->add("maze", "maze file (default: generate m x m from the seed)");
    s->add("m", "grid size for generated mazes");
    s->add("n", "path length");
    s->add("seed", "master seed");
    s->add("epsilon", "failure budget");
    s->add("cutoff0", "initial cutoff C_1");
    s->add("mode", "wall-aware | bounds | blind");
    s->add("formula", "maintext | appendix");
    s->add("policy", "known-k | guessed-k");
    s->add("strictness", "at-max | strict");
    s->add("max-rounds", "round cap T");
    s->add("samples", "minimum shots per round");
    s->add("growth", "guessed-k escalation factor");
    s->add("out", "output file (default stdout)");
    s->add("format", "csv | json");
  }
  sweep.add("runs", "number of seeds");

  Subcommand& dyn = make("dynamics", "simulated vs predicted marked probability");
  dyn.add("n", "path length");
  dyn.add("k", "marked count");
  dyn.add("rmax", "last iteration count");
  dyn.add("out", "output file (default stdout)");
  dyn.add("format", "csv | json");

  Subcommand& ver = make("verify", "exhaustive circuit-vs-reference suites");
  ver.add("n-max", "largest path length");
  ver.add("m-max", "largest grid size");
  ver.add("width-max", "largest comparator width");
  ver.add("seed", "endpoint sampling seed");

  Subcommand& res = make("resources", "predicted and measured circuit resources");
  res.add("n", "path length");
  res.add("m", "grid size");
  res.add("out", "output file (default stdout)");
  res.add("format", "csv | json | table");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (gen.app->parsed()) {
      const KeyValues kv = gen.collect();
      const std::string text = cmd_generate(get<int>(kv, "m", 0), get<std::uint64_t>(kv, "seed", 1));
      emit(text, get_string(kv, "out"), out);
      return kExitOk;
    }
    if (solve.app->parsed()) {
      const RunConfig config = solve_config(solve.collect());
      const SolveOutput result = cmd_solve(config);
      emit(result.body, config.out, out);
      (config.out.empty() ? err : out) << result.summary << '\n';
      return kExitOk;
    }
    if (sweep.app->parsed()) {
      const KeyValues kv = sweep.collect();
      const RunConfig config = solve_config(kv);
      const auto rows = cmd_sweep(config, get<int>(kv, "runs", 50));
      std::size_t wins = 0;
      for (const auto& r : rows) wins += r.result.found && r.result.best_fitness == r.result.f_max ? 1 : 0;
      emit(sweep_csv(rows), config.out, out);
      (config.out.empty() ? err : out) << "runs=" << rows.size() << " successes=" << wins
                                       << " fraction=" << fmt_double(double(wins) / double(rows.size())) << '\n';
      return kExitOk;
    }
    if (dyn.app->parsed()) {
      const KeyValues kv = dyn.collect();
      std::optional<std::uint64_t> rmax;
      if (kv.count("rmax")) rmax = get<std::uint64_t>(kv, "rmax", 0);
      const std::string text = cmd_dynamics(get<int>(kv, "n", 2), get<std::uint64_t>(kv, "k", 1), rmax,
                                            *parse_format(get_string(kv, "format", "csv"), false));
      emit(text, get_string(kv, "out"), out);
      return kExitOk;
    }
    if (ver.app->parsed()) {
      const KeyValues kv = ver.collect();
      VerifyOptions opts;
      opts.max_length = get<int>(kv, "n-max", opts.max_length);
      opts.max_grid = get<int>(kv, "m-max", opts.max_grid);
      opts.max_comparator_width = get<int>(kv, "width-max", opts.max_comparator_width);
      opts.seed = get<std::uint64_t>(kv, "seed", opts.seed);
      const VerifyReport report = cmd_verify(opts);
      out << report.text();
      return report.all_passed() ? kExitOk : kExitVerifyFailed;
    }
    if (res.app->parsed()) {
      const KeyValues kv = res.collect();
      const std::string text = cmd_resources(get<int>(kv, "n", 2), get<int>(kv, "m", 2),
                                             parse_format(get_string(kv, "format", "table"), true));
      emit(text, get_string(kv, "out"), out);
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace gmaze::cli
