#include "gmaze/resource_model.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <iomanip>
#include "json.hpp"
#include <sstream>
#include <stdexcept>

#include "gmaze/arithmetic.hpp"
#include "gmaze/fitness.hpp"

namespace gmaze {

std::size_t ResourceReport::total_qubits() const {
  return static_cast<std::size_t>(widths.path + 2 * widths.position + widths.distance + widths.fitness + widths.flag) +
         ancilla;
}

DiffuserCost diffuser_cost(int length) {
  DiffuserCost d;
  const auto qubits = static_cast<std::size_t>(2 * length);
  d.hadamard = 2 * qubits;
  d.not_gates = 2 * qubits;
  d.controls = qubits == 0 ? 0 : qubits - 1;
  d.toffoli = d.controls >= 2 ? 2 * d.controls - 3 : 0;
  return d;
}

ResourceReport predict(int length, int grid_size) {
  if (length < 1) throw std::invalid_argument("n must be >= 1");
  if (grid_size < 2) throw std::invalid_argument("m must be >= 2");
  const FitnessSpec spec = make_spec(grid_size, FitnessFormula::PowerOfTwo, SimMode::WallBlind);
  ResourceReport r;
  r.length = length;
  r.grid_size = grid_size;
  r.widths = register_layout(grid_size, length, spec);
  r.fitness_exponent = spec.exponent;

  const auto n = static_cast<std::size_t>(length);
  const auto w = static_cast<std::size_t>(r.widths.position);
  const auto wf = static_cast<std::size_t>(r.widths.fitness);

  // Per move: four decoded +-1 updates, each a 2-Toffoli decode pair around a
  // controlled w-bit Cuccaro addition (2w Toffoli, 4w CNOT, and 2*popcount CNOT loads).
  r.stages.path_simulation.toffoli = n * (8 + 8 * w);
  r.stages.path_simulation.cnot = n * (20 * w + 4);
  r.stages.path_simulation.not_gates = n * 16 + 2 * static_cast<std::size_t>(std::popcount(n));

  // Two w-bit constant subtractions, two conditional negations, two squarers
  // into the (2w+1)-bit distance register, then one w_f-bit subtraction.
  r.stages.distance_fitness.toffoli = 10 * w * w + 10 * w + 2 * wf;

  // Prefix-equality chain (computed and uncomputed) plus at most one term per bit.
  r.stages.comparator.toffoli = 3 * wf - 2;

  // Named workspace (di, dj, two sign bits) plus the pooled peak: the squarer
  // (w partial-product bits, w+1 padding, carry) or the comparator chain.
  r.ancilla = 2 * w + 2 + std::max(2 * w + 2, wf);
  r.diffuser = diffuser_cost(length);
  return r;
}

ResourceReport measure_resources(int length, int grid_size) {
  const FitnessSpec spec = make_spec(grid_size, FitnessFormula::PowerOfTwo, SimMode::WallBlind);
  const ProblemGeometry geo{grid_size, length, Cell{0, 0}, Cell{grid_size - 1, grid_size - 1}};
  const RevCircuit oracle = build_oracle_circuit(geo, spec, 0);

  ResourceReport r;
  r.length = length;
  r.grid_size = grid_size;
  r.fitness_exponent = spec.exponent;
  r.widths.path = oracle.reg("path").width;
  r.widths.position = oracle.reg("i").width;
  r.widths.distance = oracle.reg("dist").width;
  r.widths.fitness = oracle.reg("fitness").width;
  r.widths.flag = oracle.reg("flag").width;
  r.ancilla = oracle.ancilla_count();
  r.stages.path_simulation = count_gates(oracle, "path-simulation");
  r.stages.distance_fitness = count_gates(oracle, "distance") + count_gates(oracle, "fitness");
  r.stages.comparator = count_gates(oracle, "comparator");
  r.depth = count_gates(oracle).depth;
  r.diffuser = diffuser_cost(length);
  return r;
}

LinearFit check_asymptotics(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3) throw std::invalid_argument("need at least 3 sweep points for a linear fit");
  const auto count = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXd design(count, 2);
  Eigen::VectorXd y(count);
  for (Eigen::Index i = 0; i < count; ++i) {
    design(i, 0) = points[static_cast<std::size_t>(i)].first;
    design(i, 1) = 1.0;
    y(i) = points[static_cast<std::size_t>(i)].second;
  }
  const Eigen::Vector2d coef = design.colPivHouseholderQr().solve(y);
  const Eigen::VectorXd residual = y - design * coef;

  LinearFit fit;
  fit.slope = coef(0);
  fit.intercept = coef(1);
  const double scale = y.cwiseAbs().maxCoeff();
  fit.residual_ratio = scale > 0.0 ? residual.cwiseAbs().maxCoeff() / scale : 0.0;
  fit.linear = fit.residual_ratio < kLinearFitTolerance;
  return fit;
}

std::vector<std::pair<double, double>> comparator_sweep(int min_width, int max_width) {
  std::vector<std::pair<double, double>> out;
  for (int w = min_width; w <= max_width; ++w) {
    const RevCircuit c = build_gt_comparator(w, CutoffSource::Register);
    out.emplace_back(w, static_cast<double>(count_gates(c).toffoli));
  }
  return out;
}

std::vector<std::pair<double, double>> path_simulation_sweep(int grid_size, int min_length, int max_length) {
  std::vector<std::pair<double, double>> out;
  const FitnessSpec spec = make_spec(grid_size, FitnessFormula::PowerOfTwo, SimMode::WallBlind);
  for (int n = min_length; n <= max_length; ++n) {
    const ProblemGeometry geo{grid_size, n, Cell{0, 0}, Cell{grid_size - 1, grid_size - 1}};
    const RevCircuit f = build_fitness_circuit(geo, spec);
    out.emplace_back(n, static_cast<double>(count_gates(f, "path-simulation").toffoli));
  }
  return out;
}

namespace {

nlohmann::ordered_json counts_json(const GateCounts& c) {
  return {{"toffoli", c.toffoli}, {"cnot", c.cnot}, {"not", c.not_gates}};
}

nlohmann::ordered_json report_json(const ResourceReport& r) {
  nlohmann::ordered_json j;
  j["registers"] = {{"path", r.widths.path},         {"position_i", r.widths.position},
                    {"position_j", r.widths.position}, {"distance", r.widths.distance},
                    {"fitness", r.widths.fitness},    {"flag", r.widths.flag},
                    {"ancilla", r.ancilla}};
  j["fitness_exponent"] = r.fitness_exponent;
  j["total_qubits"] = r.total_qubits();
  j["stages"] = {{"path_simulation", counts_json(r.stages.path_simulation)},
                 {"distance_fitness", counts_json(r.stages.distance_fitness)},
                 {"comparator", counts_json(r.stages.comparator)}};
  j["oracle_depth"] = r.depth;
  j["diffuser"] = {{"hadamard", r.diffuser.hadamard},
                   {"not", r.diffuser.not_gates},
                   {"mcz_controls", r.diffuser.controls},
                   {"toffoli", r.diffuser.toffoli}};
  return j;
}

nlohmann::ordered_json fit_json(const LinearFit& f) {
  return {{"slope", f.slope}, {"intercept", f.intercept}, {"residual_ratio", f.residual_ratio}, {"linear", f.linear}};
}

}  // namespace

std::string resources_json(const ResourceReport& predicted, const ResourceReport& actual, const LinearFit& comparator,
                           const LinearFit& path_simulation) {
  nlohmann::ordered_json j;
  j["n"] = predicted.length;
  j["m"] = predicted.grid_size;
  j["predicted"] = report_json(predicted);
  j["actual"] = report_json(actual);
  j["fits"] = {{"comparator_toffoli_vs_width", fit_json(comparator)},
               {"path_simulation_toffoli_vs_n", fit_json(path_simulation)}};
  return j.dump(2);
}

std::string resources_table(const ResourceReport& p, const ResourceReport& a, const LinearFit& comparator,
                            const LinearFit& path_simulation) {
  std::ostringstream out;
  auto row = [&](const std::string& name, std::size_t pv, std::size_t av) {
    out << std::left << std::setw(34) << name << std::right << std::setw(10) << pv << std::setw(10) << av << '\n';
  };
  out << "n = " << p.length << ", m = " << p.grid_size << '\n';
  out << std::left << std::setw(34) << "quantity" << std::right << std::setw(10) << "predicted" << std::setw(10)
      << "actual" << '\n';
  row("path register (qubits)", static_cast<std::size_t>(p.widths.path), static_cast<std::size_t>(a.widths.path));
  row("position register (each)", static_cast<std::size_t>(p.widths.position),
      static_cast<std::size_t>(a.widths.position));
  row("distance register", static_cast<std::size_t>(p.widths.distance), static_cast<std::size_t>(a.widths.distance));
  row("fitness register", static_cast<std::size_t>(p.widths.fitness), static_cast<std::size_t>(a.widths.fitness));
  row("fitness exponent r (C = 2^r)", static_cast<std::size_t>(p.fitness_exponent),
      static_cast<std::size_t>(a.fitness_exponent));
  row("flag", static_cast<std::size_t>(p.widths.flag), static_cast<std::size_t>(a.widths.flag));
  row("ancilla (budget / high-water)", p.ancilla, a.ancilla);
  row("Toffoli, path simulation", p.stages.path_simulation.toffoli, a.stages.path_simulation.toffoli);
  row("Toffoli, distance + fitness", p.stages.distance_fitness.toffoli, a.stages.distance_fitness.toffoli);
  row("Toffoli, comparator (bound)", p.stages.comparator.toffoli, a.stages.comparator.toffoli);
  row("oracle depth", p.depth, a.depth);
  out << "diffuser: " << a.diffuser.hadamard << " H, " << a.diffuser.not_gates << " X, " << a.diffuser.controls
      << "-controlled Z (" << a.diffuser.toffoli << " Toffoli)\n";
  out << std::setprecision(4) << "comparator Toffoli ~ " << comparator.slope << " w + " << comparator.intercept
      << " (residual " << comparator.residual_ratio << ", " << (comparator.linear ? "linear" : "NOT linear") << ")\n";
  out << "path simulation Toffoli ~ " << path_simulation.slope << " n + " << path_simulation.intercept << " (residual "
      << path_simulation.residual_ratio << ", " << (path_simulation.linear ? "linear" : "NOT linear") << ")\n";
  return out.str();
}

}  // namespace gmaze
