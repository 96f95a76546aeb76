#include "gmaze/adaptive_search.hpp"

#include <cmath>
#include <cstdio>
#include "json.hpp"
#include <sstream>
#include <stdexcept>

namespace gmaze {

std::string_view status_name(SearchStatus status) {
  switch (status) {
    case SearchStatus::ConvergedOptimal: return "converged-optimal";
    case SearchStatus::BudgetExhausted: return "budget-exhausted";
    case SearchStatus::Degenerate: return "degenerate";
  }
  return "?";
}

void SearchConfig::validate() const {
  if (max_rounds < 1) throw std::invalid_argument("round cap T must be >= 1");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1)");
  if (samples < 1) throw std::invalid_argument("samples per round must be >= 1");
  if (!(growth > 1.0)) throw std::invalid_argument("growth factor must exceed 1");
}

std::size_t CutoffTrace::strict_increases() const {
  std::size_t n = 0;
  for (const auto& r : rounds) n += r.new_cutoff > r.cutoff ? 1 : 0;
  return n;
}

MarkedSet round_marked_set(const FitnessLandscape& land, std::int64_t cutoff, Strictness strictness) {
  if (strictness == Strictness::GreaterEqualAtMax && cutoff == land.max()) return marked_set_at_least(land, cutoff);
  return marked_set(land, cutoff);
}

std::uint64_t rounds_for_cutoff(const FitnessLandscape& land, std::int64_t cutoff, Strictness strictness) {
  const MarkedSet marked = round_marked_set(land, cutoff, strictness);
  return optimal_rounds(make_geometry(land.size(), marked.count()));
}

std::uint64_t guessed_rounds(std::uint64_t total, int level, double growth, Rng& rng) {
  const double range = std::ceil(std::pow(growth, level));
  const double cap = std::ceil(std::sqrt(static_cast<double>(total)));
  return rng.below(static_cast<std::uint64_t>(std::min(range, cap)));
}

std::vector<double> failure_budget_schedule(double epsilon, int rounds) {
  if (rounds < 1) throw std::invalid_argument("round cap T must be >= 1");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1)");
  return std::vector<double>(static_cast<std::size_t>(rounds), epsilon / rounds);
}

std::uint64_t shots_for_budget(double delta, double p) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
  if (p >= 1.0) return 1;
  if (p <= 0.0) throw std::invalid_argument("success probability must be positive");
  const double q = 1.0 - p;
  auto shots = static_cast<std::uint64_t>(std::ceil(std::log(delta) / std::log(q)));
  if (shots == 0) shots = 1;
  // Guard against log rounding on either side of an exact boundary.
  while (std::pow(q, static_cast<double>(shots)) > delta) ++shots;
  while (shots > 1 && std::pow(q, static_cast<double>(shots - 1)) <= delta) --shots;
  return shots;
}

SearchResult run_adaptive(const Maze& maze, int length, const FitnessSpec& spec, const SearchConfig& config) {
  return run_adaptive(landscape(maze, length, spec), config);
}

SearchResult run_adaptive(const FitnessLandscape& land, const SearchConfig& config) {
  config.validate();
  SearchResult result;
  result.length = land.length;
  result.f_max = land.max();

  const std::vector<double> budget = failure_budget_schedule(config.epsilon, config.max_rounds);
  std::int64_t cutoff = config.initial_cutoff;
  int level = 0;
  result.trace.status = SearchStatus::BudgetExhausted;

  for (int t = 1; t <= config.max_rounds; ++t) {
    const MarkedSet marked = round_marked_set(land, cutoff, config.strictness);
    if (marked.empty()) {
      result.trace.status = SearchStatus::Degenerate;
      break;
    }
    const GroverGeometry geo = make_geometry(land.size(), marked.count());
    Rng rng(derive_seed(config.seed, static_cast<std::uint64_t>(t)));

    RoundRecord rec;
    rec.round = t;
    rec.cutoff = cutoff;
    rec.marked = marked.count();
    rec.theta = geo.theta;
    if (config.policy == IterationPolicy::KnownK) {
      rec.rounds = optimal_rounds(geo);
      const double p = success_probability(geo, rec.rounds);
      rec.shots = std::max<std::uint64_t>(static_cast<std::uint64_t>(config.samples),
                                          shots_for_budget(budget[static_cast<std::size_t>(t - 1)], p));
    } else {
      rec.rounds = guessed_rounds(land.size(), level, config.growth, rng);
      rec.shots = static_cast<std::uint64_t>(config.samples);
    }

    PathState state = prepare_uniform(land.length);
    grover_iterate(state, marked.indices, rec.rounds);

    bool first = true;
    for (std::uint64_t s = 0; s < rec.shots; ++s) {
      const std::uint64_t u = measure(state, rng);
      const std::int64_t f = land.values[u];
      if (first || f > rec.outcome_fitness || (f == rec.outcome_fitness && u < rec.outcome)) {
        rec.outcome = u;
        rec.outcome_fitness = f;
        first = false;
      }
    }
    rec.new_cutoff = update_cutoff(cutoff, rec.outcome_fitness);

    if (!result.found || rec.outcome_fitness > result.best_fitness ||
        (rec.outcome_fitness == result.best_fitness && rec.outcome < result.best_index)) {
      result.found = true;
      result.best_index = rec.outcome;
      result.best_fitness = rec.outcome_fitness;
    }
    level = rec.new_cutoff > cutoff ? 0 : level + 1;
    cutoff = rec.new_cutoff;
    result.trace.rounds.push_back(rec);

    if (result.best_fitness == result.f_max) {
      result.trace.status = SearchStatus::ConvergedOptimal;
      break;
    }
  }
  return result;
}

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string trace_csv(const CutoffTrace& trace) {
  std::ostringstream out;
  out << "round,cutoff,k,theta,r,outcome_index,outcome_fitness,new_cutoff\n";
  for (const auto& r : trace.rounds) {
    out << r.round << ',' << r.cutoff << ',' << r.marked << ',' << fmt_double(r.theta) << ',' << r.rounds << ','
        << r.outcome << ',' << r.outcome_fitness << ',' << r.new_cutoff << '\n';
  }
  return out.str();
}

std::string result_json(const SearchResult& result) {
  nlohmann::ordered_json j;
  j["status"] = status_name(result.trace.status);
  j["length"] = result.length;
  j["f_max"] = result.f_max;
  j["rounds_used"] = result.trace.rounds.size();
  j["success"] = result.found && result.best_fitness == result.f_max;
  if (result.found) {
    const PathIndex idx{result.best_index, result.length};
    j["best"] = {{"index", result.best_index},
                 {"bits", index_bits(idx)},
                 {"path", path_letters(decode_index(idx))},
                 {"fitness", result.best_fitness}};
  } else {
    j["best"] = nullptr;
  }
  auto rounds = nlohmann::ordered_json::array();
  for (const auto& r : result.trace.rounds) {
    nlohmann::ordered_json row;
    row["round"] = r.round;
    row["cutoff"] = r.cutoff;
    row["k"] = r.marked;
    row["theta"] = r.theta;
    row["r"] = r.rounds;
    row["shots"] = r.shots;
    row["outcome_index"] = r.outcome;
    row["outcome_fitness"] = r.outcome_fitness;
    row["new_cutoff"] = r.new_cutoff;
    rounds.push_back(std::move(row));
  }
  j["trace"] = std::move(rounds);
  return j.dump(2);
}

}  // namespace gmaze
