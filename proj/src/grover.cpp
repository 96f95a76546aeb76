#include "gmaze/grover.hpp"

#include <cstdio>
#include <sstream>

namespace gmaze {

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string state_csv(const PathState& state) {
  std::ostringstream out;
  out << "index,real,imag,probability\n";
  for (Eigen::Index u = 0; u < state.dimension(); ++u) {
    const auto a = state.amplitudes[u];
    out << u << ',' << fmt_double(a.real()) << ',' << fmt_double(a.imag()) << ',' << fmt_double(std::norm(a))
        << '\n';
  }
  return out.str();
}

std::vector<DynamicsRow> dynamics_trace(int length, std::span<const std::uint64_t> marked, std::uint64_t max_rounds) {
  const GroverGeometry geo = make_geometry(path_count(length), marked.size());
  PathState state = prepare_uniform(length);
  std::vector<DynamicsRow> rows;
  rows.reserve(max_rounds + 1);
  for (std::uint64_t r = 0; r <= max_rounds; ++r) {
    if (r > 0) grover_iterate(state, marked, 1);
    rows.push_back({r, success_probability(geo, r), marked_probability(state, marked)});
  }
  return rows;
}

std::string dynamics_csv(const std::vector<DynamicsRow>& rows) {
  std::ostringstream out;
  out << "r,predicted,simulated\n";
  for (const auto& row : rows)
    out << row.rounds << ',' << fmt_double(row.predicted) << ',' << fmt_double(row.simulated) << '\n';
  return out.str();
}

}  // namespace gmaze
