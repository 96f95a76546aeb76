#include "gmaze/grover.hpp"

#include <gtest/gtest.h>

#include <numbers>

namespace gmaze {
namespace {

std::vector<std::uint64_t> first_k(std::uint64_t k) {
  std::vector<std::uint64_t> v(k);
  for (std::uint64_t u = 0; u < k; ++u) v[u] = u;
  return v;
}

TEST(Grover, UniformAmplitudesExact) {
  for (int n = 0; n <= 8; ++n) {
    const PathState s = prepare_uniform(n);
    ASSERT_EQ(static_cast<std::uint64_t>(s.dimension()), std::uint64_t{1} << (2 * n));
    const double want = 1.0 / static_cast<double>(std::uint64_t{1} << n);
    for (Eigen::Index u = 0; u < s.dimension(); ++u) {
      ASSERT_EQ(s.amplitudes[u].real(), want);
      ASSERT_EQ(s.amplitudes[u].imag(), 0.0);
    }
  }
  EXPECT_EQ(prepare_uniform(1).amplitudes[0].real(), 0.5);
  EXPECT_EQ(prepare_uniform(2).amplitudes[15].real(), 0.25);
}

TEST(Grover, FloatInstantiation) {
  const BasicPathState<float> s = prepare_uniform<float>(3);
  EXPECT_EQ(s.amplitudes[7].real(), 0.125f);
  BasicPathState<float> t = s;
  apply_diffuser(t);
  EXPECT_NEAR((t.amplitudes - s.amplitudes).norm(), 0.0f, 1e-6f);
}

TEST(Grover, OracleEdgeCases) {
  PathState s = prepare_uniform(2);
  const PathState before = s;
  apply_oracle(s, std::vector<std::uint64_t>{});
  EXPECT_EQ(s.amplitudes, before.amplitudes);
  apply_oracle(s, first_k(16));
  EXPECT_EQ(s.amplitudes, (-before.amplitudes).eval());
  EXPECT_DOUBLE_EQ(s.norm(), 1.0);
  EXPECT_THROW(apply_oracle(s, std::vector<std::uint64_t>{16}), std::out_of_range);
}

TEST(Grover, DiffuserFixesUniformAndInvertsAboutMean) {
  PathState s = prepare_uniform(3);
  const PathState u = s;
  apply_diffuser(s);
  EXPECT_LT((s.amplitudes - u.amplitudes).cwiseAbs().maxCoeff(), 1e-15);

  PathState b = basis_state(1, 2);
  apply_diffuser(b);
  // mean = 1/4: 2*mean - a.
  EXPECT_DOUBLE_EQ(b.amplitudes[0].real(), 0.5);
  EXPECT_DOUBLE_EQ(b.amplitudes[2].real(), -0.5);
}

TEST(Grover, RotationFormula) {
  const auto marked = first_k(1);
  const GroverGeometry g = make_geometry(16, 1);
  for (std::uint64_t r = 0; r <= 6; ++r) {
    PathState s = prepare_uniform(2);
    grover_iterate(s, marked, r);
    EXPECT_NEAR(marked_probability(s, marked), success_probability(g, r), 1e-12);
  }
  PathState s = prepare_uniform(2);
  grover_iterate(s, marked, 2);
  const double independent = std::pow(std::sin(5.0 * std::asin(0.25)), 2);
  EXPECT_NEAR(marked_probability(s, marked), independent, 1e-12);
  EXPECT_NEAR(independent, 0.9082, 5e-4);
}

TEST(Grover, ZeroRoundsGivesKOverN) {
  const auto marked = first_k(5);
  const PathState s = prepare_uniform(3);
  EXPECT_DOUBLE_EQ(marked_probability(s, marked), 5.0 / 64.0);
}

TEST(Grover, AllMarkedStaysAtOne) {
  const auto marked = first_k(16);
  PathState s = prepare_uniform(2);
  for (int r = 0; r < 5; ++r) {
    EXPECT_NEAR(marked_probability(s, marked), 1.0, 1e-12);
    grover_iterate(s, marked, 1);
  }
  EXPECT_EQ(optimal_rounds(make_geometry(16, 16)), 0u);
}

TEST(Grover, OptimalRounds) {
  const GroverGeometry quarter = make_geometry(16, 4);
  EXPECT_NEAR(quarter.theta, std::numbers::pi / 6, 1e-12);
  EXPECT_EQ(optimal_rounds(quarter), 1u);
  EXPECT_NEAR(success_probability(quarter, 1), 1.0, 1e-12);

  const GroverGeometry one = make_geometry(16, 1);
  EXPECT_EQ(optimal_rounds(one), 2u);
  // Scan r = 0..6 (first peak): the formula lands one below the argmax here.
  std::uint64_t best = 0;
  for (std::uint64_t r = 1; r <= 6; ++r) {
    if (success_probability(one, r) > success_probability(one, best)) best = r;
  }
  EXPECT_EQ(best, 3u);
  EXPECT_LE(best - optimal_rounds(one), 1u);

  EXPECT_THROW(optimal_rounds(make_geometry(16, 0)), DegenerateGeometry);
  EXPECT_THROW(make_geometry(16, 17), std::invalid_argument);
}

TEST(Grover, OptimalIsWithinOneOfFirstPeak) {
  // pi/(4 theta) - 1/2 lies in [r*, r* + 1), so the best integer is r* or r* + 1
  // and r* never loses to r* - 1.
  for (int n = 1; n <= 6; ++n) {
    const std::uint64_t total = std::uint64_t{1} << (2 * n);
    for (std::uint64_t k = 1; k <= total; k += (total / 16) + 1) {
      const GroverGeometry g = make_geometry(total, k);
      const std::uint64_t r = optimal_rounds(g);
      const double p = success_probability(g, r);
      if (r > 0) EXPECT_GE(p + 1e-9, success_probability(g, r - 1)) << "N=" << total << " k=" << k;
      std::uint64_t best = 0;
      for (std::uint64_t s = 1; s <= r + 1; ++s) {
        if (success_probability(g, s) > success_probability(g, best) + 1e-12) best = s;
      }
      EXPECT_TRUE(best == r || best == r + 1) << "N=" << total << " k=" << k << " best=" << best;
    }
  }
}

TEST(Grover, MeasureBasisState) {
  const PathState s = basis_state(2, 9);
  Rng rng(5);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(measure(s, rng), 9u);
  EXPECT_EQ(measure(s, std::uint64_t{77}), 9u);
}

TEST(Grover, MeasureFrequencies) {
  const PathState s = prepare_uniform(1);
  Rng rng(2024);
  std::array<int, 4> hits{};
  const int shots = 40000;
  for (int i = 0; i < shots; ++i) ++hits[measure(s, rng)];
  double chi2 = 0.0;
  for (int h : hits) {
    EXPECT_NEAR(h / double(shots), 0.25, 0.01);
    chi2 += (h - shots / 4.0) * (h - shots / 4.0) / (shots / 4.0);
  }
  EXPECT_LT(chi2, 16.27);  // 3 dof, p = 0.001
}

TEST(Grover, MeasureIsSeedDeterministic) {
  PathState s = prepare_uniform(3);
  grover_iterate(s, first_k(3), 2);
  EXPECT_EQ(measure(s, std::uint64_t{11}), measure(s, std::uint64_t{11}));
}

TEST(Grover, RotationSpectrum) {
  const auto half = rotation_spectrum(make_geometry(16, 8));
  EXPECT_NEAR(half.first.real(), 0.0, 1e-12);
  EXPECT_NEAR(half.first.imag(), -1.0, 1e-12);
  EXPECT_NEAR(half.second.imag(), 1.0, 1e-12);

  const double theta = std::asin(std::sqrt(3.0 / 16.0));
  const auto three = rotation_spectrum(2, std::vector<std::uint64_t>{1, 6, 11});
  EXPECT_NEAR(three.second.real(), std::cos(2 * theta), 1e-12);
  EXPECT_NEAR(three.second.imag(), std::sin(2 * theta), 1e-12);
  EXPECT_NEAR(three.first.imag(), -std::sin(2 * theta), 1e-12);

  const Eigen::Matrix2d block = rotation_block(2, std::vector<std::uint64_t>{1, 6, 11});
  EXPECT_NEAR(block.determinant(), 1.0, 1e-12);
  EXPECT_NEAR((block.transpose() * block - Eigen::Matrix2d::Identity()).norm(), 0.0, 1e-12);
  EXPECT_THROW(rotation_spectrum(make_geometry(16, 16)), DegenerateGeometry);
  EXPECT_THROW(rotation_spectrum(make_geometry(8, 1)), std::invalid_argument);
}

TEST(Grover, DynamicsTraceAndCsv) {
  const auto rows = dynamics_trace(3, first_k(5), 8);
  ASSERT_EQ(rows.size(), 9u);
  for (const auto& row : rows) EXPECT_NEAR(row.predicted, row.simulated, 1e-9);
  const std::string csv = dynamics_csv(rows);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "r,predicted,simulated");
  EXPECT_EQ(state_csv(prepare_uniform(1)).substr(0, 27), "index,real,imag,probability");
}

}  // namespace
}  // namespace gmaze
