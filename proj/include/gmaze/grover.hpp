#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gmaze/path_codec.hpp"
#include "gmaze/rng.hpp"

namespace gmaze {

template <typename Scalar>
using AmplitudeVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

/// Amplitudes over the 2n-qubit path register, indexed by PathIndex value.
template <typename Scalar = double>
struct BasicPathState {
  int length = 0;
  AmplitudeVector<Scalar> amplitudes;

  Eigen::Index dimension() const { return amplitudes.size(); }
  Scalar norm() const { return amplitudes.norm(); }
  Scalar probability(std::uint64_t index) const { return std::norm(amplitudes[static_cast<Eigen::Index>(index)]); }
};

using PathState = BasicPathState<double>;

class DegenerateGeometry : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// N = 4^n paths, k of them marked, theta = arcsin(sqrt(k/N)).
struct GroverGeometry {
  std::uint64_t total = 1;
  std::uint64_t marked = 0;
  double theta = 0.0;

  bool degenerate() const { return marked == 0; }
};

inline GroverGeometry make_geometry(std::uint64_t total, std::uint64_t marked) {
  if (total == 0 || marked > total) throw std::invalid_argument("need 0 <= k <= N and N >= 1");
  const double ratio = static_cast<double>(marked) / static_cast<double>(total);
  return {total, marked, std::asin(std::sqrt(ratio))};
}

/// sin^2((2r+1) theta): probability of a marked outcome after r iterations from uniform.
inline double success_probability(const GroverGeometry& geo, std::uint64_t rounds) {
  const double s = std::sin((2.0 * static_cast<double>(rounds) + 1.0) * geo.theta);
  return s * s;
}

/// max(0, floor(pi/(4 theta) - 1/2)). Throws DegenerateGeometry for k = 0.
/// The floor tolerates 1e-9 of rounding so exact rotations (k = N/4) land on the integer.
inline std::uint64_t optimal_rounds(const GroverGeometry& geo) {
  if (geo.degenerate()) throw DegenerateGeometry("no marked paths: Grover rotation is the identity");
  const double r = std::floor(std::numbers::pi / (4.0 * geo.theta) - 0.5 + 1e-9);
  return r > 0.0 ? static_cast<std::uint64_t>(r) : 0;
}

/// H on every qubit of |0...0>: every amplitude is exactly 2^-n.
template <typename Scalar = double>
BasicPathState<Scalar> prepare_uniform(int length) {
  check_materializable(length);
  const auto dim = static_cast<Eigen::Index>(path_count(length));
  const Scalar amp = std::ldexp(Scalar(1), -length);
  return {length, AmplitudeVector<Scalar>::Constant(dim, std::complex<Scalar>(amp, Scalar(0)))};
}

template <typename Scalar = double>
BasicPathState<Scalar> basis_state(int length, std::uint64_t index) {
  check_materializable(length);
  BasicPathState<Scalar> s{length, AmplitudeVector<Scalar>::Zero(static_cast<Eigen::Index>(path_count(length)))};
  if (index >= path_count(length)) throw std::out_of_range("basis index out of range");
  s.amplitudes[static_cast<Eigen::Index>(index)] = Scalar(1);
  return s;
}

/// O = I - 2 Pi_T: negate the marked amplitudes.
template <typename Scalar>
void apply_oracle(BasicPathState<Scalar>& state, std::span<const std::uint64_t> marked) {
  for (std::uint64_t u : marked) {
    if (u >= static_cast<std::uint64_t>(state.dimension())) throw std::out_of_range("marked index out of range");
    state.amplitudes[static_cast<Eigen::Index>(u)] = -state.amplitudes[static_cast<Eigen::Index>(u)];
  }
}

/// D = 2|Omega><Omega| - I, i.e. inversion about the mean amplitude.
template <typename Scalar>
void apply_diffuser(BasicPathState<Scalar>& state) {
  const std::complex<Scalar> mean = state.amplitudes.mean();
  state.amplitudes = (Scalar(2) * mean - state.amplitudes.array()).matrix();
}

/// (D O)^rounds
template <typename Scalar>
void grover_iterate(BasicPathState<Scalar>& state, std::span<const std::uint64_t> marked, std::uint64_t rounds) {
  for (std::uint64_t r = 0; r < rounds; ++r) {
    apply_oracle(state, marked);
    apply_diffuser(state);
  }
}

template <typename Scalar>
Scalar marked_probability(const BasicPathState<Scalar>& state, std::span<const std::uint64_t> marked) {
  Scalar p = 0;
  for (std::uint64_t u : marked) p += state.probability(u);
  return p;
}

/// Born-rule sample by inverse CDF over |amplitude|^2.
template <typename Scalar>
std::uint64_t measure(const BasicPathState<Scalar>& state, Rng& rng) {
  const double target = rng.uniform() * static_cast<double>(state.amplitudes.squaredNorm());
  double acc = 0.0;
  const Eigen::Index dim = state.dimension();
  Eigen::Index last_nonzero = 0;
  for (Eigen::Index u = 0; u < dim; ++u) {
    const double p = std::norm(state.amplitudes[u]);
    if (p == 0.0) continue;
    last_nonzero = u;
    acc += p;
    if (target < acc) return static_cast<std::uint64_t>(u);
  }
  return static_cast<std::uint64_t>(last_nonzero);
}

template <typename Scalar>
std::uint64_t measure(const BasicPathState<Scalar>& state, std::uint64_t seed) {
  Rng rng(seed);
  return measure(state, rng);
}

/// The restriction of G = D O to span(|psi_perp>, |psi_T>), obtained by applying
/// the simulated operators to both basis vectors. Requires 1 <= k < N.
inline Eigen::Matrix2d rotation_block(int length, std::span<const std::uint64_t> marked) {
  const std::uint64_t total = path_count(length);
  const std::uint64_t k = marked.size();
  if (k == 0 || k >= total) throw DegenerateGeometry("rotation block needs 1 <= k < N");

  PathState target{length, AmplitudeVector<double>::Zero(static_cast<Eigen::Index>(total))};
  for (std::uint64_t u : marked) target.amplitudes[static_cast<Eigen::Index>(u)] = 1.0 / std::sqrt(double(k));
  PathState perp{length, AmplitudeVector<double>::Constant(static_cast<Eigen::Index>(total),
                                                           1.0 / std::sqrt(double(total - k)))};
  for (std::uint64_t u : marked) perp.amplitudes[static_cast<Eigen::Index>(u)] = 0.0;

  Eigen::Matrix2d block;
  const PathState* basis[2] = {&perp, &target};
  for (int col = 0; col < 2; ++col) {
    PathState image = *basis[col];
    grover_iterate(image, marked, 1);
    for (int row = 0; row < 2; ++row) block(row, col) = basis[row]->amplitudes.dot(image.amplitudes).real();
  }
  return block;
}

/// Eigenvalues of the rotation block, ordered by increasing imaginary part.
inline std::pair<std::complex<double>, std::complex<double>> rotation_spectrum(int length,
                                                                               std::span<const std::uint64_t> marked) {
  const Eigen::EigenSolver<Eigen::Matrix2d> solver(rotation_block(length, marked), /*computeEigenvectors=*/false);
  std::complex<double> a = solver.eigenvalues()[0];
  std::complex<double> b = solver.eigenvalues()[1];
  if (a.imag() > b.imag()) std::swap(a, b);
  return {a, b};
}

/// Same, for a geometry with N = 4^n and the synthetic marked set {0, ..., k-1}.
inline std::pair<std::complex<double>, std::complex<double>> rotation_spectrum(const GroverGeometry& geo) {
  int length = 0;
  while (length < kMaxMaterializedLength && path_count(length) < geo.total) ++length;
  if (path_count(length) != geo.total) throw std::invalid_argument("N must be a power of four up to 4^12");
  std::vector<std::uint64_t> marked(geo.marked);
  std::iota(marked.begin(), marked.end(), std::uint64_t{0});
  return rotation_spectrum(length, marked);
}

/// `index,real,imag,probability` rows.
std::string state_csv(const PathState& state);

struct DynamicsRow {
  std::uint64_t rounds = 0;
  double predicted = 0.0;
  double simulated = 0.0;
};

/// Simulates r = 0..max_rounds from the uniform state and pairs each marked
/// probability with sin^2((2r+1) theta).
std::vector<DynamicsRow> dynamics_trace(int length, std::span<const std::uint64_t> marked, std::uint64_t max_rounds);
std::string dynamics_csv(const std::vector<DynamicsRow>& rows);

}  // namespace gmaze
