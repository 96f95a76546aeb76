#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gmaze/arithmetic.hpp"
#include "gmaze/rev_circuit.hpp"

namespace gmaze {

// Exhaustive circuit-versus-reference checks. Each suite stops at the first
// mismatch and reports it as a counterexample.

struct SuiteResult {
  std::string name;
  bool passed = true;
  std::size_t cases = 0;
  std::string counterexample;
};

struct VerifyOptions {
  int max_length = 3;
  int max_grid = 4;
  int max_comparator_width = 6;
  std::uint64_t seed = 1;
};

inline constexpr int kVerifyMaxLength = 4;
inline constexpr int kVerifyMaxGrid = 8;
inline constexpr int kVerifyMaxComparatorWidth = 8;

/// Builds a classical-cutoff comparator with registers "f" and "flag".
using ComparatorFactory = std::function<RevCircuit(int width, std::int64_t cutoff)>;

RevCircuit default_comparator(int width, std::int64_t cutoff);

SuiteResult verify_comparator(int max_width, const ComparatorFactory& factory = default_comparator);
/// Register-cutoff and subtractor comparator variants against integer >.
SuiteResult verify_comparator_variants(int max_width);
SuiteResult verify_fitness(const VerifyOptions& opts);
SuiteResult verify_oracle(const VerifyOptions& opts);
SuiteResult verify_validity(const VerifyOptions& opts);
/// Adder, squarer and comparator circuits: workspace zero and circuit-then-inverse identity.
SuiteResult verify_arithmetic_cleanup(int max_width);
/// D and O applied twice are the identity on random states.
SuiteResult verify_involutions(const VerifyOptions& opts);

struct VerifyReport {
  std::vector<SuiteResult> suites;
  bool all_passed() const;
  std::string text() const;
};

/// Throws std::length_error when the options exceed the kVerify* caps.
VerifyReport run_verification(const VerifyOptions& opts, const ComparatorFactory& factory = default_comparator);

}  // namespace gmaze
