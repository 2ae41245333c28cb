#pragma once

#include <cstdint>
#include <string>

#include "redlab/rational.hpp"
#include "redlab/systems.hpp"

namespace redlab {

inline constexpr std::uint64_t kDefaultMaxOutcomes = 10'000'000;

/// Exact probabilities that the component-level lifetime is greater than,
/// less than, or equal to the system-level lifetime.
struct ExactReport {
  Rational p_gt;
  Rational p_lt;
  Rational p_eq;
  std::uint64_t outcome_count = 0;
  std::string scenario_digest;
};

/// Product of support sizes over all (m+1)·n positions, saturating at
/// UINT64_MAX. Throws UnsupportedScenario for continuous distributions.
std::uint64_t outcome_count(const Scenario& scenario);

/// Enumerates the full product space of support atoms and sums the exact
/// outcome weights per comparison class. Atom values are compared exactly.
///
/// Enumeration order is row-major over (layer, position, atom index):
/// layer 0 (X) positions 0..n-1 first, then Y_1, ..., Y_m; the last
/// position varies fastest. With `threads` > 1 the flattened outcome range
/// is split into contiguous blocks; partial sums are combined exactly.
///
/// Throws UnsupportedScenario for continuous distributions and BudgetError
/// when outcome_count exceeds `max_outcomes`.
ExactReport exact_sp(const Scenario& scenario, std::uint64_t max_outcomes = kDefaultMaxOutcomes,
                     unsigned threads = 1);

}  // namespace redlab
