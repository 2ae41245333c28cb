#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "redlab/systems.hpp"

namespace redlab {

/// Counts of coupled trials where the component-level lifetime (a) beats,
/// loses to, or ties with the system-level lifetime (b).
struct Tally {
  std::uint64_t n_trials = 0;
  std::uint64_t wins_a = 0;
  std::uint64_t wins_b = 0;
  std::uint64_t ties = 0;

  Tally& operator+=(const Tally& other) noexcept {
    n_trials += other.n_trials;
    wins_a += other.wins_a;
    wins_b += other.wins_b;
    ties += other.ties;
    return *this;
  }

  friend bool operator==(const Tally&, const Tally&) = default;
};

enum class Verdict { ASpGreater, BSpGreater, SpEqual, Inconclusive };

std::string_view to_string(Verdict verdict);

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

inline constexpr double kDefaultAlpha = 0.01;
inline constexpr double kDefaultConfidence = 0.95;

/// a > b + tie_tol → wins_a; b > a + tie_tol → wins_b; otherwise a tie.
void classify(double a, double b, double tie_tol, Tally& tally) noexcept;

/// Coupled Monte Carlo over trials 0..n_trials-1. Trials are split into
/// contiguous blocks across `threads` workers; because every draw is a pure
/// function of (seed, trial, component), the tally does not depend on the
/// worker count.
Tally run_trials(const Scenario& scenario, std::uint64_t n_trials, std::uint64_t seed, double tie_tol = 0.0,
                 unsigned threads = 1);

/// Two-sided z quantile for a central confidence level, e.g. 1.959964 for 0.95.
double normal_z(double confidence);

/// Wilson score interval for a binomial proportion.
Interval wilson_ci(std::uint64_t successes, std::uint64_t trials, double confidence = kDefaultConfidence);

/// Two-sided exact binomial test of wins_a ~ Bin(wins_a + wins_b, 1/2).
/// Returns 1 when there are no strict wins.
double symmetry_p_value(std::uint64_t wins_a, std::uint64_t wins_b);

/// Stochastic-precedence verdict from a tally:
///   - wins_a == wins_b (including the structural 0/0 tie) → SpEqual;
///   - symmetry rejected at `alpha` → the side with more wins;
///   - otherwise Inconclusive.
Verdict decide_sp(const Tally& tally, double alpha = kDefaultAlpha);

struct PrecedenceReport {
  Tally tally;
  double p_gt = 0.0;
  double p_lt = 0.0;
  double p_eq = 0.0;
  Interval ci_gt;
  Interval ci_lt;
  double p_value = 1.0;
  Verdict verdict = Verdict::Inconclusive;
  std::uint64_t seed = 0;
  double tie_tol = 0.0;
  double alpha = kDefaultAlpha;
  double confidence = kDefaultConfidence;
  std::string scenario_digest;
};

PrecedenceReport make_report(const Scenario& scenario, const Tally& tally, std::uint64_t seed, double tie_tol,
                             double alpha = kDefaultAlpha, double confidence = kDefaultConfidence);

/// run_trials followed by make_report.
PrecedenceReport compare(const Scenario& scenario, std::uint64_t n_trials, std::uint64_t seed,
                         double tie_tol = 0.0, double alpha = kDefaultAlpha,
                         double confidence = kDefaultConfidence, unsigned threads = 1);

}  // namespace redlab
