#include "redlab/precedence.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>
#include <vector>

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/normal.hpp>
#include <fmt/format.h>

namespace redlab {

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::ASpGreater: return "A_sp_greater";
    case Verdict::BSpGreater: return "B_sp_greater";
    case Verdict::SpEqual: return "sp_equal";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

void classify(double a, double b, double tie_tol, Tally& tally) noexcept {
  ++tally.n_trials;
  if (a > b + tie_tol) {
    ++tally.wins_a;
  } else if (b > a + tie_tol) {
    ++tally.wins_b;
  } else {
    ++tally.ties;
  }
}

namespace {

Tally run_block(const Scenario& scenario, std::uint64_t first, std::uint64_t last, std::uint64_t seed,
                double tie_tol) {
  Tally tally;
  Realization realization;
  PairEvaluator<double> evaluator(scenario.spec, scenario.m, scenario.mode);
  for (std::uint64_t t = first; t < last; ++t) {
    draw_realization(scenario, seed, t, realization);
    const PairOutcome pair = evaluator.evaluate(realization);
    classify(pair.a, pair.b, tie_tol, tally);
  }
  return tally;
}

}  // namespace

Tally run_trials(const Scenario& scenario, std::uint64_t n_trials, std::uint64_t seed, double tie_tol,
                 unsigned threads) {
  scenario.validate();
  if (n_trials < 1) throw ValidationError("trials must be >= 1", "trials");
  if (!(std::isfinite(tie_tol) && tie_tol >= 0.0)) throw ValidationError("tie_tol must be >= 0", "tie_tol");

  const std::uint64_t workers = std::clamp<std::uint64_t>(threads, 1, n_trials);
  if (workers == 1) return run_block(scenario, 0, n_trials, seed, tie_tol);

  std::vector<Tally> partial(workers);
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::uint64_t chunk = n_trials / workers;
  const std::uint64_t extra = n_trials % workers;
  std::uint64_t begin = 0;
  for (std::uint64_t w = 0; w < workers; ++w) {
    const std::uint64_t end = begin + chunk + (w < extra ? 1 : 0);
    pool.emplace_back([&, w, begin, end] {
      try {
        partial[w] = run_block(scenario, begin, end, seed, tie_tol);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
    begin = end;
  }
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  Tally total;
  for (const Tally& p : partial) total += p;
  return total;
}

double normal_z(double confidence) {
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw DomainError(fmt::format("confidence {} outside (0,1)", confidence));
  }
  return boost::math::quantile(boost::math::normal_distribution<double>(), 0.5 + confidence / 2.0);
}

Interval wilson_ci(std::uint64_t successes, std::uint64_t trials, double confidence) {
  if (trials < 1) throw DomainError("wilson_ci needs at least one trial");
  if (successes > trials) throw DomainError("wilson_ci: successes exceed trials");
  const double z = normal_z(confidence);
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  Interval out{std::max(0.0, center - half), std::min(1.0, center + half)};
  if (successes == 0) out.lo = 0.0;
  if (successes == trials) out.hi = 1.0;
  out.lo = std::min(out.lo, p);
  out.hi = std::max(out.hi, p);
  return out;
}

double symmetry_p_value(std::uint64_t wins_a, std::uint64_t wins_b) {
  const std::uint64_t strict = wins_a + wins_b;
  if (strict == 0) return 1.0;
  const std::uint64_t smaller = std::min(wins_a, wins_b);
  if (2 * smaller == strict) return 1.0;
  const boost::math::binomial_distribution<double> bin(static_cast<double>(strict), 0.5);
  return std::min(1.0, 2.0 * boost::math::cdf(bin, static_cast<double>(smaller)));
}

Verdict decide_sp(const Tally& tally, double alpha) {
  if (tally.wins_a == tally.wins_b) return Verdict::SpEqual;
  if (symmetry_p_value(tally.wins_a, tally.wins_b) < alpha) {
    return tally.wins_a > tally.wins_b ? Verdict::ASpGreater : Verdict::BSpGreater;
  }
  return Verdict::Inconclusive;
}

PrecedenceReport make_report(const Scenario& scenario, const Tally& tally, std::uint64_t seed, double tie_tol,
                             double alpha, double confidence) {
  if (tally.n_trials < 1 || tally.wins_a + tally.wins_b + tally.ties != tally.n_trials) {
    throw DomainError("inconsistent tally");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError(fmt::format("alpha {} outside (0,1)", alpha));
  PrecedenceReport r;
  r.tally = tally;
  const double n = static_cast<double>(tally.n_trials);
  r.p_gt = static_cast<double>(tally.wins_a) / n;
  r.p_lt = static_cast<double>(tally.wins_b) / n;
  r.p_eq = static_cast<double>(tally.ties) / n;
  r.ci_gt = wilson_ci(tally.wins_a, tally.n_trials, confidence);
  r.ci_lt = wilson_ci(tally.wins_b, tally.n_trials, confidence);
  r.p_value = symmetry_p_value(tally.wins_a, tally.wins_b);
  r.verdict = decide_sp(tally, alpha);
  r.seed = seed;
  r.tie_tol = tie_tol;
  r.alpha = alpha;
  r.confidence = confidence;
  r.scenario_digest = scenario_digest(scenario);
  return r;
}

PrecedenceReport compare(const Scenario& scenario, std::uint64_t n_trials, std::uint64_t seed, double tie_tol,
                         double alpha, double confidence, unsigned threads) {
  const Tally tally = run_trials(scenario, n_trials, seed, tie_tol, threads);
  return make_report(scenario, tally, seed, tie_tol, alpha, confidence);
}

}  // namespace redlab
