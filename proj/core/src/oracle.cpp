#include "redlab/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>
#include <vector>

#include <fmt/format.h>

#include "redlab/errors.hpp"

namespace redlab {
namespace {

// One (layer, position) slot of the product space. Weights are stored as
// integer numerators over a per-slot common denominator.
template <class T>
struct Slot {
  std::vector<T> values;
  std::vector<BigInt> numerators;
  BigInt denominator;
};

struct ClassSums {
  BigInt gt = 0;
  BigInt lt = 0;
  BigInt eq = 0;
};

std::vector<std::vector<Atom>> collect_supports(const Scenario& scenario) {
  std::vector<std::vector<Atom>> out;
  out.reserve(static_cast<std::size_t>((scenario.m + 1) * scenario.spec.n));
  for (const auto& d : scenario.x) out.push_back(d.support());
  for (const auto& row : scenario.y) {
    for (const auto& d : row) out.push_back(d.support());
  }
  return out;
}

std::uint64_t saturating_product(const std::vector<std::vector<Atom>>& supports) {
  std::uint64_t total = 1;
  for (const auto& s : supports) {
    if (total > std::numeric_limits<std::uint64_t>::max() / s.size()) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    total *= s.size();
  }
  return total;
}

// Common scaling 2^shift that turns every atom value into an integer, if the
// scaled values leave enough headroom for (m+1)-fold sums in int64.
bool integer_scaling(const std::vector<std::vector<Atom>>& supports, int layers, long& shift) {
  shift = 0;
  double max_value = 0.0;
  for (const auto& s : supports) {
    for (const Atom& a : s) {
      max_value = std::max(max_value, a.value);
      if (a.value == 0.0) continue;
      int exponent = 0;
      double mant = std::frexp(a.value, &exponent);
      // Strip trailing zero bits of the 53-bit mantissa to get the exact
      // power-of-two denominator.
      auto bits = static_cast<std::uint64_t>(std::ldexp(mant, 53));
      int trailing = bits == 0 ? 0 : __builtin_ctzll(bits);
      long needed = 53 - exponent - trailing;
      shift = std::max(shift, needed);
    }
  }
  if (shift < 0) shift = 0;
  const double limit = std::ldexp(1.0, 62) / static_cast<double>(layers);
  return std::ldexp(max_value, static_cast<int>(shift)) < limit;
}

template <class T, class Convert>
std::vector<Slot<T>> build_slots(const std::vector<std::vector<Atom>>& supports, Convert convert) {
  std::vector<Slot<T>> slots;
  slots.reserve(supports.size());
  for (const auto& s : supports) {
    Slot<T> slot;
    slot.denominator = 1;
    for (const Atom& a : s) mpz_lcm(slot.denominator.get_mpz_t(), slot.denominator.get_mpz_t(),
                                    a.weight.get_den_mpz_t());
    for (const Atom& a : s) {
      slot.values.push_back(convert(a.value));
      slot.numerators.push_back(a.weight.get_num() * (slot.denominator / a.weight.get_den()));
    }
    slots.push_back(std::move(slot));
  }
  return slots;
}

template <class T>
ClassSums enumerate_block(const Scenario& scenario, const std::vector<Slot<T>>& slots, std::uint64_t first,
                          std::uint64_t last) {
  ClassSums sums;
  if (first >= last) return sums;
  const std::size_t count = slots.size();
  const auto n = static_cast<std::size_t>(scenario.spec.n);

  // Mixed-radix decode of `first`; the last slot is the least significant digit.
  std::vector<std::size_t> digit(count, 0);
  std::uint64_t rest = first;
  for (std::size_t s = count; s-- > 0;) {
    digit[s] = rest % slots[s].values.size();
    rest /= slots[s].values.size();
  }

  BasicRealization<T> r;
  r.x.resize(n);
  r.y.assign(static_cast<std::size_t>(scenario.m), std::vector<T>(n));
  auto slot_value = [&](std::size_t s) -> T& {
    return s < n ? r.x[s] : r.y[s / n - 1][s % n];
  };

  // prefix[s] = product of the chosen numerators of slots 0..s-1.
  std::vector<BigInt> prefix(count + 1);
  prefix[0] = 1;
  auto refresh_from = [&](std::size_t from) {
    for (std::size_t s = from; s < count; ++s) {
      slot_value(s) = slots[s].values[digit[s]];
      prefix[s + 1] = prefix[s] * slots[s].numerators[digit[s]];
    }
  };
  refresh_from(0);

  PairEvaluator<T> evaluator(scenario.spec, scenario.m, scenario.mode);
  for (std::uint64_t index = first;;) {
    const auto pair = evaluator.evaluate(r);
    const BigInt& weight = prefix[count];
    if (pair.a > pair.b) {
      sums.gt += weight;
    } else if (pair.b > pair.a) {
      sums.lt += weight;
    } else {
      sums.eq += weight;
    }
    if (++index == last) break;
    std::size_t s = count;
    while (s-- > 0) {
      if (++digit[s] < slots[s].values.size()) break;
      digit[s] = 0;
    }
    refresh_from(s);
  }
  return sums;
}

template <class T>
ClassSums enumerate_all(const Scenario& scenario, const std::vector<Slot<T>>& slots, std::uint64_t total,
                        unsigned threads) {
  const std::uint64_t workers = std::clamp<std::uint64_t>(threads, 1, total);
  if (workers == 1) return enumerate_block(scenario, slots, 0, total);

  std::vector<ClassSums> partial(workers);
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  const std::uint64_t chunk = total / workers;
  const std::uint64_t extra = total % workers;
  std::uint64_t begin = 0;
  for (std::uint64_t w = 0; w < workers; ++w) {
    const std::uint64_t end = begin + chunk + (w < extra ? 1 : 0);
    pool.emplace_back([&, w, begin, end] {
      try {
        partial[w] = enumerate_block(scenario, slots, begin, end);
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
  ClassSums total_sums;
  for (const auto& p : partial) {
    total_sums.gt += p.gt;
    total_sums.lt += p.lt;
    total_sums.eq += p.eq;
  }
  return total_sums;
}

template <class T>
ExactReport finish(const Scenario& scenario, const std::vector<Slot<T>>& slots, std::uint64_t total,
                   unsigned threads) {
  const ClassSums sums = enumerate_all(scenario, slots, total, threads);
  BigInt denominator = 1;
  for (const auto& slot : slots) denominator *= slot.denominator;
  ExactReport report;
  report.p_gt = Rational(sums.gt, denominator);
  report.p_lt = Rational(sums.lt, denominator);
  report.p_eq = Rational(sums.eq, denominator);
  report.p_gt.canonicalize();
  report.p_lt.canonicalize();
  report.p_eq.canonicalize();
  report.outcome_count = total;
  report.scenario_digest = scenario_digest(scenario);
  return report;
}

}  // namespace

std::uint64_t outcome_count(const Scenario& scenario) {
  scenario.validate();
  return saturating_product(collect_supports(scenario));
}

ExactReport exact_sp(const Scenario& scenario, std::uint64_t max_outcomes, unsigned threads) {
  scenario.validate();
  const auto supports = collect_supports(scenario);
  const std::uint64_t total = saturating_product(supports);
  if (total > max_outcomes) {
    const std::string required = total == std::numeric_limits<std::uint64_t>::max()
                                     ? std::string("more than 2^64")
                                     : std::to_string(total);
    throw BudgetError(fmt::format("exact enumeration needs {} outcomes, guard is {}", required, max_outcomes),
                      total, max_outcomes);
  }

  long shift = 0;
  if (integer_scaling(supports, scenario.m + 1, shift)) {
    const auto slots = build_slots<std::int64_t>(supports, [shift](double v) {
      return static_cast<std::int64_t>(std::ldexp(v, static_cast<int>(shift)));
    });
    return finish(scenario, slots, total, threads);
  }
  const auto slots = build_slots<Rational>(supports, [](double v) { return exact_rational(v); });
  return finish(scenario, slots, total, threads);
}

}  // namespace redlab
