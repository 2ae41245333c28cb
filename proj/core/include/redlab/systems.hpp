#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "redlab/distributions.hpp"
#include "redlab/errors.hpp"

namespace redlab {

/// A k-out-of-n system: functions while at least k of its n components do.
struct SystemSpec {
  int n = 1;
  int k = 1;

  /// Throws ValidationError unless n >= 1 and 1 <= k <= n.
  static SystemSpec make(int n, int k);
  void validate() const;

  friend bool operator==(const SystemSpec&, const SystemSpec&) = default;
};

enum class Mode { Active, Cold };

std::string_view to_string(Mode mode);
/// Accepts "active" or "cold"; throws ValidationError otherwise.
Mode parse_mode(std::string_view text);

/// Full experiment description: one original component vector of n
/// distributions and m redundancy layers of n distributions each.
struct Scenario {
  SystemSpec spec;
  int m = 1;
  Mode mode = Mode::Active;
  std::vector<LifetimeDistribution> x;
  std::vector<std::vector<LifetimeDistribution>> y;

  /// Throws ValidationError naming "n", "k", "m", "x" or "y".
  void validate() const;

  /// Canonical text form (deterministic; doubles at 17 significant digits).
  std::string canonical_text() const;
};

/// 16 hex digits of FNV-1a/64 over `text`.
std::string digest_hex(std::string_view text);

/// digest_hex(scenario.canonical_text()).
std::string scenario_digest(const Scenario& scenario);

template <class T>
struct BasicRealization {
  std::vector<T> x;
  std::vector<std::vector<T>> y;
};
using Realization = BasicRealization<double>;

template <class T>
struct BasicPairOutcome {
  T a;  // component-level redundancy
  T b;  // system-level redundancy
};
using PairOutcome = BasicPairOutcome<double>;

/// 1 iff at least k entries of `state` are set.
bool structure_phi(const SystemSpec& spec, std::span<const std::uint8_t> state);

namespace detail {

inline void check_length(const SystemSpec& spec, std::size_t size, std::string_view what) {
  if (size != static_cast<std::size_t>(spec.n)) {
    throw DimensionError(std::string(what) + " has length " + std::to_string(size) + ", expected n=" +
                         std::to_string(spec.n));
  }
}

template <class T>
void check_layers(std::span<const T> x, std::span<const std::vector<T>> ys) {
  if (ys.empty()) throw DimensionError("at least one redundancy layer is required");
  for (const auto& row : ys) {
    if (row.size() != x.size()) {
      throw DimensionError("redundancy layer has length " + std::to_string(row.size()) +
                           ", expected " + std::to_string(x.size()));
    }
  }
}

/// k-th largest of `scratch`, reordering it in place.
template <class T>
T kth_largest_inplace(std::vector<T>& scratch, int k) {
  const auto pos = scratch.begin() + (scratch.size() - static_cast<std::size_t>(k));
  std::nth_element(scratch.begin(), pos, scratch.end());
  return *pos;
}

}  // namespace detail

/// Lifetime of the k-out-of-n system: the k-th largest component lifetime.
template <class T>
T system_lifetime(const SystemSpec& spec, std::span<const T> lifetimes) {
  detail::check_length(spec, lifetimes.size(), "lifetime vector");
  std::vector<T> scratch(lifetimes.begin(), lifetimes.end());
  return detail::kth_largest_inplace(scratch, spec.k);
}

inline double system_lifetime(const SystemSpec& spec, std::span<const double> lifetimes) {
  return system_lifetime<double>(spec, lifetimes);
}

/// Componentwise max over x and every redundancy layer.
template <class T>
std::vector<T> compose_active_component(std::span<const T> x, std::span<const std::vector<T>> ys) {
  detail::check_layers(x, ys);
  std::vector<T> out(x.begin(), x.end());
  for (const auto& row : ys) {
    for (std::size_t j = 0; j < out.size(); ++j) {
      if (row[j] > out[j]) out[j] = row[j];
    }
  }
  return out;
}

/// Componentwise sum of x and every redundancy layer.
template <class T>
std::vector<T> compose_cold_component(std::span<const T> x, std::span<const std::vector<T>> ys) {
  detail::check_layers(x, ys);
  std::vector<T> out(x.begin(), x.end());
  for (const auto& row : ys) {
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += row[j];
  }
  return out;
}

inline std::vector<double> compose_active_component(std::span<const double> x,
                                                    std::span<const std::vector<double>> ys) {
  return compose_active_component<double>(x, ys);
}

inline std::vector<double> compose_cold_component(std::span<const double> x,
                                                  std::span<const std::vector<double>> ys) {
  return compose_cold_component<double>(x, ys);
}

/// Evaluates both architectures on one realization, reusing scratch
/// buffers across calls. Not thread-safe; use one per worker.
template <class T>
class PairEvaluator {
 public:
  PairEvaluator(SystemSpec spec, int m, Mode mode) : spec_(spec), m_(m), mode_(mode) {
    scratch_.reserve(static_cast<std::size_t>(spec.n));
  }

  T component_level(const BasicRealization<T>& r) {
    check(r);
    scratch_.assign(r.x.begin(), r.x.end());
    for (const auto& row : r.y) {
      for (std::size_t j = 0; j < scratch_.size(); ++j) {
        if (mode_ == Mode::Active) {
          if (row[j] > scratch_[j]) scratch_[j] = row[j];
        } else {
          scratch_[j] += row[j];
        }
      }
    }
    return detail::kth_largest_inplace(scratch_, spec_.k);
  }

  T system_level(const BasicRealization<T>& r) {
    check(r);
    T total = subsystem(r.x);
    for (const auto& row : r.y) {
      T life = subsystem(row);
      if (mode_ == Mode::Active) {
        if (life > total) total = life;
      } else {
        total += life;
      }
    }
    return total;
  }

  BasicPairOutcome<T> evaluate(const BasicRealization<T>& r) {
    T a = component_level(r);
    T b = system_level(r);
    return {std::move(a), std::move(b)};
  }

 private:
  void check(const BasicRealization<T>& r) const {
    detail::check_length(spec_, r.x.size(), "x");
    if (r.y.size() != static_cast<std::size_t>(m_)) {
      throw DimensionError("realization has " + std::to_string(r.y.size()) + " redundancy layers, expected m=" +
                           std::to_string(m_));
    }
    for (const auto& row : r.y) detail::check_length(spec_, row.size(), "y row");
  }

  T subsystem(const std::vector<T>& lifetimes) {
    scratch_.assign(lifetimes.begin(), lifetimes.end());
    return detail::kth_largest_inplace(scratch_, spec_.k);
  }

  SystemSpec spec_;
  int m_;
  Mode mode_;
  std::vector<T> scratch_;
};

/// Lifetime with redundancy at the component level: the system lifetime of
/// the composed vector (maxima for Active, sums for Cold).
double component_level_lifetime(const Scenario& scenario, const Realization& realization);

/// Lifetime with redundancy at the system level: max (Active) or sum (Cold)
/// of the m+1 subsystem lifetimes. Cold standby subsystems power on fresh
/// at the failure instant of their predecessor; switching is perfect.
double system_level_lifetime(const Scenario& scenario, const Realization& realization);

PairOutcome evaluate_pair(const Scenario& scenario, const Realization& realization);

/// Draws trial `trial` of the coupled experiment: one inverse-CDF sample per
/// (layer, position) from the counter-based stream.
Realization draw_realization(const Scenario& scenario, std::uint64_t seed, std::uint64_t trial);

/// In-place variant reusing the storage of `out`.
void draw_realization(const Scenario& scenario, std::uint64_t seed, std::uint64_t trial, Realization& out);

}  // namespace redlab
