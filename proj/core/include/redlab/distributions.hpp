#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "redlab/random_stream.hpp"
#include "redlab/rational.hpp"

namespace redlab {

struct Exponential {
  double rate;  // per unit time
};

struct Weibull {
  double shape;
  double scale;
};

struct Uniform {
  double lo;
  double hi;
};

struct PointMass {
  double value;
};

struct Atom {
  double value;
  Rational weight;
};

/// Finite support with exact rational weights. Atom values are strictly
/// increasing and the weights sum to exactly one.
struct DiscreteFinite {
  std::vector<Atom> atoms;
};

/// Lifetime model of a single component. Construction validates the
/// parameters; instances are immutable afterwards.
class LifetimeDistribution {
 public:
  using Params = std::variant<Exponential, Weibull, Uniform, PointMass, DiscreteFinite>;

  static LifetimeDistribution exponential(double rate);
  static LifetimeDistribution weibull(double shape, double scale);
  static LifetimeDistribution uniform(double lo, double hi);
  static LifetimeDistribution point_mass(double value);
  static LifetimeDistribution discrete(std::vector<Atom> atoms);

  explicit LifetimeDistribution(Params params);

  const Params& params() const noexcept { return params_; }

  /// True for PointMass and DiscreteFinite.
  bool has_finite_support() const noexcept;

  /// Support atoms in increasing value order; PointMass yields one atom of
  /// weight 1. Throws UnsupportedScenario for continuous families.
  std::vector<Atom> support() const;

  /// Canonical one-line text form, used for digests.
  std::string describe() const;

  double quantile(double u) const;

 private:
  Params params_;
  // For DiscreteFinite: thresholds[i] is the largest double not exceeding
  // the exact cumulative weight of atoms 0..i, so `u <= thresholds[i]`
  // agrees with the exact rational comparison for every double u.
  std::vector<double> thresholds_;
};

/// Inverse CDF. For DiscreteFinite, the smallest atom whose cumulative
/// weight is >= u. Throws DomainError unless 0 <= u <= 1.
double quantile(const LifetimeDistribution& dist, double u);

/// quantile(dist, stream.uniform()).
double sample(const LifetimeDistribution& dist, const RandomStream& stream);

}  // namespace redlab
