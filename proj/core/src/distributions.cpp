#include "redlab/distributions.hpp"

#include <cmath>
#include <sstream>

#include <fmt/format.h>

#include "redlab/errors.hpp"

namespace redlab {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool finite_nonnegative(double v) { return std::isfinite(v) && v >= 0.0; }

void validate(const Exponential& d) {
  if (!(std::isfinite(d.rate) && d.rate > 0.0)) {
    throw ValidationError("rate must be a positive finite number", "rate");
  }
}

void validate(const Weibull& d) {
  if (!(std::isfinite(d.shape) && d.shape > 0.0)) {
    throw ValidationError("shape must be a positive finite number", "shape");
  }
  if (!(std::isfinite(d.scale) && d.scale > 0.0)) {
    throw ValidationError("scale must be a positive finite number", "scale");
  }
}

void validate(const Uniform& d) {
  if (!finite_nonnegative(d.lo)) throw ValidationError("lo must be finite and >= 0", "lo");
  if (!(std::isfinite(d.hi) && d.hi > d.lo)) throw ValidationError("hi must be finite and > lo", "hi");
}

void validate(const PointMass& d) {
  if (!finite_nonnegative(d.value)) throw ValidationError("value must be finite and >= 0", "value");
}

void validate(const DiscreteFinite& d) {
  if (d.atoms.empty()) throw ValidationError("at least one atom is required", "atoms");
  Rational total = 0;
  for (std::size_t i = 0; i < d.atoms.size(); ++i) {
    const Atom& a = d.atoms[i];
    const std::string path = fmt::format("atoms[{}]", i);
    if (!finite_nonnegative(a.value)) throw ValidationError("value must be finite and >= 0", path + ".value");
    if (i > 0 && !(a.value > d.atoms[i - 1].value)) {
      throw ValidationError("atom values must be strictly increasing", path + ".value");
    }
    if (sgn(a.weight) <= 0) throw ValidationError("weight must be positive", path + ".weight");
    total += a.weight;
  }
  if (total != 1) {
    throw ValidationError("weights sum to " + to_fraction_string(total) + ", expected exactly 1",
                          "atoms");
  }
}

std::string num(double v) { return fmt::format("{:.17g}", v); }

}  // namespace

LifetimeDistribution::LifetimeDistribution(Params params) : params_(std::move(params)) {
  std::visit([](const auto& d) { validate(d); }, params_);
  if (const auto* d = std::get_if<DiscreteFinite>(&params_)) {
    Rational cumulative = 0;
    thresholds_.reserve(d->atoms.size());
    for (const Atom& a : d->atoms) {
      cumulative += a.weight;
      // mpq_get_d truncates toward zero, i.e. rounds down for positive values.
      thresholds_.push_back(cumulative.get_d());
    }
    thresholds_.back() = 1.0;
  }
}

LifetimeDistribution LifetimeDistribution::exponential(double rate) {
  return LifetimeDistribution(Exponential{rate});
}
LifetimeDistribution LifetimeDistribution::weibull(double shape, double scale) {
  return LifetimeDistribution(Weibull{shape, scale});
}
LifetimeDistribution LifetimeDistribution::uniform(double lo, double hi) {
  return LifetimeDistribution(Uniform{lo, hi});
}
LifetimeDistribution LifetimeDistribution::point_mass(double value) {
  return LifetimeDistribution(PointMass{value});
}
LifetimeDistribution LifetimeDistribution::discrete(std::vector<Atom> atoms) {
  return LifetimeDistribution(DiscreteFinite{std::move(atoms)});
}

bool LifetimeDistribution::has_finite_support() const noexcept {
  return std::holds_alternative<PointMass>(params_) || std::holds_alternative<DiscreteFinite>(params_);
}

std::vector<Atom> LifetimeDistribution::support() const {
  if (const auto* p = std::get_if<PointMass>(&params_)) return {Atom{p->value, Rational(1)}};
  if (const auto* d = std::get_if<DiscreteFinite>(&params_)) return d->atoms;
  throw UnsupportedScenario("distribution '" + describe() + "' has no finite support");
}

std::string LifetimeDistribution::describe() const {
  return std::visit(
      Overloaded{
          [](const Exponential& d) { return "exponential(rate=" + num(d.rate) + ")"; },
          [](const Weibull& d) {
            return "weibull(shape=" + num(d.shape) + ",scale=" + num(d.scale) + ")";
          },
          [](const Uniform& d) { return "uniform(lo=" + num(d.lo) + ",hi=" + num(d.hi) + ")"; },
          [](const PointMass& d) { return "point(value=" + num(d.value) + ")"; },
          [](const DiscreteFinite& d) {
            std::string out = "discrete(";
            for (std::size_t i = 0; i < d.atoms.size(); ++i) {
              if (i) out += ",";
              out += num(d.atoms[i].value) + ":" + to_fraction_string(d.atoms[i].weight);
            }
            return out + ")";
          },
      },
      params_);
}

double LifetimeDistribution::quantile(double u) const {
  if (!(u >= 0.0 && u <= 1.0)) throw DomainError(fmt::format("quantile level {} outside [0,1]", u));
  return std::visit(
      Overloaded{
          [u](const Exponential& d) { return -std::log1p(-u) / d.rate; },
          [u](const Weibull& d) { return d.scale * std::pow(-std::log1p(-u), 1.0 / d.shape); },
          [u](const Uniform& d) { return d.lo + u * (d.hi - d.lo); },
          [](const PointMass& d) { return d.value; },
          [u, this](const DiscreteFinite& d) {
            for (std::size_t i = 0; i < thresholds_.size(); ++i) {
              if (u <= thresholds_[i]) return d.atoms[i].value;
            }
            return d.atoms.back().value;
          },
      },
      params_);
}

double quantile(const LifetimeDistribution& dist, double u) { return dist.quantile(u); }

double sample(const LifetimeDistribution& dist, const RandomStream& stream) {
  return dist.quantile(stream.uniform());
}

}  // namespace redlab
