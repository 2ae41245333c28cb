#include "redlab/systems.hpp"

#include <numeric>

#include <fmt/format.h>

namespace redlab {

SystemSpec SystemSpec::make(int n, int k) {
  SystemSpec spec{n, k};
  spec.validate();
  return spec;
}

void SystemSpec::validate() const {
  if (n < 1) throw ValidationError("n must be >= 1, got " + std::to_string(n), "n");
  if (k < 1 || k > n) {
    throw ValidationError(fmt::format("k must satisfy 1 <= k <= n={}, got {}", n, k), "k");
  }
}

std::string_view to_string(Mode mode) { return mode == Mode::Active ? "active" : "cold"; }

Mode parse_mode(std::string_view text) {
  if (text == "active") return Mode::Active;
  if (text == "cold") return Mode::Cold;
  throw ValidationError("mode must be \"active\" or \"cold\", got \"" + std::string(text) + "\"", "mode");
}

void Scenario::validate() const {
  spec.validate();
  if (m < 1) throw ValidationError("m must be >= 1, got " + std::to_string(m), "m");
  if (x.size() != static_cast<std::size_t>(spec.n)) {
    throw ValidationError(fmt::format("expected {} distributions, got {}", spec.n, x.size()), "x");
  }
  if (y.size() != static_cast<std::size_t>(m)) {
    throw ValidationError(fmt::format("expected m={} rows, got {}", m, y.size()), "y");
  }
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i].size() != static_cast<std::size_t>(spec.n)) {
      throw ValidationError(fmt::format("expected {} distributions, got {}", spec.n, y[i].size()),
                            fmt::format("y[{}]", i));
    }
  }
}

std::string Scenario::canonical_text() const {
  std::string out = fmt::format("n={};k={};m={};mode={};x=[", spec.n, spec.k, m, to_string(mode));
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (j) out += ";";
    out += x[j].describe();
  }
  out += "];y=[";
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (i) out += "|";
    for (std::size_t j = 0; j < y[i].size(); ++j) {
      if (j) out += ";";
      out += y[i][j].describe();
    }
  }
  return out + "]";
}

std::string digest_hex(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return fmt::format("{:016x}", h);
}

std::string scenario_digest(const Scenario& scenario) { return digest_hex(scenario.canonical_text()); }

bool structure_phi(const SystemSpec& spec, std::span<const std::uint8_t> state) {
  detail::check_length(spec, state.size(), "state vector");
  int live = 0;
  for (std::uint8_t s : state) {
    if (s > 1) throw DomainError("state entries must be 0 or 1");
    live += s;
  }
  return live >= spec.k;
}

double component_level_lifetime(const Scenario& scenario, const Realization& realization) {
  return PairEvaluator<double>(scenario.spec, scenario.m, scenario.mode).component_level(realization);
}

double system_level_lifetime(const Scenario& scenario, const Realization& realization) {
  return PairEvaluator<double>(scenario.spec, scenario.m, scenario.mode).system_level(realization);
}

PairOutcome evaluate_pair(const Scenario& scenario, const Realization& realization) {
  return PairEvaluator<double>(scenario.spec, scenario.m, scenario.mode).evaluate(realization);
}

void draw_realization(const Scenario& scenario, std::uint64_t seed, std::uint64_t trial, Realization& out) {
  const auto n = static_cast<std::size_t>(scenario.spec.n);
  out.x.resize(n);
  out.y.resize(static_cast<std::size_t>(scenario.m));
  for (std::size_t j = 0; j < n; ++j) {
    out.x[j] = sample(scenario.x[j], RandomStream(seed, trial, {0, static_cast<std::uint32_t>(j)}));
  }
  for (std::size_t i = 0; i < out.y.size(); ++i) {
    out.y[i].resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      out.y[i][j] = sample(scenario.y[i][j], RandomStream(seed, trial,
                                                          {static_cast<std::uint32_t>(i + 1),
                                                           static_cast<std::uint32_t>(j)}));
    }
  }
}

Realization draw_realization(const Scenario& scenario, std::uint64_t seed, std::uint64_t trial) {
  Realization out;
  draw_realization(scenario, seed, trial, out);
  return out;
}

}  // namespace redlab
