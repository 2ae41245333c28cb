#include <doctest.h>

#include <random>

#include "redlab/errors.hpp"
#include "redlab/oracle.hpp"
#include "support/generators.hpp"
#include "support/reference_enumerator.hpp"

using redlab::Atom;
using redlab::LifetimeDistribution;
using redlab::Mode;
using redlab::Rational;

namespace {

LifetimeDistribution two_atoms() {
  return LifetimeDistribution::discrete({Atom{1.0, Rational(1, 2)}, Atom{2.0, Rational(1, 2)}});
}

}  // namespace

TEST_CASE("exact_sp examples") {
  SUBCASE("n=1 active is an identity") {
    auto s = redlab::testing::uniform_scenario(1, 1, 1, Mode::Active, two_atoms());
    s.y[0][0] = LifetimeDistribution::discrete({Atom{0.5, Rational(1, 3)}, Atom{3.0, Rational(2, 3)}});
    const auto r = redlab::exact_sp(s);
    CHECK(r.p_eq == 1);
    CHECK(r.outcome_count == 4);
  }
  SUBCASE("iid two-atom active n=2 k=2 m=1") {
    // 16 equally likely outcomes, enumerated by hand in
    // tests/oracles/derive_expected.py: only x=(2,1),y=(1,2) and x=(1,2),y=(2,1)
    // give a=2 > b=1.
    const auto s = redlab::testing::uniform_scenario(2, 2, 1, Mode::Active, two_atoms());
    const auto r = redlab::exact_sp(s);
    CHECK(r.p_gt == Rational(1, 8));
    CHECK(r.p_lt == 0);
    CHECK(r.p_eq == Rational(7, 8));
    CHECK(r.outcome_count == 16);
  }
  SUBCASE("deterministic cold k=1") {
    const auto s = redlab::testing::point_scenario(1, Mode::Cold, {2, 1}, {{1, 3}});
    const auto r = redlab::exact_sp(s);
    CHECK(r.p_lt == 1);
    CHECK(r.outcome_count == 1);
  }
}

TEST_CASE("exact_sp errors") {
  const auto continuous = redlab::testing::exponential_scenario(2, 2, 1, Mode::Active);
  CHECK_THROWS_AS(redlab::exact_sp(continuous), redlab::UnsupportedScenario);

  const auto big = redlab::testing::uniform_scenario(3, 2, 2, Mode::Active, two_atoms());  // 2^9 outcomes
  try {
    redlab::exact_sp(big, 100);
    FAIL("expected a budget error");
  } catch (const redlab::BudgetError& e) {
    CHECK(e.required() == 512);
    CHECK(std::string(e.what()).find("512") != std::string::npos);
  }
  CHECK_NOTHROW(redlab::exact_sp(big, 512));
}

TEST_CASE("outcome_count saturates") {
  std::vector<Atom> atoms;
  for (int i = 0; i < 64; ++i) atoms.push_back(Atom{static_cast<double>(i), Rational(1, 64)});
  const auto wide = LifetimeDistribution::discrete(atoms);
  const auto s = redlab::testing::uniform_scenario(6, 3, 3, Mode::Active, wide);  // 64^24 = 2^144
  CHECK(redlab::outcome_count(s) == std::numeric_limits<std::uint64_t>::max());
  CHECK_THROWS_AS(redlab::exact_sp(s), redlab::BudgetError);
}

TEST_CASE("exact_sp structural invariants over random finite scenarios") {
  std::mt19937_64 rng(31337);
  for (int iter = 0; iter < 60; ++iter) {
    const int n = 1 + static_cast<int>(rng() % 3);
    const int k = 1 + static_cast<int>(rng() % static_cast<unsigned>(n));
    const int m = 1 + static_cast<int>(rng() % 2);
    for (Mode mode : {Mode::Active, Mode::Cold}) {
      redlab::Scenario s;
      s.spec = redlab::SystemSpec::make(n, k);
      s.m = m;
      s.mode = mode;
      for (int j = 0; j < n; ++j) s.x.push_back(redlab::testing::random_discrete(rng, 3));
      s.y.resize(static_cast<std::size_t>(m));
      for (auto& row : s.y) {
        for (int j = 0; j < n; ++j) row.push_back(redlab::testing::random_discrete(rng, 3));
      }
      const auto r = redlab::exact_sp(s);
      CHECK(r.p_gt + r.p_lt + r.p_eq == 1);
      if (mode == Mode::Active) {
        CHECK(r.p_lt == 0);
        if (k == 1) CHECK(r.p_eq == 1);
      } else {
        if (k == n) CHECK(r.p_lt == 0);
        if (k == 1) CHECK(r.p_gt == 0);
      }
    }
  }
}

TEST_CASE("exact_sp matches the naive reference enumerator rational-for-rational") {
  std::mt19937_64 rng(4242);
  for (int iter = 0; iter < 25; ++iter) {
    const int n = 1 + static_cast<int>(rng() % 3);
    const int k = 1 + static_cast<int>(rng() % static_cast<unsigned>(n));
    const int m = 1 + static_cast<int>(rng() % 2);
    const Mode mode = iter % 2 ? Mode::Cold : Mode::Active;
    redlab::Scenario s;
    s.spec = redlab::SystemSpec::make(n, k);
    s.m = m;
    s.mode = mode;
    for (int j = 0; j < n; ++j) s.x.push_back(redlab::testing::random_discrete(rng, 3));
    s.y.resize(static_cast<std::size_t>(m));
    for (auto& row : s.y) {
      for (int j = 0; j < n; ++j) row.push_back(redlab::testing::random_discrete(rng, 3));
    }
    if (redlab::outcome_count(s) > 10000) continue;
    const auto fast = redlab::exact_sp(s);
    const auto naive = redlab::testing::reference_exact(s);
    CHECK(fast.p_gt == naive.gt);
    CHECK(fast.p_lt == naive.lt);
    CHECK(fast.p_eq == naive.eq);
  }
}

TEST_CASE("non-integer atom values take the exact rational path") {
  // 0.1 + 0.2 != 0.3 in binary; the oracle compares the exact dyadic values.
  const auto a = LifetimeDistribution::discrete({Atom{0.1, Rational(1, 2)}, Atom{0.3, Rational(1, 2)}});
  const auto b = LifetimeDistribution::discrete({Atom{1e-300, Rational(3, 4)}, Atom{0.2, Rational(1, 4)}});
  redlab::Scenario s = redlab::testing::uniform_scenario(2, 1, 1, Mode::Cold, a);
  s.y[0] = {b, a};
  const auto fast = redlab::exact_sp(s);
  const auto naive = redlab::testing::reference_exact(s);
  CHECK(fast.p_gt == naive.gt);
  CHECK(fast.p_lt == naive.lt);
  CHECK(fast.p_eq == naive.eq);
}

TEST_CASE("threaded enumeration gives identical rationals") {
  std::mt19937_64 rng(8);
  redlab::Scenario s;
  s.spec = redlab::SystemSpec::make(3, 2);
  s.m = 2;
  s.mode = Mode::Cold;
  for (int j = 0; j < 3; ++j) s.x.push_back(redlab::testing::random_discrete(rng, 3));
  s.y.resize(2);
  for (auto& row : s.y) {
    for (int j = 0; j < 3; ++j) row.push_back(redlab::testing::random_discrete(rng, 3));
  }
  const auto serial = redlab::exact_sp(s, redlab::kDefaultMaxOutcomes, 1);
  for (unsigned threads : {2U, 5U, 8U}) {
    const auto par = redlab::exact_sp(s, redlab::kDefaultMaxOutcomes, threads);
    CHECK(par.p_gt == serial.p_gt);
    CHECK(par.p_lt == serial.p_lt);
    CHECK(par.p_eq == serial.p_eq);
  }
}
