#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "redlab/systems.hpp"

namespace redlab {

inline constexpr int kDefaultMaxEnumBits = 24;

/// Joint binary state of the original components (x) and every redundancy
/// layer (ys) at one time instant.
struct StateAssignment {
  std::vector<std::uint8_t> x;
  std::vector<std::vector<std::uint8_t>> ys;

  /// Renders as "x=10 y1=01 y2=00".
  std::string to_string() const;

  /// Concatenated bit string x ys[0] ys[1] ...; the enumeration order.
  std::string bit_string() const;

  /// In Cold mode every position j has at most one live unit among
  /// x_j, y_1j, ..., y_mj.
  bool satisfies_cold_constraint() const;

  friend bool operator==(const StateAssignment&, const StateAssignment&) = default;
};

/// Decodes bit string index `bits` (x_1 is the most significant bit) into an
/// assignment with n positions and m layers.
StateAssignment decode_assignment(std::uint64_t bits, int n, int m);

/// Component level: φ of the join (Active) or of the sum vector (Cold).
/// Throws InvalidAssignment if a Cold assignment breaks the exclusivity
/// constraint and DimensionError on size mismatch.
bool phi_component_level(const SystemSpec& spec, const StateAssignment& assignment, Mode mode);

/// System level. Active: some subsystem is live. Cold: exactly one of the
/// m+1 subsystems is live; assignments with two or more live subsystems
/// evaluate to 0 under this formalism.
bool phi_system_level(const SystemSpec& spec, const StateAssignment& assignment, Mode mode);

struct DivergenceSets {
  /// φ_sys = 1 and φ_comp = 0, in lexicographic bit-string order.
  std::vector<StateAssignment> sys_over_comp;
  /// φ_comp = 1 and φ_sys = 0, in lexicographic bit-string order.
  std::vector<StateAssignment> comp_over_sys;
  /// Cold only: constraint-satisfying assignments with two or more live
  /// subsystems. They are counted here and left out of both lists.
  std::uint64_t multi_live_count = 0;
  /// Number of assignments that passed the mode's constraint filter.
  std::uint64_t valid_assignments = 0;
};

/// Exhaustive enumeration of all valid assignments. Throws BudgetError if
/// n·(m+1) exceeds `max_bits`.
DivergenceSets enumerate_divergence(const SystemSpec& spec, int m, Mode mode,
                                    int max_bits = kDefaultMaxEnumBits);

struct CaseResult {
  std::string label;
  bool feasible = false;
  std::optional<StateAssignment> witness;  // lexicographically smallest
};

struct CaseReport {
  SystemSpec spec;
  int m = 1;
  Mode mode = Mode::Active;
  /// Active: I..V. Cold: I..II.
  std::vector<CaseResult> cases;
  /// The reverse-direction system: every subsystem dead while the composed
  /// vector has at least k live entries.
  CaseResult reverse;
  std::vector<StateAssignment> divergence_sys_over_comp;
  std::vector<StateAssignment> divergence_comp_over_sys;
  std::uint64_t multi_live_count = 0;
  std::uint64_t valid_assignments = 0;
  /// True iff the case φ-patterns cover exactly {φ_sys = 1}, and the full
  /// case systems partition exactly {φ_sys = 1, φ_comp = 0}.
  bool partition_check = false;

  bool any_case_feasible() const;
};

/// Sums the case systems are written in.
struct StateSums {
  int x_sum = 0;
  std::vector<int> y_sums;
  int composed_sum = 0;  // Σ_j of the join (Active) or of the sum vector (Cold)
};

StateSums state_sums(const StateAssignment& assignment, Mode mode);

/// Evaluates the named case's inequality system on `sums`. Labels are
/// "I".."V" for Active, "I".."II" for Cold, and "reverse" for both.
bool case_holds(const std::string& label, const SystemSpec& spec, Mode mode, const StateSums& sums);

/// Labels of the case systems for `mode`, in report order.
std::vector<std::string> case_labels(Mode mode);

CaseReport check_cases(const SystemSpec& spec, int m, Mode mode, int max_bits = kDefaultMaxEnumBits);

}  // namespace redlab
