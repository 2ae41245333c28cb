#include "redlab/statespace.hpp"

#include <bit>

#include <fmt/format.h>

#include "redlab/errors.hpp"

namespace redlab {
namespace {

void check_shape(const SystemSpec& spec, const StateAssignment& a) {
  detail::check_length(spec, a.x.size(), "x");
  if (a.ys.empty()) throw DimensionError("at least one redundancy layer is required");
  for (const auto& y : a.ys) detail::check_length(spec, y.size(), "y");
}

void check_mode(const StateAssignment& a, Mode mode) {
  if (mode == Mode::Cold && !a.satisfies_cold_constraint()) {
    throw InvalidAssignment("cold assignment " + a.to_string() + " has two live units at one position");
  }
}

int live_count(const std::vector<std::uint8_t>& v) {
  int s = 0;
  for (auto b : v) s += b;
  return s;
}

void check_guard(const SystemSpec& spec, int m, int max_bits) {
  spec.validate();
  if (m < 1) throw ValidationError("m must be >= 1", "m");
  const long bits = static_cast<long>(spec.n) * (m + 1);
  if (bits > max_bits || bits > 62) {
    throw BudgetError(fmt::format("state enumeration needs {} bits, guard is {}", bits, max_bits),
                      static_cast<std::uint64_t>(bits), static_cast<std::uint64_t>(max_bits));
  }
}

// Bit-level view of an assignment for the enumeration loops. Layer 0 is x.
struct PackedState {
  std::vector<std::uint32_t> layers;  // n-bit masks
  std::uint32_t join = 0;
  bool exclusive = true;
};

class Packer {
 public:
  Packer(int n, int m) : n_(n), m_(m), total_(n * (m + 1)), mask_((1U << n) - 1U) {}

  void unpack(std::uint64_t bits, PackedState& out) const {
    out.layers.resize(static_cast<std::size_t>(m_ + 1));
    out.join = 0;
    out.exclusive = true;
    for (int i = 0; i <= m_; ++i) {
      const int shift = total_ - (i + 1) * n_;
      const auto layer = static_cast<std::uint32_t>((bits >> shift) & mask_);
      if (out.join & layer) out.exclusive = false;
      out.join |= layer;
      out.layers[static_cast<std::size_t>(i)] = layer;
    }
  }

  std::uint64_t count() const { return std::uint64_t{1} << total_; }

 private:
  int n_;
  int m_;
  int total_;
  std::uint32_t mask_;
};

StateSums sums_of(const PackedState& p, int m, Mode mode) {
  StateSums s;
  s.x_sum = std::popcount(p.layers[0]);
  s.y_sums.resize(static_cast<std::size_t>(m));
  int total = s.x_sum;
  for (int i = 0; i < m; ++i) {
    s.y_sums[static_cast<std::size_t>(i)] = std::popcount(p.layers[static_cast<std::size_t>(i) + 1]);
    total += s.y_sums[static_cast<std::size_t>(i)];
  }
  s.composed_sum = mode == Mode::Active ? std::popcount(p.join) : total;
  return s;
}

struct Phis {
  bool comp = false;
  bool sys = false;
  int live_subsystems = 0;
};

Phis phis_of(const StateSums& s, int k, Mode mode) {
  Phis out;
  out.live_subsystems = s.x_sum >= k ? 1 : 0;
  for (int y : s.y_sums) out.live_subsystems += y >= k ? 1 : 0;
  out.comp = s.composed_sum >= k;
  out.sys = mode == Mode::Active ? out.live_subsystems >= 1 : out.live_subsystems == 1;
  return out;
}

// The φ-pattern precondition of each case, without the final composed-vector
// inequality.
bool pattern_holds(const std::string& label, const SystemSpec& spec, Mode mode, const StateSums& s) {
  const int k = spec.k;
  const bool x_live = s.x_sum >= k;
  int y_live = 0;
  for (int y : s.y_sums) y_live += y >= k ? 1 : 0;
  const int m = static_cast<int>(s.y_sums.size());
  if (mode == Mode::Active) {
    if (label == "I") return x_live && y_live == 0;
    if (label == "II") return x_live && y_live == m;
    // Family over r = 1..m-1 and every choice of the r live layers.
    if (label == "III") return x_live && y_live >= 1 && y_live <= m - 1;
    if (label == "IV") return !x_live && y_live == m;
    if (label == "V") return !x_live && y_live >= 1 && y_live <= m - 1;
  } else {
    if (label == "I") return x_live && y_live == 0;
    // Family over r = 1..m: exactly layer r live.
    if (label == "II") return !x_live && y_live == 1;
  }
  if (label == "reverse") return !x_live && y_live == 0;
  throw ValidationError("unknown case label '" + label + "'");
}

}  // namespace

std::string StateAssignment::to_string() const {
  std::string out = "x=";
  for (auto b : x) out += b ? '1' : '0';
  for (std::size_t i = 0; i < ys.size(); ++i) {
    out += fmt::format(" y{}=", i + 1);
    for (auto b : ys[i]) out += b ? '1' : '0';
  }
  return out;
}

std::string StateAssignment::bit_string() const {
  std::string out;
  for (auto b : x) out += b ? '1' : '0';
  for (const auto& y : ys) {
    for (auto b : y) out += b ? '1' : '0';
  }
  return out;
}

bool StateAssignment::satisfies_cold_constraint() const {
  for (std::size_t j = 0; j < x.size(); ++j) {
    int live = x[j];
    for (const auto& y : ys) live += j < y.size() ? y[j] : 0;
    if (live > 1) return false;
  }
  return true;
}

StateAssignment decode_assignment(std::uint64_t bits, int n, int m) {
  StateAssignment a;
  const int total = n * (m + 1);
  auto bit_at = [&](int t) { return static_cast<std::uint8_t>((bits >> (total - 1 - t)) & 1U); };
  a.x.resize(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) a.x[static_cast<std::size_t>(j)] = bit_at(j);
  a.ys.assign(static_cast<std::size_t>(m), std::vector<std::uint8_t>(static_cast<std::size_t>(n)));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      a.ys[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = bit_at((i + 1) * n + j);
    }
  }
  return a;
}

StateSums state_sums(const StateAssignment& a, Mode mode) {
  StateSums s;
  s.x_sum = live_count(a.x);
  int total = s.x_sum;
  for (const auto& y : a.ys) {
    s.y_sums.push_back(live_count(y));
    total += s.y_sums.back();
  }
  if (mode == Mode::Active) {
    for (std::size_t j = 0; j < a.x.size(); ++j) {
      std::uint8_t v = a.x[j];
      for (const auto& y : a.ys) v |= y[j];
      s.composed_sum += v;
    }
  } else {
    s.composed_sum = total;
  }
  return s;
}

bool phi_component_level(const SystemSpec& spec, const StateAssignment& a, Mode mode) {
  check_shape(spec, a);
  check_mode(a, mode);
  std::vector<std::uint8_t> composed(a.x);
  for (const auto& y : a.ys) {
    for (std::size_t j = 0; j < composed.size(); ++j) {
      if (y[j] > 1) throw DomainError("state entries must be 0 or 1");
      composed[j] = mode == Mode::Active ? static_cast<std::uint8_t>(composed[j] | y[j])
                                         : static_cast<std::uint8_t>(composed[j] + y[j]);
    }
  }
  return structure_phi(spec, composed);
}

bool phi_system_level(const SystemSpec& spec, const StateAssignment& a, Mode mode) {
  check_shape(spec, a);
  check_mode(a, mode);
  int live = structure_phi(spec, a.x) ? 1 : 0;
  for (const auto& y : a.ys) live += structure_phi(spec, y) ? 1 : 0;
  return mode == Mode::Active ? live >= 1 : live == 1;
}

DivergenceSets enumerate_divergence(const SystemSpec& spec, int m, Mode mode, int max_bits) {
  check_guard(spec, m, max_bits);
  const Packer packer(spec.n, m);
  DivergenceSets out;
  PackedState p;
  for (std::uint64_t bits = 0; bits < packer.count(); ++bits) {
    packer.unpack(bits, p);
    if (mode == Mode::Cold && !p.exclusive) continue;
    ++out.valid_assignments;
    const Phis phi = phis_of(sums_of(p, m, mode), spec.k, mode);
    if (mode == Mode::Cold && phi.live_subsystems >= 2) {
      ++out.multi_live_count;
      continue;
    }
    if (phi.sys && !phi.comp) out.sys_over_comp.push_back(decode_assignment(bits, spec.n, m));
    if (phi.comp && !phi.sys) out.comp_over_sys.push_back(decode_assignment(bits, spec.n, m));
  }
  return out;
}

std::vector<std::string> case_labels(Mode mode) {
  if (mode == Mode::Active) return {"I", "II", "III", "IV", "V"};
  return {"I", "II"};
}

bool case_holds(const std::string& label, const SystemSpec& spec, Mode mode, const StateSums& sums) {
  if (!pattern_holds(label, spec, mode, sums)) return false;
  if (label == "reverse") return sums.composed_sum >= spec.k;
  return sums.composed_sum <= spec.k - 1;
}

bool CaseReport::any_case_feasible() const {
  for (const auto& c : cases) {
    if (c.feasible) return true;
  }
  return false;
}

CaseReport check_cases(const SystemSpec& spec, int m, Mode mode, int max_bits) {
  check_guard(spec, m, max_bits);
  CaseReport report;
  report.spec = spec;
  report.m = m;
  report.mode = mode;
  const auto labels = case_labels(mode);
  for (const auto& label : labels) report.cases.push_back({label, false, std::nullopt});
  report.reverse = {"reverse", false, std::nullopt};

  const Packer packer(spec.n, m);
  PackedState p;
  bool partition_ok = true;
  for (std::uint64_t bits = 0; bits < packer.count(); ++bits) {
    packer.unpack(bits, p);
    if (mode == Mode::Cold && !p.exclusive) continue;
    ++report.valid_assignments;
    const StateSums sums = sums_of(p, m, mode);
    const Phis phi = phis_of(sums, spec.k, mode);
    if (mode == Mode::Cold && phi.live_subsystems >= 2) ++report.multi_live_count;

    bool any_pattern = false;
    int systems_holding = 0;
    for (std::size_t c = 0; c < labels.size(); ++c) {
      if (pattern_holds(labels[c], spec, mode, sums)) any_pattern = true;
      if (case_holds(labels[c], spec, mode, sums)) {
        ++systems_holding;
        if (!report.cases[c].feasible) {
          report.cases[c].feasible = true;
          report.cases[c].witness = decode_assignment(bits, spec.n, m);
        }
      }
    }
    if (any_pattern != phi.sys) partition_ok = false;
    const bool direct = phi.sys && !phi.comp;
    if ((systems_holding > 0) != direct || systems_holding > 1) partition_ok = false;

    if (!report.reverse.feasible && case_holds("reverse", spec, mode, sums)) {
      report.reverse.feasible = true;
      report.reverse.witness = decode_assignment(bits, spec.n, m);
    }
  }
  report.partition_check = partition_ok;

  DivergenceSets div = enumerate_divergence(spec, m, mode, max_bits);
  report.divergence_sys_over_comp = std::move(div.sys_over_comp);
  report.divergence_comp_over_sys = std::move(div.comp_over_sys);
  return report;
}

}  // namespace redlab
