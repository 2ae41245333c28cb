#include "report.hpp"

#include <fmt/format.h>

#include "redlab/version.hpp"

namespace redlab::cli {

using nlohmann::ordered_json;

std::string format_double(double value) { return fmt::format("{:.17g}", value); }

ordered_json envelope(const Provenance& provenance) {
  ordered_json j;
  j["tool"] = "redlab";
  j["version"] = kVersion;
  j["command"] = provenance.command;
  j["config_digest"] = provenance.config_digest;
  return j;
}

namespace {

ordered_json scenario_header(const Scenario& s) {
  ordered_json j;
  j["n"] = s.spec.n;
  j["k"] = s.spec.k;
  j["m"] = s.m;
  j["mode"] = to_string(s.mode);
  return j;
}

std::string scenario_prefix(const Scenario& s) {
  return fmt::format("{},{},{},{}", s.spec.n, s.spec.k, s.m, to_string(s.mode));
}

}  // namespace

ordered_json precedence_json(const Scenario& scenario, const PrecedenceReport& r) {
  ordered_json j;
  j["scenario"] = scenario_header(scenario);
  j["scenario_digest"] = r.scenario_digest;
  j["seed"] = r.seed;
  j["trials"] = r.tally.n_trials;
  j["tie_tol"] = r.tie_tol;
  j["alpha"] = r.alpha;
  j["confidence"] = r.confidence;
  j["wins_a"] = r.tally.wins_a;
  j["wins_b"] = r.tally.wins_b;
  j["ties"] = r.tally.ties;
  j["p_gt"] = r.p_gt;
  j["p_lt"] = r.p_lt;
  j["p_eq"] = r.p_eq;
  j["ci_gt"] = {r.ci_gt.lo, r.ci_gt.hi};
  j["ci_lt"] = {r.ci_lt.lo, r.ci_lt.hi};
  j["p_value"] = r.p_value;
  j["verdict"] = to_string(r.verdict);
  if (r.verdict == Verdict::Inconclusive) {
    j["verdict_note"] =
        "inconclusive is not an sp relation: the symmetry test did not reject at alpha, "
        "yet strict wins are unequal";
  }
  return j;
}

std::string precedence_csv_row(const Scenario& scenario, const PrecedenceReport& r, const Provenance& p) {
  return fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}", scenario_prefix(scenario),
                     format_double(r.p_gt), format_double(r.p_lt), format_double(r.p_eq),
                     format_double(r.ci_gt.lo), format_double(r.ci_gt.hi), format_double(r.ci_lt.lo),
                     format_double(r.ci_lt.hi), to_string(r.verdict), r.seed, r.tally.n_trials, r.tally.wins_a,
                     r.tally.wins_b, r.tally.ties, r.scenario_digest, p.config_digest, kVersion);
}

Verdict exact_verdict(const ExactReport& r) {
  if (r.p_gt > r.p_lt) return Verdict::ASpGreater;
  if (r.p_lt > r.p_gt) return Verdict::BSpGreater;
  return Verdict::SpEqual;
}

ordered_json exact_json(const Scenario& scenario, const ExactReport& r) {
  ordered_json j;
  j["scenario"] = scenario_header(scenario);
  j["scenario_digest"] = r.scenario_digest;
  j["outcome_count"] = r.outcome_count;
  j["p_gt"] = to_fraction_string(r.p_gt);
  j["p_lt"] = to_fraction_string(r.p_lt);
  j["p_eq"] = to_fraction_string(r.p_eq);
  j["verdict"] = to_string(exact_verdict(r));
  return j;
}

std::string exact_csv_row(const Scenario& scenario, const ExactReport& r, const Provenance& p) {
  return fmt::format("{},{},{},{},{},{},{},{},{}", scenario_prefix(scenario), to_fraction_string(r.p_gt),
                     to_fraction_string(r.p_lt), to_fraction_string(r.p_eq), r.outcome_count,
                     to_string(exact_verdict(r)), r.scenario_digest, p.config_digest, kVersion);
}

bool claims_hold(const CaseReport& r) {
  const bool expect_reverse = r.spec.k >= 2;
  return !r.any_case_feasible() && r.divergence_sys_over_comp.empty() &&
         r.divergence_comp_over_sys.empty() != expect_reverse && r.partition_check;
}

namespace {

ordered_json case_json(const CaseResult& c) {
  ordered_json j;
  j["label"] = c.label;
  j["feasible"] = c.feasible;
  j["witness"] = c.witness ? ordered_json(c.witness->to_string()) : ordered_json(nullptr);
  return j;
}

ordered_json assignment_list(const std::vector<StateAssignment>& list, std::size_t limit) {
  ordered_json arr = ordered_json::array();
  for (std::size_t i = 0; i < list.size() && (limit == 0 || i < limit); ++i) arr.push_back(list[i].to_string());
  return arr;
}

}  // namespace

ordered_json case_report_json(const CaseReport& r, std::size_t list_limit) {
  ordered_json j;
  j["n"] = r.spec.n;
  j["k"] = r.spec.k;
  j["m"] = r.m;
  j["mode"] = to_string(r.mode);
  j["valid_assignments"] = r.valid_assignments;
  ordered_json cases = ordered_json::array();
  for (const auto& c : r.cases) cases.push_back(case_json(c));
  j["cases"] = cases;
  j["reverse"] = case_json(r.reverse);
  j["sys_over_comp_count"] = r.divergence_sys_over_comp.size();
  j["sys_over_comp"] = assignment_list(r.divergence_sys_over_comp, list_limit);
  j["comp_over_sys_count"] = r.divergence_comp_over_sys.size();
  j["comp_over_sys"] = assignment_list(r.divergence_comp_over_sys, list_limit);
  if (r.mode == Mode::Cold) j["multi_live_count"] = r.multi_live_count;
  j["partition_check"] = r.partition_check;
  j["claims_hold"] = claims_hold(r);
  return j;
}

std::string case_report_csv_row(const CaseReport& r) {
  int feasible = 0;
  for (const auto& c : r.cases) feasible += c.feasible ? 1 : 0;
  return fmt::format("{},{},{},{},{},{},{},{},{},{}", r.spec.n, r.spec.k, r.m, to_string(r.mode), feasible,
                     r.divergence_sys_over_comp.size(), r.divergence_comp_over_sys.size(), r.multi_live_count,
                     r.partition_check ? "true" : "false", claims_hold(r) ? "true" : "false");
}

}  // namespace redlab::cli
