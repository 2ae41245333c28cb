#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "redlab/oracle.hpp"
#include "redlab/precedence.hpp"
#include "redlab/statespace.hpp"

namespace redlab::cli {

/// Provenance embedded in every report.
struct Provenance {
  std::string command;
  std::string config_digest;
};

/// Fixed CSV column order for compare and sweep rows.
inline constexpr std::string_view kPrecedenceCsvHeader =
    "n,k,m,mode,p_gt,p_lt,p_eq,ci_gt_lo,ci_gt_hi,ci_lt_lo,ci_lt_hi,verdict,seed,"
    "trials,wins_a,wins_b,ties,scenario_digest,config_digest,version";

inline constexpr std::string_view kOracleCsvHeader =
    "n,k,m,mode,p_gt,p_lt,p_eq,outcome_count,verdict,scenario_digest,config_digest,version";

inline constexpr std::string_view kVerifyCsvHeader =
    "n,k,m,mode,cases_feasible,sys_over_comp,comp_over_sys,multi_live,partition_check,claims_hold";

/// %.17g, the float format of every CSV report.
std::string format_double(double value);

nlohmann::ordered_json precedence_json(const Scenario& scenario, const PrecedenceReport& report);
std::string precedence_csv_row(const Scenario& scenario, const PrecedenceReport& report,
                               const Provenance& provenance);

/// Exact verdict from exact probabilities.
Verdict exact_verdict(const ExactReport& report);
nlohmann::ordered_json exact_json(const Scenario& scenario, const ExactReport& report);
std::string exact_csv_row(const Scenario& scenario, const ExactReport& report, const Provenance& provenance);

/// Claims the verify command checks for one configuration: no case system
/// is feasible, sys_over_comp is empty, comp_over_sys is nonempty iff
/// k >= 2, and partition_check holds.
bool claims_hold(const CaseReport& report);

/// `list_limit` caps the rendered divergence lists (0 = unlimited); their
/// full sizes are always reported.
nlohmann::ordered_json case_report_json(const CaseReport& report, std::size_t list_limit);
std::string case_report_csv_row(const CaseReport& report);

/// Top-level envelope: {"tool", "version", "command", "config_digest", ...}.
nlohmann::ordered_json envelope(const Provenance& provenance);

}  // namespace redlab::cli
