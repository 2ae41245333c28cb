#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "config.hpp"
#include "redlab/errors.hpp"
#include "redlab/version.hpp"
#include "report.hpp"

namespace redlab::cli {
namespace {

using nlohmann::ordered_json;

struct Options {
  std::string config_path;
  std::string out_path;
  std::optional<std::string> format;
  std::optional<std::uint64_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<double> alpha;
  std::optional<double> confidence;
  std::optional<double> tie_tol;
  unsigned threads = 1;
  int max_n = 5;
  int max_m = 3;
  std::string verify_mode = "both";
  std::size_t list_limit = 16;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read config file '" + path + "'", "--config");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit(const std::string& text, const Options& opt, std::ostream& out) {
  if (opt.out_path.empty()) {
    out << text;
    out.flush();
    return;
  }
  std::ofstream file(opt.out_path, std::ios::binary | std::ios::trunc);
  if (!file) throw ValidationError("cannot write output file '" + opt.out_path + "'", "--out");
  file << text;
}

// Command-line overrides are applied after parsing, then re-validated.
RunConfig load_config(const Options& opt, bool required) {
  RunConfig cfg;
  if (!opt.config_path.empty()) {
    cfg = parse_config(read_file(opt.config_path));
  } else if (required) {
    throw ValidationError("this command needs --config PATH", "--config");
  }
  if (opt.format) cfg.format = parse_format(*opt.format);
  if (opt.trials) {
    if (*opt.trials < 1) throw ValidationError("trials must be >= 1", "--trials");
    cfg.trials = *opt.trials;
  }
  if (opt.seed) cfg.seed = *opt.seed;
  if (opt.alpha) {
    if (!(*opt.alpha > 0.0 && *opt.alpha < 1.0)) throw ValidationError("alpha must lie in (0,1)", "--alpha");
    cfg.alpha = *opt.alpha;
  }
  if (opt.confidence) {
    if (!(*opt.confidence > 0.0 && *opt.confidence < 1.0)) {
      throw ValidationError("confidence must lie in (0,1)", "--confidence");
    }
    cfg.confidence = *opt.confidence;
  }
  if (opt.tie_tol) {
    if (!(*opt.tie_tol >= 0.0)) throw ValidationError("tie_tol must be >= 0", "--tie-tol");
    cfg.tie_tol = *opt.tie_tol;
  }
  return cfg;
}

// Covers the document and every effective run parameter; excludes the
// worker count and the output path, which never change report bytes.
std::string config_digest(const RunConfig& cfg, std::string_view command) {
  return digest_hex(fmt::format("{}|{}|trials={}|seed={}|tie_tol={:.17g}|alpha={:.17g}|confidence={:.17g}",
                                command, cfg.canonical_document, cfg.trials, cfg.seed, cfg.tie_tol, cfg.alpha,
                                cfg.confidence));
}

const Scenario& require_scenario(const RunConfig& cfg) {
  if (!cfg.scenario) throw ValidationError("config has no scenario (n, k, m, mode, x, y)", "n");
  return *cfg.scenario;
}

int run_compare(const Options& opt, std::ostream& out) {
  const RunConfig cfg = load_config(opt, true);
  const Scenario& scenario = require_scenario(cfg);
  const Provenance prov{"compare", config_digest(cfg, "compare")};
  const PrecedenceReport report =
      compare(scenario, cfg.trials, cfg.seed, cfg.tie_tol, cfg.alpha, cfg.confidence, opt.threads);
  if (cfg.format == OutputFormat::Json) {
    ordered_json j = envelope(prov);
    j.update(precedence_json(scenario, report));
    emit(j.dump(2) + "\n", opt, out);
  } else {
    emit(std::string(kPrecedenceCsvHeader) + "\n" + precedence_csv_row(scenario, report, prov) + "\n", opt, out);
  }
  return kExitOk;
}

int run_oracle(const Options& opt, std::ostream& out) {
  const RunConfig cfg = load_config(opt, true);
  const Scenario& scenario = require_scenario(cfg);
  const Provenance prov{"oracle", config_digest(cfg, "oracle")};
  const ExactReport report = exact_sp(scenario, cfg.max_outcomes, opt.threads);
  if (cfg.format == OutputFormat::Json) {
    ordered_json j = envelope(prov);
    j.update(exact_json(scenario, report));
    emit(j.dump(2) + "\n", opt, out);
  } else {
    emit(std::string(kOracleCsvHeader) + "\n" + exact_csv_row(scenario, report, prov) + "\n", opt, out);
  }
  return kExitOk;
}

int run_verify(const Options& opt, std::ostream& out, std::ostream& err) {
  const RunConfig cfg = load_config(opt, false);
  const int max_bits = resolve_enum_bits(cfg.max_enum_bits);
  if (opt.max_n < 1) throw ValidationError("must be >= 1", "--max-n");
  if (opt.max_m < 1) throw ValidationError("must be >= 1", "--max-m");
  std::vector<Mode> modes;
  if (opt.verify_mode == "both") {
    modes = {Mode::Active, Mode::Cold};
  } else {
    modes = {parse_mode(opt.verify_mode)};
  }

  const Provenance prov{"verify", config_digest(cfg, fmt::format("verify|{}|{}|{}|{}", opt.max_n, opt.max_m,
                                                                 opt.verify_mode, max_bits))};
  std::vector<CaseReport> reports;
  std::optional<std::string> first_failure;
  for (Mode mode : modes) {
    for (int n = 1; n <= opt.max_n; ++n) {
      for (int m = 1; m <= opt.max_m; ++m) {
        for (int k = 1; k <= n; ++k) {
          reports.push_back(check_cases(SystemSpec::make(n, k), m, mode, max_bits));
          if (!first_failure && !claims_hold(reports.back())) {
            first_failure = fmt::format("CLAIM VIOLATED at n={} k={} m={} mode={}", n, k, m, to_string(mode));
          }
        }
      }
    }
  }
  const std::string summary = first_failure.value_or("ALL CLAIMS HOLD");

  if (cfg.format == OutputFormat::Json) {
    ordered_json j = envelope(prov);
    j["max_enum_bits"] = max_bits;
    ordered_json arr = ordered_json::array();
    for (const auto& r : reports) arr.push_back(case_report_json(r, opt.list_limit));
    j["configs"] = arr;
    j["summary"] = summary;
    emit(j.dump(2) + "\n", opt, out);
  } else {
    std::string text = std::string(kVerifyCsvHeader) + "\n";
    for (const auto& r : reports) text += case_report_csv_row(r) + "\n";
    emit(text, opt, out);
  }
  err << summary << "\n";
  return first_failure ? kExitClaimViolated : kExitOk;
}

int run_sweep(const Options& opt, std::ostream& out) {
  const RunConfig cfg = load_config(opt, true);
  if (!cfg.sweep) throw ValidationError("config has no sweep block", "sweep");
  const SweepSpec& sw = *cfg.sweep;
  const Provenance prov{"sweep", config_digest(cfg, "sweep")};

  std::string csv = std::string(kPrecedenceCsvHeader) + "\n";
  ordered_json cells = ordered_json::array();
  for (Mode mode : sw.modes) {
    for (int n : sw.n_values) {
      std::vector<int> ks;
      if (sw.k_values) {
        for (int k : *sw.k_values) {
          if (k <= n) ks.push_back(k);
        }
      } else {
        for (int k = 1; k <= n; ++k) ks.push_back(k);
      }
      for (int k : ks) {
        for (int m : sw.m_values) {
          const Scenario scenario = sw.cell(n, k, m, mode);
          const PrecedenceReport report =
              compare(scenario, cfg.trials, cfg.seed, cfg.tie_tol, cfg.alpha, cfg.confidence, opt.threads);
          if (cfg.format == OutputFormat::Csv) {
            csv += precedence_csv_row(scenario, report, prov) + "\n";
          } else {
            cells.push_back(precedence_json(scenario, report));
          }
        }
      }
    }
  }
  if (cfg.format == OutputFormat::Csv) {
    emit(csv, opt, out);
  } else {
    ordered_json j = envelope(prov);
    j["cells"] = cells;
    emit(j.dump(2) + "\n", opt, out);
  }
  return kExitOk;
}

void add_common(CLI::App* cmd, Options& opt, bool config_required) {
  auto* config = cmd->add_option("--config", opt.config_path, "Scenario configuration document (JSON)");
  if (config_required) config->required();
  cmd->add_option("--out", opt.out_path, "Write the report to PATH instead of standard output");
  cmd->add_option("--format", opt.format, "Report format: json | csv")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--threads", opt.threads, "Worker threads (does not affect output)")
      ->check(CLI::Range(1U, 1024U));
}

void add_sampling(CLI::App* cmd, Options& opt) {
  cmd->add_option("--trials", opt.trials, "Monte Carlo trials per scenario");
  cmd->add_option("--seed", opt.seed, "Random seed");
  cmd->add_option("--alpha", opt.alpha, "Significance level of the sp verdict");
  cmd->add_option("--confidence", opt.confidence, "Confidence level of reported intervals");
  cmd->add_option("--tie-tol", opt.tie_tol, "Tie tolerance on lifetime comparisons");
}

}  // namespace

int resolve_enum_bits(std::optional<int> configured) {
  if (const char* env = std::getenv("REDLAB_MAX_ENUM_BITS"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1 || v > 62) {
      throw ValidationError(fmt::format("expected an integer in 1..62, got '{}'", env), "REDLAB_MAX_ENUM_BITS");
    }
    return static_cast<int>(v);
  }
  return configured.value_or(kDefaultMaxEnumBits);
}

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"redlab: component vs system redundancy under stochastic precedence", "redlab"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  Options opt;

  auto* compare_cmd = app.add_subcommand("compare", "Coupled Monte Carlo estimate and sp verdict");
  add_common(compare_cmd, opt, true);
  add_sampling(compare_cmd, opt);

  auto* oracle_cmd = app.add_subcommand("oracle", "Exact sp probabilities for finite-support scenarios");
  add_common(oracle_cmd, opt, true);

  auto* verify_cmd = app.add_subcommand("verify", "Replay the case analyses over a grid of (n, k, m, mode)");
  add_common(verify_cmd, opt, false);
  verify_cmd->add_option("--max-n", opt.max_n, "Largest n in the grid")->capture_default_str();
  verify_cmd->add_option("--max-m", opt.max_m, "Largest m in the grid")->capture_default_str();
  verify_cmd->add_option("--mode", opt.verify_mode, "active | cold | both")
      ->check(CLI::IsMember({"active", "cold", "both"}))
      ->capture_default_str();
  verify_cmd->add_option("--list-limit", opt.list_limit, "Max assignments listed per divergence set (0 = all)")
      ->capture_default_str();

  auto* sweep_cmd = app.add_subcommand("sweep", "Monte Carlo grid over (n, k, m) from a template");
  add_common(sweep_cmd, opt, true);
  add_sampling(sweep_cmd, opt);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  try {
    if (compare_cmd->parsed()) return run_compare(opt, out);
    if (oracle_cmd->parsed()) return run_oracle(opt, out);
    if (verify_cmd->parsed()) return run_verify(opt, out, err);
    if (sweep_cmd->parsed()) return run_sweep(opt, out);
  } catch (const BudgetError& e) {
    err << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const UnsupportedScenario& e) {
    err << "error: unsupported scenario: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const ConfigParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
  return kExitConfigError;
}

}  // namespace redlab::cli
