#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "redlab/oracle.hpp"
#include "redlab/precedence.hpp"
#include "redlab/statespace.hpp"
#include "redlab/systems.hpp"

namespace redlab::cli {

enum class OutputFormat { Json, Csv };

/// Grid experiment: every (n, k, m, mode) cell gets its distributions from
/// `templates`, cycled over the (layer, position) slots in row-major order.
struct SweepSpec {
  std::vector<int> n_values;
  std::optional<std::vector<int>> k_values;  // nullopt: every k in 1..n
  std::vector<int> m_values;
  std::vector<Mode> modes;
  std::vector<LifetimeDistribution> templates;

  Scenario cell(int n, int k, int m, Mode mode) const;
};

struct RunConfig {
  std::optional<Scenario> scenario;
  std::optional<SweepSpec> sweep;
  std::uint64_t trials = 1'000'000;
  std::uint64_t seed = 0;
  double tie_tol = 0.0;
  double alpha = kDefaultAlpha;
  double confidence = kDefaultConfidence;
  OutputFormat format = OutputFormat::Json;
  std::uint64_t max_outcomes = kDefaultMaxOutcomes;
  std::optional<int> max_enum_bits;
  /// Canonical dump of the parsed document, the basis of the config digest.
  std::string canonical_document;
};

/// Thrown for malformed documents (not JSON, or not an object).
class ConfigParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses and validates a configuration document. Validation failures throw
/// ValidationError whose field() is the dotted path, e.g. "y[1][0].rate".
RunConfig parse_config(std::string_view text);

/// Distribution literal: {"kind": "exponential", "rate": 1.0}, etc.
LifetimeDistribution parse_distribution(const nlohmann::json& node, const std::string& path);

OutputFormat parse_format(std::string_view text);

}  // namespace redlab::cli
