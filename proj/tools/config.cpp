#include "config.hpp"

#include <charconv>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "redlab/errors.hpp"
#include "redlab/rational.hpp"

namespace redlab::cli {
namespace {

using nlohmann::json;

std::string join_path(const std::string& base, const std::string& key) {
  return base.empty() ? key : base + "." + key;
}

const json& require(const json& node, const char* key, const std::string& base) {
  auto it = node.find(key);
  if (it == node.end()) throw ValidationError("missing required field", join_path(base, key));
  return *it;
}

double get_number(const json& node, const std::string& path) {
  if (!node.is_number()) throw ValidationError("expected a number", path);
  return node.get<double>();
}

long long get_integer(const json& node, const std::string& path) {
  if (node.is_number_integer()) return node.get<long long>();
  if (node.is_number_float()) {
    const double v = node.get<double>();
    if (std::isfinite(v) && v == std::floor(v) && std::abs(v) < 9.0e15) return static_cast<long long>(v);
  }
  throw ValidationError("expected an integer", path);
}

int get_int(const json& node, const std::string& path) {
  const long long v = get_integer(node, path);
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
    throw ValidationError("integer out of range", path);
  }
  return static_cast<int>(v);
}

std::uint64_t get_u64(const json& node, const std::string& path) {
  if (node.is_number_unsigned()) return node.get<std::uint64_t>();
  const long long v = get_integer(node, path);
  if (v < 0) throw ValidationError("expected a nonnegative integer", path);
  return static_cast<std::uint64_t>(v);
}

// JSON floats go through their shortest round-trip text so "0.1" means 1/10.
Rational get_weight(const json& node, const std::string& path) {
  try {
    if (node.is_string()) return parse_rational(node.get<std::string>());
    if (node.is_number_integer()) return Rational(BigInt(node.dump(), 10));
    if (node.is_number_float()) {
      char buf[64];
      const auto res = std::to_chars(buf, buf + sizeof buf, node.get<double>());
      return parse_rational(std::string_view(buf, static_cast<std::size_t>(res.ptr - buf)));
    }
  } catch (const ValidationError& e) {
    throw ValidationError(e.what(), path);
  }
  throw ValidationError("expected a rational weight (\"p/q\", decimal, or number)", path);
}

Mode get_mode(const json& node, const std::string& path) {
  if (!node.is_string()) throw ValidationError("expected \"active\" or \"cold\"", path);
  try {
    return parse_mode(node.get<std::string>());
  } catch (const ValidationError&) {
    throw ValidationError("expected \"active\" or \"cold\"", path);
  }
}

std::vector<int> get_int_list(const json& node, const std::string& path) {
  if (!node.is_array() || node.empty()) throw ValidationError("expected a nonempty list of integers", path);
  std::vector<int> out;
  for (std::size_t i = 0; i < node.size(); ++i) out.push_back(get_int(node[i], fmt::format("{}[{}]", path, i)));
  return out;
}

template <class Fn>
auto with_prefix(const std::string& path, Fn&& fn) {
  try {
    return fn();
  } catch (const ValidationError& e) {
    // Re-root field paths reported by the model constructors.
    std::string inner = e.field();
    std::string message = e.what();
    if (!inner.empty() && message.rfind(inner + ": ", 0) == 0) message = message.substr(inner.size() + 2);
    throw ValidationError(message, inner.empty() ? path : path + "." + inner);
  }
}

std::vector<LifetimeDistribution> parse_row(const json& node, const std::string& path, int expected) {
  if (!node.is_array()) throw ValidationError("expected a list of distributions", path);
  if (expected >= 0 && node.size() != static_cast<std::size_t>(expected)) {
    throw ValidationError(fmt::format("expected {} distributions, got {}", expected, node.size()), path);
  }
  std::vector<LifetimeDistribution> out;
  out.reserve(node.size());
  for (std::size_t j = 0; j < node.size(); ++j) {
    out.push_back(parse_distribution(node[j], fmt::format("{}[{}]", path, j)));
  }
  return out;
}

Scenario parse_scenario(const json& doc) {
  Scenario s;
  const int n = get_int(require(doc, "n", ""), "n");
  const int k = get_int(require(doc, "k", ""), "k");
  if (n < 1) throw ValidationError("n must be >= 1", "n");
  if (k < 1 || k > n) throw ValidationError(fmt::format("k must satisfy 1 <= k <= n={}, got {}", n, k), "k");
  s.spec = SystemSpec{n, k};
  s.m = get_int(require(doc, "m", ""), "m");
  if (s.m < 1) throw ValidationError("m must be >= 1", "m");
  s.mode = get_mode(require(doc, "mode", ""), "mode");
  s.x = parse_row(require(doc, "x", ""), "x", n);
  const json& y = require(doc, "y", "");
  if (!y.is_array()) throw ValidationError("expected a list of m rows", "y");
  if (y.size() != static_cast<std::size_t>(s.m)) {
    throw ValidationError(fmt::format("expected m={} rows, got {}", s.m, y.size()), "y");
  }
  for (std::size_t i = 0; i < y.size(); ++i) s.y.push_back(parse_row(y[i], fmt::format("y[{}]", i), n));
  s.validate();
  return s;
}

SweepSpec parse_sweep(const json& node) {
  if (!node.is_object()) throw ValidationError("expected an object", "sweep");
  SweepSpec sw;
  sw.n_values = get_int_list(require(node, "n", "sweep"), "sweep.n");
  for (std::size_t i = 0; i < sw.n_values.size(); ++i) {
    if (sw.n_values[i] < 1) throw ValidationError("n must be >= 1", fmt::format("sweep.n[{}]", i));
  }
  if (auto it = node.find("k"); it != node.end() && !(it->is_string() && it->get<std::string>() == "all")) {
    sw.k_values = get_int_list(*it, "sweep.k");
    for (std::size_t i = 0; i < sw.k_values->size(); ++i) {
      if ((*sw.k_values)[i] < 1) throw ValidationError("k must be >= 1", fmt::format("sweep.k[{}]", i));
    }
  }
  sw.m_values = get_int_list(require(node, "m", "sweep"), "sweep.m");
  for (std::size_t i = 0; i < sw.m_values.size(); ++i) {
    if (sw.m_values[i] < 1) throw ValidationError("m must be >= 1", fmt::format("sweep.m[{}]", i));
  }
  const json& modes = require(node, "modes", "sweep");
  if (!modes.is_array() || modes.empty()) throw ValidationError("expected a nonempty list", "sweep.modes");
  for (std::size_t i = 0; i < modes.size(); ++i) sw.modes.push_back(get_mode(modes[i], fmt::format("sweep.modes[{}]", i)));
  sw.templates = parse_row(require(node, "template", "sweep"), "sweep.template", -1);
  if (sw.templates.empty()) throw ValidationError("expected at least one distribution", "sweep.template");
  return sw;
}

}  // namespace

LifetimeDistribution parse_distribution(const json& node, const std::string& path) {
  if (!node.is_object()) throw ValidationError("expected a distribution record", path);
  const json& kind_node = require(node, "kind", path);
  if (!kind_node.is_string()) throw ValidationError("expected a string", path + ".kind");
  const std::string kind = kind_node.get<std::string>();
  auto num = [&](const char* key) { return get_number(require(node, key, ""), key); };
  return with_prefix(path, [&] {
    if (kind == "exponential") return LifetimeDistribution::exponential(num("rate"));
    if (kind == "weibull") return LifetimeDistribution::weibull(num("shape"), num("scale"));
    if (kind == "uniform") return LifetimeDistribution::uniform(num("lo"), num("hi"));
    if (kind == "point" || kind == "point_mass") return LifetimeDistribution::point_mass(num("value"));
    if (kind == "discrete") {
      const json& atoms = require(node, "atoms", "");
      if (!atoms.is_array()) throw ValidationError("expected a list of atoms", "atoms");
      std::vector<Atom> out;
      for (std::size_t i = 0; i < atoms.size(); ++i) {
        const std::string apath = fmt::format("atoms[{}]", i);
        if (!atoms[i].is_object()) throw ValidationError("expected {\"value\", \"weight\"}", apath);
        auto vit = atoms[i].find("value");
        auto wit = atoms[i].find("weight");
        if (vit == atoms[i].end()) throw ValidationError("missing required field", apath + ".value");
        if (wit == atoms[i].end()) throw ValidationError("missing required field", apath + ".weight");
        out.push_back(Atom{get_number(*vit, apath + ".value"), get_weight(*wit, apath + ".weight")});
      }
      return LifetimeDistribution::discrete(std::move(out));
    }
    throw ValidationError("unknown kind '" + kind + "' (exponential, weibull, uniform, point, discrete)", "kind");
  });
}

OutputFormat parse_format(std::string_view text) {
  if (text == "json") return OutputFormat::Json;
  if (text == "csv") return OutputFormat::Csv;
  throw ValidationError("format must be \"json\" or \"csv\"", "format");
}

Scenario SweepSpec::cell(int n, int k, int m, Mode mode) const {
  Scenario s;
  s.spec = SystemSpec::make(n, k);
  s.m = m;
  s.mode = mode;
  std::size_t slot = 0;
  auto next = [&] { return templates[slot++ % templates.size()]; };
  for (int j = 0; j < n; ++j) s.x.push_back(next());
  s.y.resize(static_cast<std::size_t>(m));
  for (auto& row : s.y) {
    for (int j = 0; j < n; ++j) row.push_back(next());
  }
  s.validate();
  return s;
}

RunConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ConfigParseError(std::string("malformed config document: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigParseError("config document must be a JSON object");

  RunConfig cfg;
  if (auto it = doc.find("sweep"); it != doc.end()) cfg.sweep = parse_sweep(*it);
  if (!cfg.sweep || doc.contains("n")) cfg.scenario = parse_scenario(doc);

  if (auto it = doc.find("trials"); it != doc.end()) {
    cfg.trials = get_u64(*it, "trials");
    if (cfg.trials < 1) throw ValidationError("trials must be >= 1", "trials");
  }
  if (auto it = doc.find("seed"); it != doc.end()) cfg.seed = get_u64(*it, "seed");
  if (auto it = doc.find("tie_tol"); it != doc.end()) {
    cfg.tie_tol = get_number(*it, "tie_tol");
    if (!(cfg.tie_tol >= 0.0)) throw ValidationError("tie_tol must be >= 0", "tie_tol");
  }
  if (auto it = doc.find("alpha"); it != doc.end()) {
    cfg.alpha = get_number(*it, "alpha");
    if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) throw ValidationError("alpha must lie in (0,1)", "alpha");
  }
  if (auto it = doc.find("confidence"); it != doc.end()) {
    cfg.confidence = get_number(*it, "confidence");
    if (!(cfg.confidence > 0.0 && cfg.confidence < 1.0)) {
      throw ValidationError("confidence must lie in (0,1)", "confidence");
    }
  }
  if (auto it = doc.find("format"); it != doc.end()) {
    if (!it->is_string()) throw ValidationError("expected \"json\" or \"csv\"", "format");
    cfg.format = parse_format(it->get<std::string>());
  }
  if (auto it = doc.find("guards"); it != doc.end()) {
    if (!it->is_object()) throw ValidationError("expected an object", "guards");
    if (auto g = it->find("max_outcomes"); g != it->end()) {
      cfg.max_outcomes = get_u64(*g, "guards.max_outcomes");
    }
    if (auto g = it->find("max_enum_bits"); g != it->end()) {
      cfg.max_enum_bits = get_int(*g, "guards.max_enum_bits");
      if (*cfg.max_enum_bits < 1) throw ValidationError("must be >= 1", "guards.max_enum_bits");
    }
  }
  cfg.canonical_document = doc.dump();
  return cfg;
}

}  // namespace redlab::cli
