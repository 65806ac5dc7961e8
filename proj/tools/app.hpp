#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mgk/gamma.hpp"
#include "mgk/rootdata.hpp"

namespace mgk::app {

inline constexpr const char* kSchema = "mgk/1";
inline constexpr const char* kVersion = "0.3.0";

struct Options {
  int n_max = 4;
  int window = 24;
  Convention convention = Convention::kUnsigned;
  std::size_t cap = kDefaultGroupCap;
};

struct RunConfig {
  RootDatumSpec root_datum{"GL", 2, {}, {}};
  std::optional<std::vector<IntVector>> lambdas;  // default: standard basis
  Rational c{1};
  std::optional<IntVector> sigma;  // default: (1, ..., 1)
  std::optional<QVector> xi;       // default: 0
  std::vector<std::string> checks;
  Options options;

  std::size_t rank() const;
  std::vector<IntVector> lambda_family() const;
  IntVector sigma_or_default() const;
  QVector xi_or_default() const;
};

// Parses TOML, or JSON when the text starts with '{'. Throws InputError with
// a location for syntax errors, unknown keys and malformed values.
RunConfig parse_config(const std::string& text, const std::string& origin = "<config>");
RunConfig load_config(const std::string& path);

nlohmann::json echo(const RunConfig& cfg);

extern const std::vector<std::string> kChecks;

// One report object {schema, version, check, input, passed, details, timing_ms}.
// InputError propagates.
nlohmann::json run_check(const std::string& check, const RunConfig& cfg);

struct SuiteCase {
  std::string id;
  std::string check;
  RunConfig config;
};

std::vector<SuiteCase> suite_cases(const std::string& profile);
// Runs cases concurrently; reports come back sorted by id.
nlohmann::json run_suite(const std::string& profile, const std::vector<SuiteCase>& cases);

std::string human_summary(const nlohmann::json& report);

// Drops timing fields recursively; used to compare reports across runs.
nlohmann::json without_timing(nlohmann::json report);

}  // namespace mgk::app
