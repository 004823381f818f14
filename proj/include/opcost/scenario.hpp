#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "opcost/analysis.hpp"
#include "opcost/costs.hpp"
#include "opcost/params.hpp"

namespace opcost {

struct GridSpec {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t count = 0;
  bool log_scale = false;

  bool operator==(const GridSpec&) const = default;

  /// Materialize the grid points (linear or geometric spacing).
  std::vector<double> points() const;
};

/// A parsed and validated scenario document. Unknown keys anywhere in the
/// document are a hard error.
struct ScenarioFile {
  int schema = 1;
  ParamRanges ranges;
  std::vector<ModelConfig> options;
  std::int64_t campaign_n = 0;
  std::size_t samples = 10000;
  std::uint64_t seed = 0;
  std::map<std::string, GridSpec> grids;   // recognized keys: p, p1, p2, lambda, n
  std::vector<std::string> metrics;        // empty means all six
  HeadlineConfig headline;

  void validate() const;
};

bool operator==(const ParamRanges& a, const ParamRanges& b);
bool operator==(const ModelConfig& a, const ModelConfig& b);
bool operator==(const ScenarioFile& a, const ScenarioFile& b);

/// Parse a scenario document. Throws ValidationError with the offending key
/// path on syntax errors, unknown keys, or invariant violations.
ScenarioFile parse_scenario(const std::string& text);

/// Inverse of parse_scenario: parse(serialize(s)) == s for valid s.
std::string serialize_scenario(const ScenarioFile& s);

ScenarioFile load_scenario_file(const std::string& path);

}  // namespace opcost
