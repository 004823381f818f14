#pragma once

#include <string>
#include <vector>

#include "opcost/scenario.hpp"

namespace opcost {

/// Built-in scenario used when no --scenario is given: the full headline
/// study (manual vs monitored API vs open-source fallback, 10M outputs,
/// 10,000 samples).
ScenarioFile default_scenario();

struct RunConfig {
  ScenarioFile scenario;
  std::string out_dir = "out";
  unsigned threads = 1;
};

/// Each writer emits the named files under out_dir and returns one summary
/// line per emitted dataset (also meant for stdout).

std::vector<std::string> run_sample(const RunConfig& cfg);        // samples.csv
std::vector<std::string> run_evaluate(const RunConfig& cfg);      // evaluate.csv
std::vector<std::string> run_thresholds(const RunConfig& cfg);    // thresholds.csv
std::vector<std::string> run_strategy_map(const RunConfig& cfg);  // figure4.csv
std::vector<std::string> run_sensitivity(const RunConfig& cfg);   // figure5.csv
std::vector<std::string> run_headline(const RunConfig& cfg);      // headline.csv
std::vector<std::string> run_simulate(const RunConfig& cfg);      // simulate.jsonl

/// Full reproduction: figure1b/2/3/4/5.csv, headline.csv, and
/// paper_comparison.csv with one pass/fail row per published estimate.
/// Returns summary lines; sets `all_passed` to the comparison verdict.
std::vector<std::string> run_reproduce(const RunConfig& cfg, bool* all_passed = nullptr);

}  // namespace opcost
