#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "opcost/params.hpp"

namespace opcost {

/// The operator's cost-optimal posture for one (p1, p2) pair, where p1 is
/// the monitored API model's usability rate and p2 the open-source one's.
enum class StrategyChoice {
  manual_always = 1,       ///< neither model beats manual authorship
  open_always = 2,         ///< the open model wins regardless of monitoring
  api_fallback_manual = 3, ///< API model preferred; deterred back to manual
  api_fallback_open = 4,   ///< API model preferred; deterred to the open model
};

const char* to_string(StrategyChoice s);

/// Classify a draw against the four-way decision above. Boundary p1 == p2
/// (both viable) classifies as open_always: monitoring can only make the API
/// option worse, so at equal performance it is never strictly preferred.
StrategyChoice classify(const ParamDraw& d, double p1, double p2);

/// Per-cell aggregate over a sample set.
struct StrategyCell {
  double p1 = 0.0;
  double p2 = 0.0;
  StrategyChoice modal = StrategyChoice::manual_always;
  double lambda_hat_mean = 0.0;
  double imposition_mean = 0.0;
  double imposition_q25 = 0.0;
  double imposition_q75 = 0.0;
};

/// Evaluate every (p1, p2) cell: per draw, the deterrent detection rate for
/// whichever fallback applies, and the campaign-level cost imposition
/// penalty * lambda_hat * n / p1 (zero when no API preference exists).
/// Cells with p1 == 0 or p2 == 0 must be excluded by the caller.
/// Deterministic for any thread count; rows ordered p1-major.
std::vector<StrategyCell> strategy_grid(const SampleSet& samples,
                                        std::span<const double> p1_grid,
                                        std::span<const double> p2_grid, double n,
                                        double fixed_cost2, unsigned threads);

}  // namespace opcost
