#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "opcost/params.hpp"

namespace opcost {

enum class ModelKind { manual, api, open_source };

const char* to_string(ModelKind kind);

/// One content-generation option available to the operator.
///
/// manual ignores p / lambda / fixed_cost (treated as p=1, lambda=0, FC=0).
/// open_source must have lambda = 0: a downloaded model cannot be monitored.
struct ModelConfig {
  std::string name;
  ModelKind kind = ModelKind::manual;
  double p = 1.0;                  ///< usable-output rate, in (0, 1]
  double lambda = 0.0;             ///< detections per raw output
  double penalty_surcharge = 0.0;  ///< USD added to the draw's penalty per detection
  double fixed_cost = 0.0;         ///< one-time USD

  void validate() const;
};

struct CampaignSpec {
  std::int64_t n = 0;  ///< usable outputs required
  std::vector<ModelConfig> options;

  void validate() const;
};

struct OptionCost {
  std::string name;
  ModelKind kind = ModelKind::manual;
  double labor = 0.0;
  double inference = 0.0;
  double expected_penalties = 0.0;
  double fixed = 0.0;
  double total = 0.0;
};

struct CostBreakdown {
  std::vector<OptionCost> options;
  std::size_t chosen = 0;  ///< index of the argmin option

  const OptionCost& chosen_option() const { return options[chosen]; }
};

/// Marginal cost of one manually written output: w / L.
double manual_marginal_cost(const ParamDraw& d);

/// Marginal cost of one usable output from a human-machine team:
/// (w / (alpha L) + IC) / p.
double team_marginal_cost(const ParamDraw& d, double p);

bool is_team_cheaper(const ParamDraw& d, double p);

/// Outputs after which a fixed acquisition cost pays for itself when the
/// model runs with no human review: FC / (w/L - IC).
double automation_payback_outputs(const ParamDraw& d, double fixed_cost);

/// Expected detection count over a campaign of n usable outputs: lambda n / p.
/// Every raw output feeds the monitor, so n is grossed up by 1/p.
double expected_detections(double n, double p, double lambda);

/// Expected campaign cost of a single option, by component.
OptionCost campaign_cost_expected(double n, const ParamDraw& d, const ModelConfig& m);

struct RealizedCost {
  double cost = 0.0;
  std::uint64_t detections = 0;
};

/// Campaign cost with the detection count drawn from Poisson(lambda n / p)
/// instead of taking its expectation. Deterministic given the seed.
RealizedCost campaign_cost_realized(double n, const ParamDraw& d, const ModelConfig& m,
                                    std::uint64_t seed);

/// Expected cost of every option plus the argmin choice. Ties break toward
/// manual, then api, then open_source, then listing order.
CostBreakdown total_cost(const CampaignSpec& spec, const ParamDraw& d);

/// manual_marginal_cost - team_marginal_cost; negative when the model is a
/// net loss at this usability rate.
double per_output_savings(const ParamDraw& d, double p);

/// Mean cumulative savings over the sample set for every (p, n) pair.
/// Entry [i][j] corresponds to (p_grid[i], n_grid[j]); negative means are
/// reported as-is.
std::vector<std::vector<double>> cumulative_savings_surface(std::span<const double> p_grid,
                                                            std::span<const double> n_grid,
                                                            const SampleSet& samples);

}  // namespace opcost
