#include "opcost/costs.hpp"

#include <cmath>
#include <limits>

#include "opcost/errors.hpp"
#include "opcost/rng.hpp"

namespace opcost {

namespace {

constexpr std::uint64_t kRealizedCostTag = 0x52;

void check_rate(double p, const char* what) {
  if (!(p > 0.0 && p <= 1.0)) {
    throw DomainError(std::string(what) + ": rate must be in (0, 1]");
  }
}

int kind_rank(ModelKind kind) {
  switch (kind) {
    case ModelKind::manual: return 0;
    case ModelKind::api: return 1;
    case ModelKind::open_source: return 2;
  }
  return 3;
}

}  // namespace

const char* to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::manual: return "manual";
    case ModelKind::api: return "api";
    case ModelKind::open_source: return "open_source";
  }
  return "unknown";
}

void ModelConfig::validate() const {
  if (kind == ModelKind::manual) return;  // p/lambda/fixed_cost ignored
  check_rate(p, ("option '" + name + "' p").c_str());
  if (!(lambda >= 0.0)) throw DomainError("option '" + name + "': lambda must be >= 0");
  if (kind == ModelKind::open_source && lambda != 0.0) {
    throw DomainError("option '" + name + "': open_source models cannot be monitored (lambda must be 0)");
  }
  if (!(penalty_surcharge >= 0.0)) {
    throw DomainError("option '" + name + "': penalty_surcharge must be >= 0");
  }
  if (!(fixed_cost >= 0.0)) throw DomainError("option '" + name + "': fixed_cost must be >= 0");
}

void CampaignSpec::validate() const {
  if (n < 1) throw DomainError("CampaignSpec: n must be >= 1");
  if (options.empty()) throw DomainError("CampaignSpec: at least one option required");
  for (const ModelConfig& m : options) m.validate();
}

double manual_marginal_cost(const ParamDraw& d) {
  return d.wage / d.productivity;
}

double team_marginal_cost(const ParamDraw& d, double p) {
  check_rate(p, "team_marginal_cost");
  return (d.wage / (d.review_speedup * d.productivity) + d.inference_cost) / p;
}

bool is_team_cheaper(const ParamDraw& d, double p) {
  return team_marginal_cost(d, p) < manual_marginal_cost(d);
}

double automation_payback_outputs(const ParamDraw& d, double fixed_cost) {
  if (!(fixed_cost >= 0.0)) throw DomainError("automation_payback_outputs: fixed_cost must be >= 0");
  const double margin = manual_marginal_cost(d) - d.inference_cost;
  if (!(margin > 0.0)) {
    throw DomainError("automation_payback_outputs: inference cost at or above manual cost; never pays back");
  }
  return fixed_cost / margin;
}

double expected_detections(double n, double p, double lambda) {
  if (!(n >= 0.0)) throw DomainError("expected_detections: n must be >= 0");
  check_rate(p, "expected_detections");
  if (!(lambda >= 0.0)) throw DomainError("expected_detections: lambda must be >= 0");
  return lambda * n / p;
}

OptionCost campaign_cost_expected(double n, const ParamDraw& d, const ModelConfig& m) {
  m.validate();
  if (!(n >= 0.0)) throw DomainError("campaign_cost_expected: n must be >= 0");

  OptionCost out;
  out.name = m.name;
  out.kind = m.kind;
  if (m.kind == ModelKind::manual) {
    out.labor = n * manual_marginal_cost(d);
  } else {
    const double raw = n / m.p;
    out.labor = raw * d.wage / (d.review_speedup * d.productivity);
    out.inference = raw * d.inference_cost;
    if (m.lambda > 0.0) {
      out.expected_penalties = (d.penalty + m.penalty_surcharge) * m.lambda * raw;
    }
    out.fixed = m.fixed_cost;
  }
  out.total = out.labor + out.inference + out.expected_penalties + out.fixed;
  return out;
}

RealizedCost campaign_cost_realized(double n, const ParamDraw& d, const ModelConfig& m,
                                    std::uint64_t seed) {
  OptionCost expected = campaign_cost_expected(n, d, m);
  RealizedCost out;
  if (m.kind != ModelKind::manual && m.lambda > 0.0) {
    CounterRng rng(derive_stream(seed, kRealizedCostTag));
    out.detections = poisson_draw(rng, m.lambda * n / m.p);
  }
  out.cost = expected.labor + expected.inference + expected.fixed +
             (d.penalty + m.penalty_surcharge) * static_cast<double>(out.detections);
  return out;
}

CostBreakdown total_cost(const CampaignSpec& spec, const ParamDraw& d) {
  spec.validate();
  CostBreakdown breakdown;
  breakdown.options.reserve(spec.options.size());
  for (const ModelConfig& m : spec.options) {
    breakdown.options.push_back(campaign_cost_expected(static_cast<double>(spec.n), d, m));
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < breakdown.options.size(); ++i) {
    const OptionCost& a = breakdown.options[i];
    const OptionCost& b = breakdown.options[best];
    if (a.total < b.total ||
        (a.total == b.total && kind_rank(a.kind) < kind_rank(b.kind))) {
      best = i;
    }
  }
  breakdown.chosen = best;
  return breakdown;
}

double per_output_savings(const ParamDraw& d, double p) {
  return manual_marginal_cost(d) - team_marginal_cost(d, p);
}

std::vector<std::vector<double>> cumulative_savings_surface(std::span<const double> p_grid,
                                                            std::span<const double> n_grid,
                                                            const SampleSet& samples) {
  if (p_grid.empty() || n_grid.empty()) {
    throw DomainError("cumulative_savings_surface: grids must be non-empty");
  }
  if (samples.draws.empty()) throw DomainError("cumulative_savings_surface: empty sample set");
  for (double p : p_grid) check_rate(p, "cumulative_savings_surface p_grid");

  std::vector<std::vector<double>> surface(p_grid.size(),
                                           std::vector<double>(n_grid.size(), 0.0));
  const double inv_count = 1.0 / static_cast<double>(samples.draws.size());
  for (std::size_t i = 0; i < p_grid.size(); ++i) {
    double mean_savings = 0.0;
    for (const ParamDraw& d : samples.draws) {
      mean_savings += per_output_savings(d, p_grid[i]);
    }
    mean_savings *= inv_count;
    for (std::size_t j = 0; j < n_grid.size(); ++j) {
      surface[i][j] = n_grid[j] * mean_savings;
    }
  }
  return surface;
}

}  // namespace opcost
