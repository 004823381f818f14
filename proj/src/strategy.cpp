#include "opcost/strategy.hpp"

#include <array>

#include "opcost/errors.hpp"
#include "opcost/parallel.hpp"
#include "opcost/stats.hpp"
#include "opcost/thresholds.hpp"

namespace opcost {

const char* to_string(StrategyChoice s) {
  switch (s) {
    case StrategyChoice::manual_always: return "manual_always";
    case StrategyChoice::open_always: return "open_always";
    case StrategyChoice::api_fallback_manual: return "api_fallback_manual";
    case StrategyChoice::api_fallback_open: return "api_fallback_open";
  }
  return "unknown";
}

StrategyChoice classify(const ParamDraw& d, double p1, double p2) {
  if (!(p1 > 0.0 && p1 <= 1.0 && p2 > 0.0 && p2 <= 1.0)) {
    throw DomainError("classify: rates must be in (0, 1]");
  }
  const double p_hat = p_hat_manual(d, 0.0, 0.0).value;
  if (p1 <= p_hat && p2 <= p_hat) return StrategyChoice::manual_always;
  if (p2 > p_hat && p2 >= p1) return StrategyChoice::open_always;
  if (p1 > p_hat && p2 <= p_hat) return StrategyChoice::api_fallback_manual;
  return StrategyChoice::api_fallback_open;
}

std::vector<StrategyCell> strategy_grid(const SampleSet& samples,
                                        std::span<const double> p1_grid,
                                        std::span<const double> p2_grid, double n,
                                        double fixed_cost2, unsigned threads) {
  if (samples.draws.empty()) throw DomainError("strategy_grid: empty sample set");
  if (p1_grid.empty() || p2_grid.empty()) throw DomainError("strategy_grid: empty grid");
  if (!(n >= 1.0)) throw DomainError("strategy_grid: n must be >= 1");

  const std::size_t cells = p1_grid.size() * p2_grid.size();
  std::vector<StrategyCell> grid(cells);

  parallel_for(cells, threads, [&](std::size_t begin, std::size_t end) {
    std::vector<double> impositions(samples.draws.size());
    for (std::size_t cell = begin; cell < end; ++cell) {
      const double p1 = p1_grid[cell / p2_grid.size()];
      const double p2 = p2_grid[cell % p2_grid.size()];

      std::array<std::size_t, 5> scenario_counts{};  // indexed by enum value
      double lambda_sum = 0.0;
      double imposition_sum = 0.0;
      for (std::size_t k = 0; k < samples.draws.size(); ++k) {
        const ParamDraw& d = samples.draws[k];
        const StrategyChoice s = classify(d, p1, p2);
        scenario_counts[static_cast<std::size_t>(s)]++;
        double lambda_hat = 0.0;
        if (s == StrategyChoice::api_fallback_manual) {
          lambda_hat = lambda_hat_manual(d, p1).value;
        } else if (s == StrategyChoice::api_fallback_open) {
          lambda_hat = lambda_hat_open(d, p1, p2, fixed_cost2, n).value;
        }
        const double imposition = d.penalty * lambda_hat * n / p1;
        lambda_sum += lambda_hat;
        imposition_sum += imposition;
        impositions[k] = imposition;
      }

      StrategyCell& out = grid[cell];
      out.p1 = p1;
      out.p2 = p2;
      std::size_t best = 1;
      for (std::size_t s = 2; s <= 4; ++s) {
        if (scenario_counts[s] > scenario_counts[best]) best = s;  // ties keep lowest
      }
      out.modal = static_cast<StrategyChoice>(best);
      const double inv = 1.0 / static_cast<double>(samples.draws.size());
      out.lambda_hat_mean = lambda_sum * inv;
      out.imposition_mean = imposition_sum * inv;
      out.imposition_q25 = percentile_inplace(impositions, 25.0);
      out.imposition_q75 = percentile_inplace(impositions, 75.0);
    }
  });
  return grid;
}

}  // namespace opcost
