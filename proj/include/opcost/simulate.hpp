#pragma once

#include <cstdint>

#include "opcost/costs.hpp"
#include "opcost/params.hpp"

namespace opcost {

struct SimResult {
  std::uint64_t raw_outputs = 0;
  std::uint64_t usable_outputs = 0;
  std::uint64_t detections = 0;
  double labor_cost = 0.0;
  double inference_cost = 0.0;
  double penalty_cost = 0.0;
  double total_cost = 0.0;
  std::uint64_t seed = 0;
};

/// Event-level campaign run: raw outputs are generated one at a time until
/// n_usable of them were accepted. Raw output i is usable when
/// u01(stream(seed, 1), i) < p and triggers a detection when
/// u01(stream(seed, 2), i) < lambda, so the realization is a pure function
/// of the seed and independent of internal batching.
SimResult simulate_campaign(std::uint64_t n_usable, const ParamDraw& d, const ModelConfig& m,
                            std::uint64_t seed);

/// Degenerate manual campaign: exact cost n * w/L, no randomness.
SimResult simulate_manual(std::uint64_t n_usable, const ParamDraw& d);

}  // namespace opcost
