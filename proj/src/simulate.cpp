#include "opcost/simulate.hpp"

#include "opcost/errors.hpp"
#include "opcost/rng.hpp"

namespace opcost {

namespace {

constexpr std::uint64_t kUsabilityTag = 1;
constexpr std::uint64_t kDetectionTag = 2;
constexpr std::uint64_t kBatch = 1u << 16;

}  // namespace

SimResult simulate_campaign(std::uint64_t n_usable, const ParamDraw& d, const ModelConfig& m,
                            std::uint64_t seed) {
  if (m.kind == ModelKind::manual) {
    throw DomainError("simulate_campaign: manual campaigns have exact costs; nothing to simulate");
  }
  m.validate();
  d.validate();
  if (n_usable < 1) throw DomainError("simulate_campaign: n_usable must be >= 1");

  const std::uint64_t use_stream = derive_stream(seed, kUsabilityTag);
  const std::uint64_t det_stream = derive_stream(seed, kDetectionTag);

  std::uint64_t raw = 0;
  std::uint64_t usable = 0;
  std::uint64_t detections = 0;

  while (usable < n_usable) {
    // Count a whole batch; if the target falls inside it, replay the batch
    // index by index to stop at the exact raw output. Counter-based values
    // make the replay bit-identical to the first pass.
    std::uint64_t batch_usable = 0;
    std::uint64_t batch_detections = 0;
    for (std::uint64_t i = 0; i < kBatch; ++i) {
      batch_usable += u01_at(use_stream, raw + i) < m.p;
      batch_detections += u01_at(det_stream, raw + i) < m.lambda;
    }
    if (usable + batch_usable < n_usable) {
      raw += kBatch;
      usable += batch_usable;
      detections += batch_detections;
      continue;
    }
    for (std::uint64_t i = 0; i < kBatch; ++i, ++raw) {
      const bool is_usable = u01_at(use_stream, raw) < m.p;
      detections += u01_at(det_stream, raw) < m.lambda;
      if (is_usable && ++usable == n_usable) {
        ++raw;
        break;
      }
    }
  }

  SimResult out;
  out.raw_outputs = raw;
  out.usable_outputs = usable;
  out.detections = detections;
  const double raw_d = static_cast<double>(raw);
  out.labor_cost = raw_d * d.wage / (d.review_speedup * d.productivity);
  out.inference_cost = raw_d * d.inference_cost;
  out.penalty_cost = static_cast<double>(detections) * (d.penalty + m.penalty_surcharge);
  out.total_cost = out.labor_cost + out.inference_cost + out.penalty_cost;
  out.seed = seed;
  return out;
}

SimResult simulate_manual(std::uint64_t n_usable, const ParamDraw& d) {
  d.validate();
  if (n_usable < 1) throw DomainError("simulate_manual: n_usable must be >= 1");
  SimResult out;
  out.raw_outputs = n_usable;
  out.usable_outputs = n_usable;
  out.labor_cost = static_cast<double>(n_usable) * d.wage / d.productivity;
  out.total_cost = out.labor_cost;
  return out;
}

}  // namespace opcost
