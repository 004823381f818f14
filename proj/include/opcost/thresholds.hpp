#pragma once

#include <functional>
#include <span>

#include "opcost/costs.hpp"
#include "opcost/params.hpp"

namespace opcost {

/// Performance threshold. `value` may exceed 1, meaning no achievable
/// usability rate makes the model cost-effective; it is reported unclamped
/// with attainable=false.
struct PerfThreshold {
  double value = 0.0;
  bool attainable = true;  ///< value <= 1
};

/// Detection-rate threshold. A negative closed form means the model is
/// already not worth using; it is reported as 0 with clamped=true.
struct RateThreshold {
  double value = 0.0;
  bool clamped = false;
};

/// Usability rate at which a monitored model matches manual authorship:
/// 1/alpha + (L/w)(IC + (penalty + surcharge) * lambda).
PerfThreshold p_hat_manual(const ParamDraw& d, double lambda, double surcharge);

/// Usability rate at which the monitored model matches an open-source
/// alternative: p2 + (p2 P lambda - FC/n) / (w/(alpha L) + IC).
PerfThreshold p_hat_vs_open(const ParamDraw& d, double p2, double lambda, double fixed_cost,
                            double n);

/// Minimum detection rate that deters use of the monitored model when the
/// fallback is manual authorship: (p1 w/L - w/(alpha L) - IC) / P.
RateThreshold lambda_hat_manual(const ParamDraw& d, double p1);

/// Minimum deterrent detection rate when the fallback is an open-source
/// model: (w/(alpha L) + IC)(p1 - p2)/(p2 P) + p1 FC / (n P).
RateThreshold lambda_hat_open(const ParamDraw& d, double p1, double p2, double fixed_cost,
                              double n);

/// Smallest campaign at which spending `fixed_cost_delta` on a model with
/// usability `p_target` beats every competitor (max of the per-competitor
/// break-even sizes). Throws DomainError when some competitor is never beaten.
double min_viable_scale(const ParamDraw& d, double p_target, double fixed_cost_delta,
                        std::span<const ModelConfig> competitors);

/// Bisection root of a monotone cost gap; endpoints must bracket a sign
/// change. Converges to relative tolerance `tol` (floored near zero).
double bisect(const std::function<double(double)>& cost_gap, double lo, double hi, double tol);

}  // namespace opcost
