#include "opcost/thresholds.hpp"

#include <algorithm>
#include <cmath>

#include "opcost/errors.hpp"

namespace opcost {

namespace {

// Per-raw-output cost of generating and reviewing one model output.
double review_cost(const ParamDraw& d) {
  return d.wage / (d.review_speedup * d.productivity) + d.inference_cost;
}

void require_positive_penalty(const ParamDraw& d) {
  if (!(d.penalty > 0.0)) {
    throw DomainError("deterrent threshold undefined: penalty per detection is zero");
  }
}

void check_rate(double p, const char* what) {
  if (!(p > 0.0 && p <= 1.0)) {
    throw DomainError(std::string(what) + ": rate must be in (0, 1]");
  }
}

}  // namespace

PerfThreshold p_hat_manual(const ParamDraw& d, double lambda, double surcharge) {
  if (!(lambda >= 0.0)) throw DomainError("p_hat_manual: lambda must be >= 0");
  if (!(surcharge >= 0.0)) throw DomainError("p_hat_manual: surcharge must be >= 0");
  const double value =
      1.0 / d.review_speedup +
      (d.productivity / d.wage) * (d.inference_cost + (d.penalty + surcharge) * lambda);
  return PerfThreshold{value, value <= 1.0};
}

PerfThreshold p_hat_vs_open(const ParamDraw& d, double p2, double lambda, double fixed_cost,
                            double n) {
  check_rate(p2, "p_hat_vs_open p2");
  if (!(lambda >= 0.0)) throw DomainError("p_hat_vs_open: lambda must be >= 0");
  if (!(n >= 1.0)) throw DomainError("p_hat_vs_open: n must be >= 1");
  const double value =
      p2 + (p2 * d.penalty * lambda - fixed_cost / n) / review_cost(d);
  return PerfThreshold{value, value <= 1.0};
}

RateThreshold lambda_hat_manual(const ParamDraw& d, double p1) {
  check_rate(p1, "lambda_hat_manual p1");
  require_positive_penalty(d);
  const double raw = (p1 * d.wage / d.productivity - review_cost(d)) / d.penalty;
  if (raw < 0.0) return RateThreshold{0.0, true};
  return RateThreshold{raw, false};
}

RateThreshold lambda_hat_open(const ParamDraw& d, double p1, double p2, double fixed_cost,
                              double n) {
  check_rate(p1, "lambda_hat_open p1");
  check_rate(p2, "lambda_hat_open p2");
  require_positive_penalty(d);
  if (!(n >= 1.0)) throw DomainError("lambda_hat_open: n must be >= 1");
  if (!(fixed_cost >= 0.0)) throw DomainError("lambda_hat_open: fixed_cost must be >= 0");
  const double raw = review_cost(d) * (p1 - p2) / (p2 * d.penalty) +
                     p1 * fixed_cost / (n * d.penalty);
  if (raw < 0.0) return RateThreshold{0.0, true};
  return RateThreshold{raw, false};
}

double min_viable_scale(const ParamDraw& d, double p_target, double fixed_cost_delta,
                        std::span<const ModelConfig> competitors) {
  check_rate(p_target, "min_viable_scale p_target");
  if (!(fixed_cost_delta > 0.0)) {
    throw DomainError("min_viable_scale: fixed_cost_delta must be > 0");
  }
  if (competitors.empty()) throw DomainError("min_viable_scale: no competitors given");

  const double b = review_cost(d);
  double worst = 0.0;
  for (const ModelConfig& m : competitors) {
    double denom = 0.0;
    double numer = 0.0;
    switch (m.kind) {
      case ModelKind::manual:
        numer = p_target * fixed_cost_delta;
        denom = p_target * d.wage / d.productivity - b;
        break;
      case ModelKind::api:
        numer = p_target * m.p * fixed_cost_delta;
        denom = p_target * (d.penalty + m.penalty_surcharge) * m.lambda +
                (p_target - m.p) * b;
        break;
      case ModelKind::open_source:
        numer = p_target * m.p * fixed_cost_delta;
        denom = (p_target - m.p) * b;
        break;
    }
    if (!(denom > 0.0)) {
      throw DomainError("min_viable_scale: competitor '" + m.name +
                        "' is never beaten at this target performance");
    }
    worst = std::max(worst, numer / denom);
  }
  return worst;
}

double bisect(const std::function<double(double)>& cost_gap, double lo, double hi, double tol) {
  if (!(lo < hi)) throw DomainError("bisect: lo must be < hi");
  if (!(tol > 0.0)) throw DomainError("bisect: tol must be > 0");
  double f_lo = cost_gap(lo);
  double f_hi = cost_gap(hi);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if ((f_lo > 0.0) == (f_hi > 0.0)) {
    throw DomainError("bisect: endpoints do not bracket a sign change");
  }
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;  // interval exhausted at double precision
    const double f_mid = cost_gap(mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid > 0.0) == (f_lo > 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= tol * std::max(1.0, std::fabs(mid))) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace opcost
