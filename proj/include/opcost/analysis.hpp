#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "opcost/params.hpp"

namespace opcost {

/// Fixed scenario constants behind the headline estimates and the worked
/// model-choice comparisons. Defaults reproduce the shipped study.
struct HeadlineConfig {
  double team_p = 0.75;         ///< API model usability for savings/deterrence
  double open_p = 0.70;         ///< open-source fallback usability
  double open_fixed_cost = 0.0; ///< fallback acquisition cost
  double campaign_n = 1e7;      ///< campaign size for savings/imposition
  double finetune_p = 0.85;     ///< fine-tuned local model usability
  double finetune_cost = 600.0;
  double finetune_lambda = 0.001;  ///< detection rate on the rival API model
  double train_p = 1.0;            ///< from-scratch model usability
  double train_cost = 4.6e6;
  double tier_basic_p = 0.85;    ///< cheap API tier usability
  double tier_premium_p = 1.0;   ///< premium API tier usability
  double tier_premium_surcharge = 20.0;  ///< extra USD per detection (re-signup fee)

  bool operator==(const HeadlineConfig&) const = default;
};

enum class Metric {
  threshold_p,        ///< break-even usability rate vs manual authorship
  max_savings,        ///< campaign savings at team_p over campaign_n outputs
  deterrent_lambda,   ///< detection rate that deters API use (manual fallback)
  max_imposition,     ///< monitoring cost ceiling with the open fallback
  min_scale_finetune, ///< campaign size where fine-tuning beats the API model
  min_scale_train,    ///< campaign size where training beats fine-tuning
};

inline constexpr Metric kAllMetrics[] = {
    Metric::threshold_p,      Metric::max_savings,        Metric::deterrent_lambda,
    Metric::max_imposition,   Metric::min_scale_finetune, Metric::min_scale_train,
};

const char* metric_id(Metric m);
const char* metric_unit(Metric m);
Metric metric_from_id(const std::string& id);  // throws DomainError on unknown id

/// Value of one headline metric for a single parameter draw.
double metric_value(Metric m, const ParamDraw& d, const HeadlineConfig& cfg);

struct EstimateSummary {
  std::string metric;
  double mean = 0.0;
  double ci_lo = 0.0;  ///< 2.5th percentile of the sample distribution
  double ci_hi = 0.0;  ///< 97.5th percentile
  std::size_t sample_count = 0;
  std::string unit;
};

/// Monte Carlo summaries of the six headline metrics, plus two alternate
/// constructions of max_imposition (Poisson-realized detections and the
/// open-model denominator) for comparison.
std::vector<EstimateSummary> headline_estimates(const SampleSet& samples,
                                                const HeadlineConfig& cfg);

struct SensitivityRow {
  std::string varied;  ///< alpha, w, L, IC, P, or all
  std::string metric;
  double q0 = 0.0, q25 = 0.0, q50 = 0.0, q75 = 0.0, q100 = 0.0;
};

/// One-at-a-time sensitivity: for each parameter, `count` draws with only
/// that parameter sampled over its range (others held at midpoint), plus a
/// jointly sampled "all" row.
std::vector<SensitivityRow> sensitivity(Metric metric, const ParamRanges& ranges,
                                        std::size_t count, std::uint64_t seed,
                                        const HeadlineConfig& cfg);

// ---- worked model-choice comparisons -------------------------------------

/// Detection rate at which the cheap API tier's cost matches the premium
/// tier's (bisection on the per-usable-output cost gap).
double api_tier_indifference_lambda(const ParamDraw& d, const HeadlineConfig& cfg);

/// Break-even campaign size for fine-tuning a local model instead of using
/// the basic API tier monitored at this draw's indifference rate.
double finetune_vs_api_breakeven(const ParamDraw& d, const HeadlineConfig& cfg);

/// Break-even size for training from scratch when only the API tiers and
/// manual authorship are available.
double scratch_vs_api_breakeven(const ParamDraw& d, const HeadlineConfig& cfg);

// ---- figure datasets ------------------------------------------------------

struct HistogramBin {
  double lo = 0.0, hi = 0.0;
  std::uint64_t count = 0;
};

/// Distribution of break-even usability thresholds over the sample set.
std::vector<HistogramBin> threshold_histogram(const SampleSet& samples, std::size_t bins);

struct PhaseCell {
  double p = 0.0;
  double lambda = 0.0;
  double imposed_mean = 0.0;           ///< expectation-based imposed cost
  double imposed_q25 = 0.0;
  double imposed_q75 = 0.0;
  double imposed_poisson_mean = 0.0;   ///< same with Poisson-realized detections
};

/// Campaign cost imposed by monitoring at each (p, lambda): the detection
/// bill capped at the point where the operator reverts to manual authorship.
std::vector<PhaseCell> detection_phase_grid(const SampleSet& samples,
                                            std::span<const double> p_values,
                                            std::span<const double> lambda_grid, double n,
                                            unsigned threads);

// ---- comparison against the published estimates ---------------------------

struct BenchmarkRow {
  std::string name;
  double value = 0.0;
  double lo = 0.0;  ///< tolerance band
  double hi = 0.0;
  bool pass = false;
};

/// Every reproducible headline quantity evaluated over `samples`, with its
/// published tolerance band. Used by the comparison report and the
/// acceptance suite.
std::vector<BenchmarkRow> benchmark_table(const SampleSet& samples, const HeadlineConfig& cfg);

}  // namespace opcost
