#include "opcost/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "opcost/costs.hpp"
#include "opcost/errors.hpp"
#include "opcost/parallel.hpp"
#include "opcost/rng.hpp"
#include "opcost/stats.hpp"
#include "opcost/thresholds.hpp"

namespace opcost {

namespace {

constexpr std::uint64_t kImpositionTag = 0x49;
constexpr std::uint64_t kPhaseTag = 0x46;
constexpr std::uint64_t kSensitivityTag = 0x53;

EstimateSummary summarize(const std::string& id, const std::string& unit,
                          std::vector<double>& values) {
  EstimateSummary s;
  s.metric = id;
  s.unit = unit;
  s.sample_count = values.size();
  s.mean = mean(values);
  s.ci_lo = percentile_inplace(values, 2.5);
  s.ci_hi = percentile_inplace(values, 97.5);
  return s;
}

bool in_band(double v, double lo, double hi) { return v >= lo && v <= hi; }

}  // namespace

const char* metric_id(Metric m) {
  switch (m) {
    case Metric::threshold_p: return "threshold_p";
    case Metric::max_savings: return "max_savings";
    case Metric::deterrent_lambda: return "deterrent_lambda";
    case Metric::max_imposition: return "max_imposition";
    case Metric::min_scale_finetune: return "min_scale_finetune";
    case Metric::min_scale_train: return "min_scale_train";
  }
  return "unknown";
}

const char* metric_unit(Metric m) {
  switch (m) {
    case Metric::threshold_p: return "rate";
    case Metric::max_savings: return "USD";
    case Metric::deterrent_lambda: return "detections/output";
    case Metric::max_imposition: return "USD";
    case Metric::min_scale_finetune: return "outputs";
    case Metric::min_scale_train: return "outputs";
  }
  return "unknown";
}

Metric metric_from_id(const std::string& id) {
  for (Metric m : kAllMetrics) {
    if (id == metric_id(m)) return m;
  }
  throw DomainError("unknown metric '" + id + "'");
}

double metric_value(Metric m, const ParamDraw& d, const HeadlineConfig& cfg) {
  switch (m) {
    case Metric::threshold_p:
      return p_hat_manual(d, 0.0, 0.0).value;
    case Metric::max_savings:
      return cfg.campaign_n * per_output_savings(d, cfg.team_p);
    case Metric::deterrent_lambda:
      return lambda_hat_manual(d, cfg.team_p).value;
    case Metric::max_imposition: {
      const double lam = lambda_hat_open(d, cfg.team_p, cfg.open_p, cfg.open_fixed_cost,
                                         cfg.campaign_n)
                             .value;
      return d.penalty * lam * cfg.campaign_n / cfg.team_p;
    }
    case Metric::min_scale_finetune: {
      ModelConfig rival;
      rival.name = "api";
      rival.kind = ModelKind::api;
      rival.p = cfg.finetune_p;
      rival.lambda = cfg.finetune_lambda;
      return min_viable_scale(d, cfg.finetune_p, cfg.finetune_cost, {&rival, 1});
    }
    case Metric::min_scale_train: {
      ModelConfig rival;
      rival.name = "finetuned";
      rival.kind = ModelKind::open_source;
      rival.p = cfg.finetune_p;
      rival.fixed_cost = cfg.finetune_cost;
      return min_viable_scale(d, cfg.train_p, cfg.train_cost - cfg.finetune_cost, {&rival, 1});
    }
  }
  throw DomainError("metric_value: unhandled metric");
}

std::vector<EstimateSummary> headline_estimates(const SampleSet& samples,
                                                const HeadlineConfig& cfg) {
  if (samples.draws.size() < 1000) {
    throw DomainError("headline_estimates: reported summaries need at least 1000 samples");
  }
  std::vector<EstimateSummary> out;
  std::vector<double> values(samples.draws.size());

  for (Metric m : kAllMetrics) {
    for (std::size_t i = 0; i < samples.draws.size(); ++i) {
      values[i] = metric_value(m, samples.draws[i], cfg);
    }
    out.push_back(summarize(metric_id(m), metric_unit(m), values));
  }

  // Alternate imposition estimators: Poisson-realized detection bills and
  // the open-model raw-output denominator.
  const std::uint64_t imp_stream = derive_stream(samples.seed, kImpositionTag);
  std::vector<double> poisson_values(samples.draws.size());
  for (std::size_t i = 0; i < samples.draws.size(); ++i) {
    const ParamDraw& d = samples.draws[i];
    const double lam = lambda_hat_open(d, cfg.team_p, cfg.open_p, cfg.open_fixed_cost,
                                       cfg.campaign_n)
                           .value;
    CounterRng rng(derive_stream(imp_stream, i));
    poisson_values[i] =
        d.penalty * static_cast<double>(poisson_draw(rng, lam * cfg.campaign_n / cfg.team_p));
    values[i] = d.penalty * lam * cfg.campaign_n / cfg.open_p;
  }
  out.push_back(summarize("max_imposition_poisson", "USD", poisson_values));
  out.push_back(summarize("max_imposition_open_rate", "USD", values));
  return out;
}

std::vector<SensitivityRow> sensitivity(Metric metric, const ParamRanges& ranges,
                                        std::size_t count, std::uint64_t seed,
                                        const HeadlineConfig& cfg) {
  ranges.validate();
  if (count == 0) throw DomainError("sensitivity: count must be >= 1");

  const ParamDraw mid = midpoint(ranges);
  const double mid_mult = 0.5 * (ranges.penalty_mult_lo + ranges.penalty_mult_hi);
  static constexpr const char* kParams[] = {"alpha", "w", "L", "IC", "P"};

  std::vector<SensitivityRow> rows;
  std::vector<double> values(count);
  for (int param = 0; param < 5; ++param) {
    const std::uint64_t stream =
        derive_stream(seed, kSensitivityTag + static_cast<std::uint64_t>(param));
    for (std::size_t i = 0; i < count; ++i) {
      ParamDraw d = mid;
      const double u = u01_at(stream, i);
      switch (param) {
        case 0:
          d.review_speedup =
              ranges.review_speedup_lo + (ranges.review_speedup_hi - ranges.review_speedup_lo) * u;
          break;
        case 1:
          d.wage = ranges.wage_lo + (ranges.wage_hi - ranges.wage_lo) * u;
          d.penalty = mid_mult * d.wage;  // penalty tracks the wage
          break;
        case 2:
          d.productivity =
              ranges.productivity_lo + (ranges.productivity_hi - ranges.productivity_lo) * u;
          break;
        case 3:
          d.inference_cost =
              ranges.inference_cost_lo + (ranges.inference_cost_hi - ranges.inference_cost_lo) * u;
          break;
        case 4:
          d.penalty =
              (ranges.penalty_mult_lo + (ranges.penalty_mult_hi - ranges.penalty_mult_lo) * u) *
              mid.wage;
          break;
      }
      values[i] = metric_value(metric, d, cfg);
    }
    const Quartiles q = quartiles(values);
    rows.push_back(SensitivityRow{kParams[param], metric_id(metric), q.q0, q.q25, q.q50, q.q75,
                                  q.q100});
  }

  const SampleSet joint = sample(ranges, count, seed);
  for (std::size_t i = 0; i < count; ++i) {
    values[i] = metric_value(metric, joint.draws[i], cfg);
  }
  const Quartiles q = quartiles(values);
  rows.push_back(SensitivityRow{"all", metric_id(metric), q.q0, q.q25, q.q50, q.q75, q.q100});
  return rows;
}

double api_tier_indifference_lambda(const ParamDraw& d, const HeadlineConfig& cfg) {
  const double b = d.wage / (d.review_speedup * d.productivity) + d.inference_cost;
  auto gap = [&](double lam) {
    const double basic = (b + d.penalty * lam) / cfg.tier_basic_p;
    const double premium =
        (b + (d.penalty + cfg.tier_premium_surcharge) * lam) / cfg.tier_premium_p;
    return basic - premium;
  };
  return bisect(gap, 0.0, 1.0, 1e-12);
}

double finetune_vs_api_breakeven(const ParamDraw& d, const HeadlineConfig& cfg) {
  ModelConfig rival;
  rival.name = "api_basic";
  rival.kind = ModelKind::api;
  rival.p = cfg.tier_basic_p;
  rival.lambda = api_tier_indifference_lambda(d, cfg);
  return min_viable_scale(d, cfg.finetune_p, cfg.finetune_cost, {&rival, 1});
}

double scratch_vs_api_breakeven(const ParamDraw& d, const HeadlineConfig& cfg) {
  const double lam = api_tier_indifference_lambda(d, cfg);
  ModelConfig rivals[3];
  rivals[0].name = "manual";
  rivals[0].kind = ModelKind::manual;
  rivals[1].name = "api_basic";
  rivals[1].kind = ModelKind::api;
  rivals[1].p = cfg.tier_basic_p;
  rivals[1].lambda = lam;
  rivals[2].name = "api_premium";
  rivals[2].kind = ModelKind::api;
  rivals[2].p = cfg.tier_premium_p;
  rivals[2].lambda = lam;
  rivals[2].penalty_surcharge = cfg.tier_premium_surcharge;
  return min_viable_scale(d, cfg.train_p, cfg.train_cost, rivals);
}

std::vector<HistogramBin> threshold_histogram(const SampleSet& samples, std::size_t bins) {
  if (bins == 0) throw DomainError("threshold_histogram: bins must be >= 1");
  if (samples.draws.empty()) throw DomainError("threshold_histogram: empty sample set");
  std::vector<HistogramBin> hist(bins);
  for (std::size_t b = 0; b < bins; ++b) {
    hist[b].lo = static_cast<double>(b) / static_cast<double>(bins);
    hist[b].hi = static_cast<double>(b + 1) / static_cast<double>(bins);
  }
  for (const ParamDraw& d : samples.draws) {
    const double v = p_hat_manual(d, 0.0, 0.0).value;
    auto idx = static_cast<std::size_t>(std::clamp(
        v * static_cast<double>(bins), 0.0, static_cast<double>(bins) - 1.0));
    hist[idx].count++;
  }
  return hist;
}

std::vector<PhaseCell> detection_phase_grid(const SampleSet& samples,
                                            std::span<const double> p_values,
                                            std::span<const double> lambda_grid, double n,
                                            unsigned threads) {
  if (samples.draws.empty()) throw DomainError("detection_phase_grid: empty sample set");
  if (p_values.empty() || lambda_grid.empty()) {
    throw DomainError("detection_phase_grid: empty grid");
  }
  const std::uint64_t base = derive_stream(samples.seed, kPhaseTag);
  const std::size_t cells = p_values.size() * lambda_grid.size();
  std::vector<PhaseCell> grid(cells);

  parallel_for(cells, threads, [&](std::size_t begin, std::size_t end) {
    std::vector<double> imposed(samples.draws.size());
    for (std::size_t cell = begin; cell < end; ++cell) {
      const double p = p_values[cell / lambda_grid.size()];
      const double lam = lambda_grid[cell % lambda_grid.size()];
      double sum = 0.0;
      double poisson_sum = 0.0;
      for (std::size_t k = 0; k < samples.draws.size(); ++k) {
        const ParamDraw& d = samples.draws[k];
        const double cap =
            std::max(0.0, n * (manual_marginal_cost(d) - team_marginal_cost(d, p)));
        const double expected_bill = d.penalty * lam * n / p;
        imposed[k] = std::min(expected_bill, cap);
        sum += imposed[k];
        CounterRng rng(derive_stream(base, cell * samples.draws.size() + k));
        const double realized_bill =
            d.penalty * static_cast<double>(poisson_draw(rng, lam * n / p));
        poisson_sum += std::min(realized_bill, cap);
      }
      PhaseCell& out = grid[cell];
      out.p = p;
      out.lambda = lam;
      const double inv = 1.0 / static_cast<double>(samples.draws.size());
      out.imposed_mean = sum * inv;
      out.imposed_poisson_mean = poisson_sum * inv;
      out.imposed_q25 = percentile_inplace(imposed, 25.0);
      out.imposed_q75 = percentile_inplace(imposed, 75.0);
    }
  });
  return grid;
}

std::vector<BenchmarkRow> benchmark_table(const SampleSet& samples, const HeadlineConfig& cfg) {
  std::vector<BenchmarkRow> rows;
  auto add = [&](const std::string& name, double value, double lo, double hi) {
    rows.push_back(BenchmarkRow{name, value, lo, hi, in_band(value, lo, hi)});
  };

  const std::vector<EstimateSummary> est = headline_estimates(samples, cfg);
  auto find = [&](const std::string& id) -> const EstimateSummary& {
    for (const EstimateSummary& e : est) {
      if (e.metric == id) return e;
    }
    throw DomainError("benchmark_table: missing estimate " + id);
  };

  std::vector<double> scratch(samples.draws.size());

  // marginal manual cost moments
  for (std::size_t i = 0; i < samples.draws.size(); ++i) {
    scratch[i] = manual_marginal_cost(samples.draws[i]);
  }
  add("manual_cost_mean", mean(scratch), 0.42, 0.46);

  // break-even performance
  const EstimateSummary& thr = find("threshold_p");
  add("threshold_p_mean", thr.mean, 0.23, 0.27);
  add("threshold_p_ci_lo", thr.ci_lo, 0.12 - 0.05, 0.12 + 0.05);
  add("threshold_p_ci_hi", thr.ci_hi, 0.51 - 0.05, 0.51 + 0.05);

  // campaign savings
  const EstimateSummary& sav = find("max_savings");
  add("max_savings_mean", sav.mean, 3.0e6 * 0.85, 3.0e6 * 1.15);
  add("max_savings_ci_lo", sav.ci_lo, 4.3e5 * 0.75, 4.3e5 * 1.25);
  add("max_savings_ci_hi", sav.ci_hi, 9.4e6 * 0.75, 9.4e6 * 1.25);
  for (std::size_t i = 0; i < samples.draws.size(); ++i) {
    const ParamDraw& d = samples.draws[i];
    scratch[i] = per_output_savings(d, cfg.team_p) / manual_marginal_cost(d);
  }
  add("relative_savings_mean", mean(scratch), 0.67, 1.0);

  // deterrent detection rate, manual fallback
  const EstimateSummary& det = find("deterrent_lambda");
  add("deterrent_lambda_mean", det.mean, 0.03, 0.05);
  add("deterrent_lambda_ci_lo", det.ci_lo, 0.009 * 0.7, 0.009 * 1.3);
  add("deterrent_lambda_ci_hi", det.ci_hi, 0.12 * 0.7, 0.12 * 1.3);

  // imposition ceiling with the open fallback
  add("max_imposition_mean", find("max_imposition").mean, 4.4e4, 3.0e6);

  // fine-tuning vs API break-even
  const EstimateSummary& ft = find("min_scale_finetune");
  add("min_scale_finetune_mean", ft.mean, 9.0e4, 1.7e5);
  add("min_scale_finetune_ci_lo", ft.ci_lo, 3.8e4 * 0.6, 3.8e4 * 1.4);
  add("min_scale_finetune_ci_hi", ft.ci_hi, 4.2e5 * 0.6, 4.2e5 * 1.4);

  // training vs fine-tuning break-even
  const EstimateSummary& tr = find("min_scale_train");
  add("min_scale_train_mean", tr.mean, 2.8e8, 5.4e8);
  add("min_scale_train_ci_lo", tr.ci_lo, 8.2e7 * 0.6, 8.2e7 * 1.4);
  add("min_scale_train_ci_hi", tr.ci_hi, 1.1e9 * 0.6, 1.1e9 * 1.4);

  // worked model-choice comparisons
  for (std::size_t i = 0; i < samples.draws.size(); ++i) {
    scratch[i] = api_tier_indifference_lambda(samples.draws[i], cfg);
  }
  add("tier_indifference_lambda_mean", mean(scratch), 7.0e-4, 1.1e-3);
  for (std::size_t i = 0; i < samples.draws.size(); ++i) {
    scratch[i] = finetune_vs_api_breakeven(samples.draws[i], cfg);
  }
  add("finetune_vs_api_mean", mean(scratch), 1.7e5, 3.3e5);
  for (std::size_t i = 0; i < samples.draws.size(); ++i) {
    scratch[i] = scratch_vs_api_breakeven(samples.draws[i], cfg);
  }
  add("scratch_vs_api_mean", mean(scratch), 3.1e8 * 0.65, 3.1e8 * 1.35);

  // full-automation payback multiplier at the sample means
  double mean_manual = 0.0;
  double mean_ic = 0.0;
  for (const ParamDraw& d : samples.draws) {
    mean_manual += manual_marginal_cost(d);
    mean_ic += d.inference_cost;
  }
  mean_manual /= static_cast<double>(samples.draws.size());
  mean_ic /= static_cast<double>(samples.draws.size());
  add("automation_payback_multiplier", 1.0 / (mean_manual - mean_ic), 2.33 * 0.97, 2.33 * 1.03);

  return rows;
}

}  // namespace opcost
