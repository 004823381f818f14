// Acceptance suite: every release criterion in one binary, one verdict line
// per criterion. Exit code is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "opcost/analysis.hpp"
#include "opcost/costs.hpp"
#include "opcost/csv.hpp"
#include "opcost/driver.hpp"
#include "opcost/parallel.hpp"
#include "opcost/params.hpp"
#include "opcost/rng.hpp"
#include "opcost/simulate.hpp"
#include "opcost/stats.hpp"
#include "opcost/strategy.hpp"
#include "opcost/thresholds.hpp"

using namespace opcost;

namespace {

int g_failures = 0;

struct Check {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
  void band(const char* name, double value, double lo, double hi) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s=%.6g not in [%.6g, %.6g]", name, value, lo, hi);
    require(value >= lo && value <= hi, buf);
  }
};

void report(int idx, const std::string& title, const Check& c) {
  std::printf("[%s] criterion %2d: %s%s%s\n", c.ok ? "PASS" : "FAIL", idx, title.c_str(),
              c.detail.empty() ? "" : " -- ", c.detail.c_str());
  if (!c.ok) ++g_failures;
}

const ParamDraw kMid = midpoint(default_ranges());
const HeadlineConfig kCfg;

const EstimateSummary& find_estimate(const std::vector<EstimateSummary>& est,
                                     const std::string& id) {
  for (const EstimateSummary& e : est) {
    if (e.metric == id) return e;
  }
  throw std::runtime_error("missing estimate " + id);
}

// ---- criterion 1: manual-cost moments -------------------------------------

void criterion_1() {
  Check c;
  const auto t0 = std::chrono::steady_clock::now();
  const SampleSet set = sample(default_ranges(), 100000, 0);
  double sum = 0.0, lo = 1e300, hi = -1e300;
  for (const ParamDraw& d : set.draws) {
    const double v = manual_marginal_cost(d);
    sum += v;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.band("mean(w/L)", sum / 100000.0, 0.42, 0.46);
  c.require(lo >= 0.0564, "observed min " + format_number(lo) + " below 0.0564");
  c.require(hi <= 1.906, "observed max " + format_number(hi) + " above 1.906");
  c.require(elapsed < 1.0, "runtime " + format_number(elapsed) + "s exceeds 1s");
  report(1, "manual-cost moments over 100k samples", c);
}

// ---- criteria 2-7: headline estimates -------------------------------------

void criteria_2_to_7(const SampleSet& set, const std::vector<EstimateSummary>& est) {
  {
    Check c;
    const EstimateSummary& e = find_estimate(est, "threshold_p");
    c.band("mean", e.mean, 0.23, 0.27);
    c.band("ci_lo", e.ci_lo, 0.12 - 0.05, 0.12 + 0.05);
    c.band("ci_hi", e.ci_hi, 0.51 - 0.05, 0.51 + 0.05);
    const double analytic = std::log(5.0) / 8.0 +
                            0.0123 * 15.0 * std::log(9.53 / 1.41) / (9.53 - 1.41);
    c.band("analytic_cross_check", analytic, 0.2446 - 1e-4, 0.2446 + 1e-4);
    std::vector<double> vals(set.count());
    for (std::size_t i = 0; i < set.count(); ++i) {
      vals[i] = metric_value(Metric::threshold_p, set.draws[i], kCfg);
    }
    const double se = sample_stddev(vals) / std::sqrt(static_cast<double>(set.count()));
    c.require(std::fabs(e.mean - analytic) <= 3.0 * se,
              "MC mean deviates from the analytic value by more than 3 SE");
    report(2, "break-even performance threshold", c);
  }
  {
    Check c;
    const EstimateSummary& e = find_estimate(est, "max_savings");
    c.band("mean", e.mean, 3.0e6 * 0.85, 3.0e6 * 1.15);
    c.band("ci_lo", e.ci_lo, 4.3e5 * 0.75, 4.3e5 * 1.25);
    c.band("ci_hi", e.ci_hi, 9.4e6 * 0.75, 9.4e6 * 1.25);
    double rel = 0.0;
    for (const ParamDraw& d : set.draws) {
      rel += per_output_savings(d, kCfg.team_p) / manual_marginal_cost(d);
    }
    rel /= static_cast<double>(set.count());
    c.require(rel > 0.67, "relative reduction " + format_number(rel) + " not above 67%");
    report(3, "campaign savings at p=0.75 over 10M outputs", c);
  }
  {
    Check c;
    const EstimateSummary& e = find_estimate(est, "deterrent_lambda");
    c.band("mean", e.mean, 0.03, 0.05);
    c.band("ci_lo", e.ci_lo, 0.009 * 0.7, 0.009 * 1.3);
    c.band("ci_hi", e.ci_hi, 0.12 * 0.7, 0.12 * 1.3);
    report(4, "deterrent detection rate with manual fallback", c);
  }
  {
    Check c;
    const EstimateSummary& e = find_estimate(est, "max_imposition");
    c.band("primary_mean", e.mean, 4.4e4, 3.0e6);
    const double pois = find_estimate(est, "max_imposition_poisson").mean;
    const double alt = find_estimate(est, "max_imposition_open_rate").mean;
    c.detail += "estimators: expected " + format_number(e.mean) + ", poisson " +
                format_number(pois) + ", open-denominator " + format_number(alt);
    report(5, "imposition ceiling with open fallback inside the published CI", c);
  }
  {
    Check c;
    const EstimateSummary& e = find_estimate(est, "min_scale_finetune");
    c.band("mean", e.mean, 9.0e4, 1.7e5);
    c.band("ci_lo", e.ci_lo, 3.8e4 * 0.6, 3.8e4 * 1.4);
    c.band("ci_hi", e.ci_hi, 4.2e5 * 0.6, 4.2e5 * 1.4);
    const double mid_value = metric_value(Metric::min_scale_finetune, kMid, kCfg);
    c.require(std::fabs(mid_value - 74588.0) <= 10.0,
              "midpoint closed form " + format_number(mid_value) + " not within 74588 +- 10");
    report(6, "minimum viable scale, fine-tune vs API", c);
  }
  {
    Check c;
    const EstimateSummary& e = find_estimate(est, "min_scale_train");
    c.band("mean", e.mean, 2.8e8, 5.4e8);
    c.band("ci_lo", e.ci_lo, 8.2e7 * 0.6, 8.2e7 * 1.4);
    c.band("ci_hi", e.ci_hi, 1.1e9 * 0.6, 1.1e9 * 1.4);
    const double mid_value = metric_value(Metric::min_scale_train, kMid, kCfg);
    c.band("midpoint_closed_form", mid_value, 356.65e6 * 0.995, 356.65e6 * 1.005);
    report(7, "minimum viable scale, training vs fine-tuning", c);
  }
}

// ---- criterion 8: worked model-choice scenarios ----------------------------

void criterion_8(const SampleSet& set) {
  Check c;
  double lam_sum = 0.0, ft_sum = 0.0, scratch_sum = 0.0;
  for (const ParamDraw& d : set.draws) {
    lam_sum += api_tier_indifference_lambda(d, kCfg);
    ft_sum += finetune_vs_api_breakeven(d, kCfg);
    scratch_sum += scratch_vs_api_breakeven(d, kCfg);
  }
  const double inv = 1.0 / static_cast<double>(set.count());
  c.band("tier_lambda_mean", lam_sum * inv, 7.0e-4, 1.1e-3);
  c.band("finetune_breakeven_mean", ft_sum * inv, 1.7e5, 3.3e5);
  c.band("scratch_breakeven_mean", scratch_sum * inv, 3.1e8 * 0.65, 3.1e8 * 1.35);

  double mean_manual = 0.0, mean_ic = 0.0;
  for (const ParamDraw& d : set.draws) {
    mean_manual += manual_marginal_cost(d);
    mean_ic += d.inference_cost;
  }
  c.band("payback_multiplier", 1.0 / ((mean_manual - mean_ic) * inv), 2.33 * 0.97, 2.33 * 1.03);
  report(8, "API-tier preference, fine-tune and training break-evens, payback", c);
}

// ---- criterion 9: monitoring-cost phase structure --------------------------

void criterion_9(const SampleSet& set) {
  Check c;
  const double n = 1e7;
  for (double p : {0.3, 0.5, 0.7, 0.9}) {
    double imposed_low = 0.0, cap_sum = 0.0;
    std::size_t at_cap = 0;
    for (const ParamDraw& d : set.draws) {
      const double cap = std::max(0.0, n * (manual_marginal_cost(d) - team_marginal_cost(d, p)));
      cap_sum += cap;
      imposed_low += std::min(d.penalty * 1e-4 * n / p, cap);
      const double imposed_high = std::min(d.penalty * 0.1 * n / p, cap);
      at_cap += imposed_high >= cap * (1.0 - 1e-12);
    }
    const double low_ratio = imposed_low / cap_sum;
    const double cap_frac = static_cast<double>(at_cap) / static_cast<double>(set.count());
    char buf[120];
    std::snprintf(buf, sizeof buf, "p=%.1f: imposed(1e-4)/cap=%.4f", p, low_ratio);
    c.require(low_ratio < 0.05, buf);
    std::snprintf(buf, sizeof buf, "p=%.1f: only %.2f%% of samples reach the cap at lambda=0.1",
                  p, 100.0 * cap_frac);
    c.require(cap_frac >= 0.99, buf);
  }
  report(9, "phase structure of imposed monitoring costs", c);
}

// ---- criterion 10: event-level oracle equivalence ---------------------------

void criterion_10(const SampleSet& set) {
  Check c;
  const std::uint64_t case_stream = derive_stream(1001, 0xACC);
  std::uint64_t ctr = 0;
  auto u = [&] { return u01_at(case_stream, ctr++); };
  const unsigned threads = default_thread_count();

  for (int case_idx = 0; case_idx < 20; ++case_idx) {
    const ParamDraw d = set.draws[static_cast<std::size_t>(u() * 9999.0)];
    ModelConfig m;
    m.name = "case";
    m.kind = ModelKind::api;
    m.p = 0.5 + 0.45 * u();
    // first half of the cases stays inside the goodness-of-fit regime
    const bool gof = case_idx < 10;
    m.lambda = gof ? 1e-4 * std::pow(80.0, u()) : 1e-3 * std::pow(80.0, u());
    m.penalty_surcharge = u() < 0.3 ? 20.0 * u() : 0.0;
    const auto n = static_cast<std::uint64_t>(2e3 * std::pow(200.0, u()));
    const std::size_t seeds = 1000;

    std::vector<double> raw(seeds), det(seeds), cost(seeds);
    parallel_for(seeds, threads, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t s = lo; s < hi; ++s) {
        const SimResult r = simulate_campaign(n, d, m, value_at(case_stream, 5000 + s));
        raw[s] = static_cast<double>(r.raw_outputs);
        det[s] = static_cast<double>(r.detections);
        cost[s] = r.total_cost;
      }
    });

    const double nd = static_cast<double>(n);
    const double sq = std::sqrt(static_cast<double>(seeds));
    const double raw_mean = nd / m.p;
    const double var_raw = nd * (1.0 - m.p) / (m.p * m.p);
    const double raw_se = std::sqrt(var_raw) / sq;
    const double det_mean = m.lambda * nd / m.p;
    const double var_det = det_mean * (1.0 - m.lambda) + m.lambda * m.lambda * var_raw;
    const double det_se = std::sqrt(var_det) / sq;
    const double per_raw = d.wage / (d.review_speedup * d.productivity) + d.inference_cost;
    const double pen = d.penalty + m.penalty_surcharge;
    const double var_cost = per_raw * per_raw * var_raw + pen * pen * var_det +
                            2.0 * per_raw * pen * m.lambda * var_raw;
    const double cost_se = std::sqrt(var_cost) / sq;
    const double expected = campaign_cost_expected(nd, d, m).total;

    char buf[160];
    std::snprintf(buf, sizeof buf, "case %d (p=%.3f lambda=%.5f n=%llu)", case_idx, m.p,
                  m.lambda, static_cast<unsigned long long>(n));
    const std::string tag(buf);
    c.require(std::fabs(mean(raw) - raw_mean) <= 3.0 * raw_se, tag + ": raw outputs off");
    c.require(std::fabs(mean(det) - det_mean) <= 3.0 * det_se, tag + ": detections off");
    c.require(std::fabs(mean(cost) - expected) <= 3.0 * cost_se, tag + ": cost off");

    if (gof) {
      const double pval = poisson_gof_pvalue(det, det_mean);
      c.require(pval > 0.001, tag + ": Poisson fit p=" + format_number(pval));
    }
  }
  report(10, "event-level simulation matches closed forms (20 cases x 1000 seeds)", c);
}

// ---- criterion 11: closed forms vs bisection --------------------------------

void criterion_11() {
  Check c;
  const SampleSet set = sample(default_ranges(), 1000, 2);
  const std::uint64_t stream = derive_stream(1100, 0);
  std::uint64_t ctr = 0;
  auto u = [&] { return u01_at(stream, ctr++); };
  auto close = [](double a, double b) {
    return std::fabs(a - b) <= 1e-9 * std::max({1e-30, std::fabs(a), std::fabs(b)});
  };
  std::size_t bad = 0;

  for (const ParamDraw& d : set.draws) {
    const double b = d.wage / (d.review_speedup * d.productivity) + d.inference_cost;
    const double wl = d.wage / d.productivity;

    const double lam = 0.002 * u();
    const double surcharge = 30.0 * u();
    auto gap_p1 = [&](double p1) { return (b + (d.penalty + surcharge) * lam) / p1 - wl; };
    bad += !close(bisect(gap_p1, 1e-9, 1e9, 1e-13), p_hat_manual(d, lam, surcharge).value);

    const double p2 = 0.3 + 0.6 * u();
    auto gap_open = [&](double p1) { return (b + d.penalty * lam) / p1 - b / p2; };
    bad += !close(bisect(gap_open, 1e-9, 1e9, 1e-13), p_hat_vs_open(d, p2, lam, 0.0, 1e6).value);

    const double p_hat = p_hat_manual(d, 0.0, 0.0).value;
    if (p_hat >= 0.95) continue;
    const double p1 = p_hat + (1.0 - p_hat) * (0.05 + 0.9 * u());
    auto gap_lam = [&](double l) { return (b + d.penalty * l) / p1 - wl; };
    bad += !close(bisect(gap_lam, 0.0, 10.0, 1e-13), lambda_hat_manual(d, p1).value);

    const double p2b = p_hat + (p1 - p_hat) * u();
    const double fc = 2000.0 * u();
    const double n = 1e4 + 1e6 * u();
    auto gap_lam2 = [&](double l) {
      return (n / p1) * (b + d.penalty * l) - ((n / p2b) * b + fc);
    };
    bad += !close(bisect(gap_lam2, 0.0, 10.0, 1e-13), lambda_hat_open(d, p1, p2b, fc, n).value);

    // minimum viable scale, one bisection per competitor line
    const double target = std::min(1.0, p1 + (1.0 - p1) * u() + 1e-3);
    const double fc2 = 100.0 + 5000.0 * u();
    {
      ModelConfig rival;
      rival.name = "api";
      rival.kind = ModelKind::api;
      rival.p = p1;
      rival.lambda = 1e-4 + 0.01 * u();
      auto gap_n = [&](double n2) {
        return (n2 / rival.p) * (b + d.penalty * rival.lambda) - ((n2 / target) * b + fc2);
      };
      bad += !close(bisect(gap_n, 1.0, 1e15, 1e-13), min_viable_scale(d, target, fc2, {&rival, 1}));
    }
    if (target > p2b + 1e-6) {
      ModelConfig rival;
      rival.name = "open";
      rival.kind = ModelKind::open_source;
      rival.p = p2b;
      auto gap_n = [&](double n2) { return (n2 / p2b) * b - ((n2 / target) * b + fc2); };
      bad += !close(bisect(gap_n, 1.0, 1e18, 1e-13), min_viable_scale(d, target, fc2, {&rival, 1}));
    }
    {
      ModelConfig rival;
      rival.name = "manual";
      rival.kind = ModelKind::manual;
      auto gap_n = [&](double n2) { return n2 * wl - ((n2 / target) * b + fc2); };
      if (target * wl > b) {
        bad += !close(bisect(gap_n, 1.0, 1e15, 1e-13),
                      min_viable_scale(d, target, fc2, {&rival, 1}));
      }
    }
  }
  c.require(bad == 0, std::to_string(bad) + " closed-form/bisection mismatches");
  report(11, "closed forms agree with bisection to 1e-9 on 1000 random instances", c);
}

// ---- criterion 12: sensitivity structure ------------------------------------

void criterion_12() {
  Check c;
  const auto thr = sensitivity(Metric::threshold_p, default_ranges(), 10000, 0, kCfg);
  double alpha_spread = 0.0, ic_spread = 0.0;
  for (const SensitivityRow& r : thr) {
    if (r.varied == "alpha") alpha_spread = r.q100 - r.q0;
    if (r.varied == "IC") ic_spread = r.q100 - r.q0;
  }
  char buf[120];
  std::snprintf(buf, sizeof buf, "IC spread %.4f vs alpha spread %.4f", ic_spread, alpha_spread);
  c.require(ic_spread < 0.2 * alpha_spread, buf);

  const auto scale = sensitivity(Metric::min_scale_finetune, default_ranges(), 10000, 0, kCfg);
  for (const SensitivityRow& r : scale) {
    if (r.varied == "alpha" || r.varied == "L" || r.varied == "IC") {
      c.require(r.q100 - r.q0 == 0.0, "varying " + r.varied + " moved the fine-tune scale");
    }
  }
  report(12, "sensitivity structure (alpha dominates; scale ignores alpha/L/IC)", c);
}

// ---- criterion 13: bit-for-bit determinism ----------------------------------

std::map<std::string, std::string> read_dir(const std::filesystem::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    std::ifstream in(entry.path(), std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    files[entry.path().filename().string()] = buf.str();
  }
  return files;
}

void criterion_13() {
  Check c;
  const std::filesystem::path base = std::filesystem::temp_directory_path() / "opcost_accept";
  std::filesystem::remove_all(base);

  RunConfig cfg;
  cfg.scenario = default_scenario();
  cfg.scenario.seed = 7;

  cfg.out_dir = (base / "a").string();
  cfg.threads = 2;
  run_reproduce(cfg);
  cfg.out_dir = (base / "b").string();
  run_reproduce(cfg);
  cfg.out_dir = (base / "c").string();
  cfg.threads = 5;
  run_reproduce(cfg);

  const auto a = read_dir(base / "a");
  const auto b = read_dir(base / "b");
  const auto cc = read_dir(base / "c");
  c.require(!a.empty(), "no output files written");
  c.require(a == b, "two identical runs differ");
  c.require(a == cc, "changing --threads changed the output bytes");
  std::filesystem::remove_all(base);
  report(13, "reproduce-paper is byte-identical across runs and thread counts", c);
}

}  // namespace

int main() {
  std::printf("acceptance suite: seed 0, 10000 samples unless stated\n");
  criterion_1();
  const SampleSet set = sample(default_ranges(), 10000, 0);
  const std::vector<EstimateSummary> est = headline_estimates(set, kCfg);
  criteria_2_to_7(set, est);
  criterion_8(set);
  criterion_9(set);
  criterion_10(set);
  criterion_11();
  criterion_12();
  criterion_13();
  if (g_failures == 0) {
    std::printf("all criteria passed\n");
  } else {
    std::printf("%d criterion(s) failed\n", g_failures);
  }
  return g_failures;
}
