#include "opcost/driver.hpp"

#include <filesystem>
#include <fstream>
#include <functional>

#include <json.hpp>

#include "opcost/analysis.hpp"
#include "opcost/csv.hpp"
#include "opcost/errors.hpp"
#include "opcost/simulate.hpp"
#include "opcost/stats.hpp"
#include "opcost/strategy.hpp"
#include "opcost/thresholds.hpp"

namespace opcost {

namespace {

namespace fs = std::filesystem;

void write_file(const std::string& dir, const std::string& name, const std::string& content) {
  fs::create_directories(dir);
  const fs::path path = fs::path(dir) / name;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DomainError("cannot write " + path.string());
  out << content;
}

GridSpec grid_or(const ScenarioFile& s, const std::string& key, GridSpec fallback) {
  auto it = s.grids.find(key);
  return it == s.grids.end() ? fallback : it->second;
}

const ModelConfig* find_kind(const ScenarioFile& s, ModelKind kind) {
  for (const ModelConfig& m : s.options) {
    if (m.kind == kind) return &m;
  }
  return nullptr;
}

std::string fmt(double v) { return format_number(v); }

// stdout money amounts are rounded to cents; CSV files keep full precision
std::string fmt_usd(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

ScenarioFile default_scenario() {
  ScenarioFile s;
  s.campaign_n = 10'000'000;
  s.samples = 10'000;
  s.seed = 0;
  ModelConfig manual;
  manual.name = "manual";
  manual.kind = ModelKind::manual;
  ModelConfig api;
  api.name = "monitored_api";
  api.kind = ModelKind::api;
  api.p = 0.75;
  api.lambda = 0.001;
  ModelConfig open;
  open.name = "open_source";
  open.kind = ModelKind::open_source;
  open.p = 0.70;
  open.fixed_cost = 600.0;
  s.options = {manual, api, open};
  return s;
}

std::vector<std::string> run_sample(const RunConfig& cfg) {
  const ScenarioFile& s = cfg.scenario;
  const SampleSet set = sample(s.ranges, s.samples, s.seed);
  std::vector<Row> rows;
  rows.reserve(set.count());
  double mean_manual = 0.0;
  for (std::size_t i = 0; i < set.count(); ++i) {
    const ParamDraw& d = set.draws[i];
    rows.push_back(Row{static_cast<std::uint64_t>(i), d.review_speedup, d.wage, d.productivity,
                       d.inference_cost, d.penalty});
    mean_manual += d.wage / d.productivity;
  }
  mean_manual /= static_cast<double>(set.count());
  write_file(cfg.out_dir, "samples.csv",
             emit_table({"index", "alpha", "w", "L", "IC", "P"}, rows));
  return {"samples.csv: " + std::to_string(set.count()) +
          " draws, mean manual cost " + fmt(mean_manual)};
}

std::vector<std::string> run_evaluate(const RunConfig& cfg) {
  const ScenarioFile& s = cfg.scenario;
  CampaignSpec campaign{s.campaign_n, s.options};
  const ParamDraw mid = midpoint(s.ranges);
  const CostBreakdown mid_breakdown = total_cost(campaign, mid);

  const SampleSet set = sample(s.ranges, s.samples, s.seed);
  std::vector<double> mc_mean(s.options.size(), 0.0);
  for (const ParamDraw& d : set.draws) {
    for (std::size_t i = 0; i < s.options.size(); ++i) {
      mc_mean[i] += campaign_cost_expected(static_cast<double>(s.campaign_n), d, s.options[i]).total;
    }
  }
  for (double& v : mc_mean) v /= static_cast<double>(set.count());

  std::vector<Row> rows;
  for (std::size_t i = 0; i < mid_breakdown.options.size(); ++i) {
    const OptionCost& oc = mid_breakdown.options[i];
    rows.push_back(Row{oc.name, std::string(to_string(oc.kind)), oc.labor, oc.inference,
                       oc.expected_penalties, oc.fixed, oc.total, mc_mean[i],
                       std::string(i == mid_breakdown.chosen ? "true" : "false")});
  }
  write_file(cfg.out_dir, "evaluate.csv",
             emit_table({"option", "kind", "labor", "inference", "expected_penalties", "fixed",
                         "total", "mc_mean_total", "chosen"},
                        rows));
  return {"evaluate.csv: chosen=" + mid_breakdown.chosen_option().name + " total=" +
          fmt_usd(mid_breakdown.chosen_option().total) + " (midpoint parameters, n=" +
          std::to_string(s.campaign_n) + ")"};
}

std::vector<std::string> run_thresholds(const RunConfig& cfg) {
  const ScenarioFile& s = cfg.scenario;
  const ModelConfig* api = find_kind(s, ModelKind::api);
  if (api == nullptr) throw DomainError("thresholds: scenario needs an api option");
  const ModelConfig* open = find_kind(s, ModelKind::open_source);

  const ParamDraw mid = midpoint(s.ranges);
  const SampleSet set = sample(s.ranges, s.samples, s.seed);
  const double n = static_cast<double>(s.campaign_n);

  std::vector<Row> rows;
  std::vector<std::string> lines;
  std::vector<double> values(set.count());
  auto add = [&](const std::string& quantity, double midpoint_value,
                 const std::function<double(const ParamDraw&)>& fn) {
    for (std::size_t i = 0; i < set.count(); ++i) values[i] = fn(set.draws[i]);
    EstimateSummary sum;
    sum.mean = mean(values);
    sum.ci_lo = percentile(values, 2.5);
    sum.ci_hi = percentile(values, 97.5);
    rows.push_back(Row{quantity, midpoint_value, sum.mean, sum.ci_lo, sum.ci_hi});
    lines.push_back(quantity + ": midpoint " + fmt(midpoint_value) + ", mean " + fmt(sum.mean) +
                    ", ci [" + fmt(sum.ci_lo) + ", " + fmt(sum.ci_hi) + "]");
  };

  add("p_hat_manual", p_hat_manual(mid, api->lambda, api->penalty_surcharge).value,
      [&](const ParamDraw& d) { return p_hat_manual(d, api->lambda, api->penalty_surcharge).value; });
  add("lambda_hat_manual", lambda_hat_manual(mid, api->p).value,
      [&](const ParamDraw& d) { return lambda_hat_manual(d, api->p).value; });
  if (open != nullptr) {
    add("p_hat_vs_open",
        p_hat_vs_open(mid, open->p, api->lambda, open->fixed_cost, n).value,
        [&](const ParamDraw& d) {
          return p_hat_vs_open(d, open->p, api->lambda, open->fixed_cost, n).value;
        });
    add("lambda_hat_open", lambda_hat_open(mid, api->p, open->p, open->fixed_cost, n).value,
        [&](const ParamDraw& d) {
          return lambda_hat_open(d, api->p, open->p, open->fixed_cost, n).value;
        });
    // break-even scale is defined for every draw only when the open model is
    // at least as capable as the monitored one
    const bool always_viable =
        open->fixed_cost > 0.0 &&
        (api->lambda > 0.0 ? open->p >= api->p : open->p > api->p);
    if (always_viable) {
      add("n_hat_open_vs_api", min_viable_scale(mid, open->p, open->fixed_cost, {api, 1}),
          [&](const ParamDraw& d) {
            return min_viable_scale(d, open->p, open->fixed_cost, {api, 1});
          });
    }
  }
  write_file(cfg.out_dir, "thresholds.csv",
             emit_table({"quantity", "midpoint", "mc_mean", "ci_lo", "ci_hi"}, rows));
  lines.insert(lines.begin(), "thresholds.csv: " + std::to_string(rows.size()) + " quantities");
  return lines;
}

std::vector<std::string> run_strategy_map(const RunConfig& cfg) {
  const ScenarioFile& s = cfg.scenario;
  const SampleSet set = sample(s.ranges, s.samples, s.seed);
  const GridSpec p1_spec = grid_or(s, "p1", GridSpec{0.0, 1.0, 101, false});
  const GridSpec p2_spec = grid_or(s, "p2", GridSpec{0.0, 1.0, 101, false});
  auto strip_zero = [](std::vector<double> v) {
    std::erase_if(v, [](double x) { return x <= 0.0; });
    return v;
  };
  const std::vector<double> p1_grid = strip_zero(p1_spec.points());
  const std::vector<double> p2_grid = strip_zero(p2_spec.points());
  const ModelConfig* open = find_kind(s, ModelKind::open_source);
  const double fc2 = open != nullptr ? open->fixed_cost : 0.0;

  const std::vector<StrategyCell> grid = strategy_grid(
      set, p1_grid, p2_grid, static_cast<double>(s.campaign_n), fc2, cfg.threads);

  std::vector<Row> rows;
  rows.reserve(grid.size());
  for (const StrategyCell& cell : grid) {
    rows.push_back(Row{cell.p1, cell.p2, std::string(to_string(cell.modal)),
                       cell.lambda_hat_mean, cell.imposition_mean, cell.imposition_q25,
                       cell.imposition_q75});
  }
  write_file(cfg.out_dir, "figure4.csv",
             emit_table({"p1", "p2", "scenario_mode", "lambda_hat_mean", "imposition_mean",
                         "imposition_q25", "imposition_q75"},
                        rows));
  return {"figure4.csv: " + std::to_string(grid.size()) + " cells (" +
          std::to_string(p1_grid.size()) + "x" + std::to_string(p2_grid.size()) + ")"};
}

std::vector<std::string> run_sensitivity(const RunConfig& cfg) {
  const ScenarioFile& s = cfg.scenario;
  std::vector<Metric> metrics;
  if (s.metrics.empty()) {
    metrics.assign(std::begin(kAllMetrics), std::end(kAllMetrics));
  } else {
    for (const std::string& id : s.metrics) metrics.push_back(metric_from_id(id));
  }
  std::vector<Row> rows;
  std::vector<std::string> lines;
  for (Metric m : metrics) {
    const std::vector<SensitivityRow> block =
        sensitivity(m, s.ranges, s.samples, s.seed, s.headline);
    double all_spread = 0.0;
    for (const SensitivityRow& r : block) {
      rows.push_back(Row{r.metric, r.varied, r.q0, r.q25, r.q50, r.q75, r.q100});
      if (r.varied == "all") all_spread = r.q100 - r.q0;
    }
    lines.push_back(std::string(metric_id(m)) + ": joint spread " + fmt(all_spread));
  }
  write_file(cfg.out_dir, "figure5.csv",
             emit_table({"metric", "varied_param", "q0", "q25", "q50", "q75", "q100"}, rows));
  lines.insert(lines.begin(), "figure5.csv: " + std::to_string(rows.size()) + " rows");
  return lines;
}

std::vector<std::string> run_headline(const RunConfig& cfg) {
  const ScenarioFile& s = cfg.scenario;
  const SampleSet set = sample(s.ranges, s.samples, s.seed);
  std::vector<EstimateSummary> estimates = headline_estimates(set, s.headline);
  if (!s.metrics.empty()) {
    std::erase_if(estimates, [&](const EstimateSummary& e) {
      for (const std::string& id : s.metrics) {
        if (e.metric == id || e.metric.starts_with(id + "_")) return false;
      }
      return true;
    });
  }
  std::vector<Row> rows;
  std::vector<std::string> lines;
  for (const EstimateSummary& e : estimates) {
    rows.push_back(Row{e.metric, e.mean, e.ci_lo, e.ci_hi, e.unit,
                       static_cast<std::uint64_t>(e.sample_count)});
    lines.push_back(e.metric + ": mean " + fmt(e.mean) + ", ci [" + fmt(e.ci_lo) + ", " +
                    fmt(e.ci_hi) + "] " + e.unit);
  }
  write_file(cfg.out_dir, "headline.csv",
             emit_table({"metric", "mean", "ci_lo", "ci_hi", "unit", "samples"}, rows));
  lines.insert(lines.begin(), "headline.csv: " + std::to_string(rows.size()) + " metrics");
  return lines;
}

std::vector<std::string> run_simulate(const RunConfig& cfg) {
  const ScenarioFile& s = cfg.scenario;
  const ModelConfig* model = find_kind(s, ModelKind::api);
  if (model == nullptr) model = find_kind(s, ModelKind::open_source);
  if (model == nullptr) throw DomainError("simulate: scenario needs a model option");

  const ParamDraw mid = midpoint(s.ranges);
  std::string out;
  double total_mean = 0.0;
  double detections_mean = 0.0;
  for (std::size_t k = 0; k < s.samples; ++k) {
    const SimResult r =
        simulate_campaign(static_cast<std::uint64_t>(s.campaign_n), mid, *model, s.seed + k);
    nlohmann::json rec;
    rec["seed"] = r.seed;
    rec["raw_outputs"] = r.raw_outputs;
    rec["usable_outputs"] = r.usable_outputs;
    rec["detections"] = r.detections;
    rec["labor_cost"] = r.labor_cost;
    rec["inference_cost"] = r.inference_cost;
    rec["penalty_cost"] = r.penalty_cost;
    rec["total_cost"] = r.total_cost;
    out += rec.dump();
    out += '\n';
    total_mean += r.total_cost;
    detections_mean += static_cast<double>(r.detections);
  }
  total_mean /= static_cast<double>(s.samples);
  detections_mean /= static_cast<double>(s.samples);
  write_file(cfg.out_dir, "simulate.jsonl", out);
  return {"simulate.jsonl: " + std::to_string(s.samples) + " runs of option '" + model->name +
          "', mean detections " + fmt(detections_mean) + ", mean total " + fmt_usd(total_mean)};
}

std::vector<std::string> run_reproduce(const RunConfig& cfg, bool* all_passed) {
  const ScenarioFile& s = cfg.scenario;
  const SampleSet set = sample(s.ranges, s.samples, s.seed);
  std::vector<std::string> lines;

  // figure 1b: break-even threshold distribution
  const std::vector<HistogramBin> hist = threshold_histogram(set, 50);
  std::vector<Row> rows;
  for (const HistogramBin& b : hist) rows.push_back(Row{b.lo, b.hi, b.count});
  write_file(cfg.out_dir, "figure1b.csv", emit_table({"bin_lo", "bin_hi", "count"}, rows));
  lines.push_back("figure1b.csv: 50 bins");

  // figure 2: cumulative savings surface
  const std::vector<double> p_grid =
      grid_or(s, "p", GridSpec{0.05, 1.0, 20, false}).points();
  const std::vector<double> n_grid =
      grid_or(s, "n", GridSpec{0.0, static_cast<double>(s.campaign_n), 21, false}).points();
  const auto surface = cumulative_savings_surface(p_grid, n_grid, set);
  rows.clear();
  for (std::size_t i = 0; i < p_grid.size(); ++i) {
    for (std::size_t j = 0; j < n_grid.size(); ++j) {
      rows.push_back(Row{p_grid[i], n_grid[j], surface[i][j]});
    }
  }
  write_file(cfg.out_dir, "figure2.csv", emit_table({"p", "n", "savings_mean"}, rows));
  lines.push_back("figure2.csv: " + std::to_string(rows.size()) + " cells");

  // figure 3: monitoring cost phases
  const std::vector<double> phase_p = {0.3, 0.5, 0.7, 0.9};
  const std::vector<double> lambda_grid =
      grid_or(s, "lambda", GridSpec{1e-5, 1.0, 25, true}).points();
  const std::vector<PhaseCell> phases = detection_phase_grid(
      set, phase_p, lambda_grid, static_cast<double>(s.campaign_n), cfg.threads);
  rows.clear();
  for (const PhaseCell& c : phases) {
    rows.push_back(Row{c.p, c.lambda, c.imposed_mean, c.imposed_q25, c.imposed_q75,
                       c.imposed_poisson_mean});
  }
  write_file(cfg.out_dir, "figure3.csv",
             emit_table({"p", "lambda", "imposed_mean", "imposed_q25", "imposed_q75",
                         "imposed_poisson_mean"},
                        rows));
  lines.push_back("figure3.csv: " + std::to_string(rows.size()) + " cells");

  // figure 4 + figure 5 + headline reuse the dedicated writers
  for (std::string& line : run_strategy_map(cfg)) lines.push_back(std::move(line));
  for (std::string& line : run_sensitivity(cfg)) lines.push_back(std::move(line));
  for (std::string& line : run_headline(cfg)) lines.push_back(std::move(line));

  // comparison against the published estimates
  const std::vector<BenchmarkRow> checks = benchmark_table(set, s.headline);
  rows.clear();
  bool ok = true;
  for (const BenchmarkRow& c : checks) {
    rows.push_back(Row{c.name, c.value, c.lo, c.hi, std::string(c.pass ? "pass" : "FAIL")});
    lines.push_back((c.pass ? "pass  " : "FAIL  ") + c.name + " = " + fmt(c.value) +
                    "  (band [" + fmt(c.lo) + ", " + fmt(c.hi) + "])");
    ok = ok && c.pass;
  }
  write_file(cfg.out_dir, "paper_comparison.csv",
             emit_table({"check", "value", "band_lo", "band_hi", "status"}, rows));
  if (all_passed != nullptr) *all_passed = ok;
  return lines;
}

}  // namespace opcost
