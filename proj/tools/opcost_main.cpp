// Command-line driver: wires scenario files to the cost engines and emits
// the plot-ready CSV datasets.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "opcost/driver.hpp"
#include "opcost/errors.hpp"
#include "opcost/parallel.hpp"

namespace {

struct CommonArgs {
  std::string scenario_path;
  std::string out_dir = "out";
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples;
  unsigned threads = opcost::default_thread_count();
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--scenario", args.scenario_path, "Scenario JSON file (built-in study if omitted)");
  cmd->add_option("--out", args.out_dir, "Output directory")->capture_default_str();
  cmd->add_option("--seed", args.seed, "Override the scenario seed");
  cmd->add_option("--samples", args.samples, "Override the scenario sample count");
  cmd->add_option("--threads", args.threads, "Worker threads (affects speed only, never results)")
      ->capture_default_str();
}

opcost::RunConfig make_run_config(const CommonArgs& args) {
  opcost::RunConfig cfg;
  cfg.scenario =
      args.scenario_path.empty() ? opcost::default_scenario()
                                 : opcost::load_scenario_file(args.scenario_path);
  if (args.seed.has_value()) {
    cfg.scenario.seed = *args.seed;
  } else if (const char* env = std::getenv("OPCOST_SEED")) {
    cfg.scenario.seed = std::strtoull(env, nullptr, 10);
  }
  if (args.samples.has_value()) cfg.scenario.samples = *args.samples;
  cfg.out_dir = args.out_dir;
  cfg.threads = args.threads == 0 ? 1 : args.threads;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo cost model for large-scale content-generation campaigns"};
  app.require_subcommand(1);

  struct Sub {
    const char* name;
    const char* help;
    std::vector<std::string> (*fn)(const opcost::RunConfig&);
  };
  const Sub subs[] = {
      {"sample", "Draw the parameter sample set and write samples.csv", &opcost::run_sample},
      {"evaluate", "Cost every option in the scenario and pick the cheapest", &opcost::run_evaluate},
      {"thresholds", "Break-even performance, deterrent rates, and viable scales",
       &opcost::run_thresholds},
      {"strategy-map", "Optimal-strategy and cost-imposition grid over (p1, p2)",
       &opcost::run_strategy_map},
      {"sensitivity", "One-at-a-time parameter sensitivity quartiles", &opcost::run_sensitivity},
      {"headline", "Monte Carlo summaries of the six headline metrics", &opcost::run_headline},
      {"simulate", "Event-level campaign simulation, one JSON record per seed",
       &opcost::run_simulate},
  };

  CommonArgs args;
  for (const Sub& sub : subs) {
    CLI::App* cmd = app.add_subcommand(sub.name, sub.help);
    add_common(cmd, args);
    cmd->callback([&args, fn = sub.fn]() {
      for (const std::string& line : fn(make_run_config(args))) std::cout << line << "\n";
    });
  }

  bool reproduce_ok = true;
  CLI::App* reproduce = app.add_subcommand(
      "reproduce-paper", "Run every figure dataset plus the published-estimate comparison");
  add_common(reproduce, args);
  reproduce->callback([&]() {
    for (const std::string& line : opcost::run_reproduce(make_run_config(args), &reproduce_ok)) {
      std::cout << line << "\n";
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const opcost::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const opcost::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  if (!reproduce_ok) {
    std::cerr << "reproduce-paper: some comparisons fell outside their bands\n";
    return 1;
  }
  return 0;
}
