#include <doctest.h>

#include <cmath>
#include <vector>

#include "opcost/costs.hpp"
#include "opcost/errors.hpp"
#include "opcost/params.hpp"

using namespace opcost;

namespace {

ParamDraw mid() { return midpoint(default_ranges()); }

ModelConfig api_option(double p, double lambda, double surcharge = 0.0, double fc = 0.0) {
  ModelConfig m;
  m.name = "api";
  m.kind = ModelKind::api;
  m.p = p;
  m.lambda = lambda;
  m.penalty_surcharge = surcharge;
  m.fixed_cost = fc;
  return m;
}

ModelConfig open_option(double p, double fc) {
  ModelConfig m;
  m.name = "open";
  m.kind = ModelKind::open_source;
  m.p = p;
  m.fixed_cost = fc;
  return m;
}

ModelConfig manual_option() {
  ModelConfig m;
  m.name = "manual";
  m.kind = ModelKind::manual;
  return m;
}

}  // namespace

TEST_CASE("manual marginal cost") {
  CHECK(manual_marginal_cost(mid()) == doctest::Approx(0.36467).epsilon(1e-4));
  ParamDraw d = mid();
  d.wage = 4.0;
  d.productivity = 4.0;
  CHECK(manual_marginal_cost(d) == 1.0);
}

TEST_CASE("team marginal cost") {
  CHECK(team_marginal_cost(mid(), 0.75) == doctest::Approx(0.09744).epsilon(1e-4));
  CHECK(team_marginal_cost(mid(), 0.25) == doctest::Approx(0.29231).epsilon(1e-4));
  ParamDraw d = mid();
  d.review_speedup = 1.0;
  d.inference_cost = 1e-300;  // strictly positive but negligible
  CHECK(team_marginal_cost(d, 1.0) == doctest::Approx(manual_marginal_cost(d)));
  CHECK_THROWS_AS(team_marginal_cost(mid(), 0.0), DomainError);
  CHECK_THROWS_AS(team_marginal_cost(mid(), 1.5), DomainError);
}

TEST_CASE("is_team_cheaper matches the alpha > 1/p shortcut when IC vanishes") {
  CHECK(is_team_cheaper(mid(), 0.25));
  CHECK_FALSE(is_team_cheaper(mid(), 0.15));
  const SampleSet set = sample(default_ranges(), 2000, 3);
  for (std::size_t i = 0; i < set.count(); ++i) {
    ParamDraw d = set.draws[i];
    d.inference_cost = 1e-300;
    const double p = 0.05 + 0.9 * (static_cast<double>(i) / 2000.0);
    CHECK(is_team_cheaper(d, p) == (d.review_speedup > 1.0 / p));
  }
}

TEST_CASE("automation payback") {
  CHECK(automation_payback_outputs(mid(), 1000.0) == doctest::Approx(2838.0).epsilon(5e-4));
  CHECK(automation_payback_outputs(mid(), 0.0) == 0.0);
  ParamDraw d = mid();
  d.wage = 0.44;
  d.productivity = 1.0;
  d.inference_cost = 0.01;
  CHECK(automation_payback_outputs(d, 1.0) == doctest::Approx(2.33).epsilon(0.01));
  d.inference_cost = 0.5;  // above w/L: never pays back
  CHECK_THROWS_AS(automation_payback_outputs(d, 1.0), DomainError);
}

TEST_CASE("expected detections") {
  CHECK(expected_detections(1e6, 0.8, 0.001) == doctest::Approx(1250.0));
  CHECK(expected_detections(5e6, 0.33, 0.0) == 0.0);
  CHECK(expected_detections(1e7, 0.75, 0.0005) == doctest::Approx(6666.7).epsilon(2e-5));
  CHECK_THROWS_AS(expected_detections(1e6, 1.0001, 0.001), DomainError);
}

TEST_CASE("expected campaign cost per option") {
  const ParamDraw d = mid();
  const OptionCost api = campaign_cost_expected(1e6, d, api_option(0.85, 0.001));
  CHECK(std::fabs(api.total - 94018.0) < 5.0);
  const OptionCost open = campaign_cost_expected(1e6, d, open_option(0.85, 600.0));
  CHECK(std::fabs(open.total - 86574.0) < 5.0);
  const OptionCost man = campaign_cost_expected(1e6, d, manual_option());
  CHECK(std::fabs(man.total - 364670.0) < 5.0);

  // component additivity
  for (const OptionCost& oc : {api, open, man}) {
    CHECK(oc.total ==
          doctest::Approx(oc.labor + oc.inference + oc.expected_penalties + oc.fixed));
  }
  CHECK(open.fixed == 600.0);
  CHECK(man.inference == 0.0);
  CHECK(man.expected_penalties == 0.0);
}

TEST_CASE("realized cost equals expected cost when lambda is zero") {
  const RealizedCost r = campaign_cost_realized(1e6, mid(), api_option(0.85, 0.0), 99);
  CHECK(r.detections == 0);
  CHECK(r.cost == doctest::Approx(campaign_cost_expected(1e6, mid(), api_option(0.85, 0.0)).total));
}

TEST_CASE("realized cost is deterministic and agrees with expectation in the mean") {
  const ParamDraw d = mid();
  const ModelConfig m = api_option(0.85, 0.001);
  const RealizedCost once = campaign_cost_realized(1e6, d, m, 4);
  const RealizedCost again = campaign_cost_realized(1e6, d, m, 4);
  CHECK(once.detections == again.detections);
  CHECK(once.cost == again.cost);

  const std::size_t seeds = 10000;
  double det_sum = 0.0, cost_sum = 0.0;
  for (std::size_t s = 0; s < seeds; ++s) {
    const RealizedCost r = campaign_cost_realized(1e6, d, m, s);
    det_sum += static_cast<double>(r.detections);
    cost_sum += r.cost;
  }
  const double det_mean = det_sum / static_cast<double>(seeds);
  const double expected_det = 0.001 * 1e6 / 0.85;  // 1176.47
  const double se_det = std::sqrt(expected_det) / std::sqrt(static_cast<double>(seeds));
  CHECK(std::fabs(det_mean - expected_det) < 3.0 * se_det);

  const double expected_cost = campaign_cost_expected(1e6, d, m).total;
  const double se_cost = d.penalty * se_det;
  CHECK(std::fabs(cost_sum / static_cast<double>(seeds) - expected_cost) < 3.0 * se_cost);
}

TEST_CASE("total cost picks the cheapest option with stable tie-breaks") {
  const std::vector<ModelConfig> options = {manual_option(), api_option(0.85, 0.001),
                                            open_option(0.85, 600.0)};
  CampaignSpec big{1'000'000, options};
  CHECK(total_cost(big, mid()).chosen_option().name == "open");
  CampaignSpec small{10'000, options};
  CHECK(total_cost(small, mid()).chosen_option().name == "api");
  CampaignSpec only_manual{1000, {manual_option()}};
  CHECK(total_cost(only_manual, mid()).chosen_option().kind == ModelKind::manual);

  // exact tie between kinds: same parameters, api outranks open_source
  ModelConfig open_twin = open_option(0.85, 0.0);
  CampaignSpec cross_tied{1000, {open_twin, api_option(0.85, 0.0)}};
  const CostBreakdown cross = total_cost(cross_tied, mid());
  CHECK(cross.options[0].total == cross.options[1].total);
  CHECK(cross.chosen_option().kind == ModelKind::api);

  // exact tie within a kind: listing order wins
  ModelConfig first = api_option(0.85, 0.001);
  ModelConfig second = api_option(0.85, 0.001);
  first.name = "first";
  second.name = "second";
  CampaignSpec listed{1000, {first, second}};
  CHECK(total_cost(listed, mid()).chosen_option().name == "first");
}

TEST_CASE("total cost validates the campaign") {
  CHECK_THROWS_AS(total_cost(CampaignSpec{0, {manual_option()}}, mid()), DomainError);
  CHECK_THROWS_AS(total_cost(CampaignSpec{10, {}}, mid()), DomainError);
  ModelConfig bad_open = open_option(0.5, 0.0);
  bad_open.lambda = 0.01;  // monitored open-source model is contradictory
  CHECK_THROWS_AS(total_cost(CampaignSpec{10, {bad_open}}, mid()), DomainError);
}

TEST_CASE("per-output savings") {
  CHECK(per_output_savings(mid(), 0.75) == doctest::Approx(0.26723).epsilon(1e-4));
  // negative savings are representable
  ParamDraw d = mid();
  d.review_speedup = 2.0;
  CHECK(per_output_savings(d, 0.1) < 0.0);
}

TEST_CASE("monotonicity of the team cost") {
  const SampleSet set = sample(default_ranges(), 500, 8);
  for (const ParamDraw& d : set.draws) {
    CHECK(team_marginal_cost(d, 0.6) < team_marginal_cost(d, 0.5));
    CHECK(per_output_savings(d, 0.6) > per_output_savings(d, 0.5));
    ParamDraw faster = d;
    faster.review_speedup *= 1.1;
    CHECK(team_marginal_cost(faster, 0.5) < team_marginal_cost(d, 0.5));
    ParamDraw pricier = d;
    pricier.inference_cost *= 2.0;
    CHECK(team_marginal_cost(pricier, 0.5) > team_marginal_cost(d, 0.5));
  }
}

TEST_CASE("single api option at lambda 0 reduces to the team marginal cost") {
  const SampleSet set = sample(default_ranges(), 200, 12);
  for (const ParamDraw& d : set.draws) {
    CampaignSpec spec{250'000, {api_option(0.6, 0.0)}};
    const double total = total_cost(spec, d).chosen_option().total;
    CHECK(total == doctest::Approx(250'000.0 * team_marginal_cost(d, 0.6)).epsilon(1e-12));
  }
}

TEST_CASE("cumulative savings surface") {
  const SampleSet set = sample(default_ranges(), 10000, 0);
  const std::vector<double> p_grid = {0.25, 0.5, 0.75, 1.0};
  const std::vector<double> n_grid = {0.0, 1e6, 1e7};
  const auto surface = cumulative_savings_surface(p_grid, n_grid, set);
  REQUIRE(surface.size() == 4);
  REQUIRE(surface[0].size() == 3);
  for (std::size_t i = 0; i < p_grid.size(); ++i) {
    CHECK(surface[i][0] == 0.0);  // n = 0 row
    // p = 1 column dominates
    CHECK(surface[3][2] >= surface[i][2]);
  }
  CHECK(surface[2][2] == doctest::Approx(3.0e6).epsilon(0.15));
}

TEST_CASE("monitoring bill phases at the midpoint parameters") {
  const ParamDraw d = mid();
  const double n = 1e7;
  for (double p : {0.5, 0.7, 0.9}) {
    const double cap = n * (manual_marginal_cost(d) - team_marginal_cost(d, p));
    REQUIRE(cap > 0.0);
    const double low = std::min(d.penalty * 1e-4 * n / p, cap);
    CHECK(low / cap < 0.01);
    CHECK(std::min(d.penalty * 0.1 * n / p, cap) == cap);
  }
  // at p = 0.3 the detection bill starts from a higher floor
  const double cap = n * (manual_marginal_cost(d) - team_marginal_cost(d, 0.3));
  CHECK(std::min(d.penalty * 1e-4 * n / 0.3, cap) / cap < 0.05);
  CHECK(std::min(d.penalty * 0.1 * n / 0.3, cap) == cap);
}
