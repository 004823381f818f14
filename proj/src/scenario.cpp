#include "opcost/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "opcost/errors.hpp"

namespace opcost {

using nlohmann::json;

std::vector<double> GridSpec::points() const {
  if (count == 0) throw DomainError("GridSpec: count must be >= 1");
  if (count == 1) return {lo};
  std::vector<double> out(count);
  if (log_scale) {
    if (!(lo > 0.0 && hi > 0.0)) throw DomainError("GridSpec: log grid needs positive bounds");
    const double ratio = std::log(hi / lo);
    for (std::size_t i = 0; i < count; ++i) {
      out[i] = lo * std::exp(ratio * static_cast<double>(i) / static_cast<double>(count - 1));
    }
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    }
  }
  return out;
}

void ScenarioFile::validate() const {
  if (schema != 1) throw ValidationError("schema: unsupported version");
  try {
    ranges.validate();
  } catch (const DomainError& e) {
    throw ValidationError(std::string("ranges: ") + e.what());
  }
  if (campaign_n < 1) throw ValidationError("campaign_n: must be >= 1");
  if (samples < 1) throw ValidationError("samples: must be >= 1");
  if (options.empty()) throw ValidationError("options: at least one option required");
  std::set<std::string> names;
  for (std::size_t i = 0; i < options.size(); ++i) {
    try {
      options[i].validate();
    } catch (const DomainError& e) {
      throw ValidationError("options[" + std::to_string(i) + "]: " + e.what());
    }
    if (!names.insert(options[i].name).second) {
      throw ValidationError("options[" + std::to_string(i) + "]: duplicate name '" +
                            options[i].name + "'");
    }
  }
  static const std::set<std::string> known_grids = {"p", "p1", "p2", "lambda", "n"};
  for (const auto& [key, spec] : grids) {
    if (!known_grids.contains(key)) throw ValidationError("grids." + key + ": unknown grid");
    if (spec.count < 1) throw ValidationError("grids." + key + ".count: must be >= 1");
    if (!(spec.lo <= spec.hi)) throw ValidationError("grids." + key + ": lo exceeds hi");
  }
  for (const std::string& id : metrics) {
    try {
      metric_from_id(id);
    } catch (const DomainError& e) {
      throw ValidationError(std::string("metrics: ") + e.what());
    }
  }
}

bool operator==(const ParamRanges& a, const ParamRanges& b) {
  return a.review_speedup_lo == b.review_speedup_lo &&
         a.review_speedup_hi == b.review_speedup_hi && a.wage_lo == b.wage_lo &&
         a.wage_hi == b.wage_hi && a.productivity_lo == b.productivity_lo &&
         a.productivity_hi == b.productivity_hi && a.inference_cost_lo == b.inference_cost_lo &&
         a.inference_cost_hi == b.inference_cost_hi && a.penalty_mult_lo == b.penalty_mult_lo &&
         a.penalty_mult_hi == b.penalty_mult_hi;
}

bool operator==(const ModelConfig& a, const ModelConfig& b) {
  return a.name == b.name && a.kind == b.kind && a.p == b.p && a.lambda == b.lambda &&
         a.penalty_surcharge == b.penalty_surcharge && a.fixed_cost == b.fixed_cost;
}

bool operator==(const ScenarioFile& a, const ScenarioFile& b) {
  return a.schema == b.schema && a.ranges == b.ranges && a.options == b.options &&
         a.campaign_n == b.campaign_n && a.samples == b.samples && a.seed == b.seed &&
         a.grids == b.grids && a.metrics == b.metrics && a.headline == b.headline;
}

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ValidationError(path + ": " + what);
}

void check_keys(const json& obj, const std::string& path, const std::set<std::string>& allowed) {
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.contains(key)) fail(path.empty() ? key : path + "." + key, "unknown key");
  }
}

double get_number(const json& obj, const std::string& path, const std::string& key,
                  double fallback, bool required = false) {
  if (!obj.contains(key)) {
    if (required) fail(path + key, "missing required key");
    return fallback;
  }
  const json& v = obj.at(key);
  if (!v.is_number()) fail(path + key, "expected a number");
  return v.get<double>();
}

void parse_range_pair(const json& obj, const std::string& key, const std::string& path,
                      double& lo, double& hi) {
  const json& v = obj.at(key);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    fail(path + key, "expected [lo, hi]");
  }
  lo = v[0].get<double>();
  hi = v[1].get<double>();
}

ParamRanges parse_ranges(const json& obj) {
  check_keys(obj, "ranges",
             {"alpha", "wage", "productivity", "inference_cost", "penalty_multiplier"});
  ParamRanges r;  // defaults, overridden per key
  if (obj.contains("alpha")) {
    parse_range_pair(obj, "alpha", "ranges.", r.review_speedup_lo, r.review_speedup_hi);
  }
  if (obj.contains("wage")) parse_range_pair(obj, "wage", "ranges.", r.wage_lo, r.wage_hi);
  if (obj.contains("productivity")) {
    parse_range_pair(obj, "productivity", "ranges.", r.productivity_lo, r.productivity_hi);
  }
  if (obj.contains("inference_cost")) {
    parse_range_pair(obj, "inference_cost", "ranges.", r.inference_cost_lo, r.inference_cost_hi);
  }
  if (obj.contains("penalty_multiplier")) {
    parse_range_pair(obj, "penalty_multiplier", "ranges.", r.penalty_mult_lo, r.penalty_mult_hi);
  }
  return r;
}

ModelConfig parse_option(const json& obj, const std::string& path) {
  check_keys(obj, path, {"name", "kind", "p", "lambda", "penalty_surcharge", "fixed_cost"});
  ModelConfig m;
  if (!obj.contains("name") || !obj.at("name").is_string()) {
    fail(path + ".name", "required string");
  }
  m.name = obj.at("name").get<std::string>();
  if (!obj.contains("kind") || !obj.at("kind").is_string()) {
    fail(path + ".kind", "required string");
  }
  const std::string kind = obj.at("kind").get<std::string>();
  if (kind == "manual") {
    m.kind = ModelKind::manual;
  } else if (kind == "api") {
    m.kind = ModelKind::api;
  } else if (kind == "open_source") {
    m.kind = ModelKind::open_source;
  } else {
    fail(path + ".kind", "must be manual, api, or open_source");
  }
  if (m.kind == ModelKind::manual) return m;  // p/lambda/costs ignored, kept canonical
  m.p = get_number(obj, path + ".", "p", m.p);
  m.lambda = get_number(obj, path + ".", "lambda", m.lambda);
  m.penalty_surcharge = get_number(obj, path + ".", "penalty_surcharge", m.penalty_surcharge);
  m.fixed_cost = get_number(obj, path + ".", "fixed_cost", m.fixed_cost);
  return m;
}

GridSpec parse_grid(const json& obj, const std::string& path) {
  check_keys(obj, path, {"lo", "hi", "count", "log"});
  GridSpec g;
  g.lo = get_number(obj, path + ".", "lo", 0.0, true);
  g.hi = get_number(obj, path + ".", "hi", 0.0, true);
  if (!obj.contains("count") || !obj.at("count").is_number_unsigned()) {
    fail(path + ".count", "required non-negative integer");
  }
  g.count = obj.at("count").get<std::size_t>();
  if (obj.contains("log")) {
    if (!obj.at("log").is_boolean()) fail(path + ".log", "expected a boolean");
    g.log_scale = obj.at("log").get<bool>();
  }
  return g;
}

HeadlineConfig parse_headline(const json& obj) {
  check_keys(obj, "headline",
             {"team_p", "open_p", "open_fixed_cost", "campaign_n", "finetune_p", "finetune_cost",
              "finetune_lambda", "train_p", "train_cost", "tier_basic_p", "tier_premium_p",
              "tier_premium_surcharge"});
  HeadlineConfig h;
  h.team_p = get_number(obj, "headline.", "team_p", h.team_p);
  h.open_p = get_number(obj, "headline.", "open_p", h.open_p);
  h.open_fixed_cost = get_number(obj, "headline.", "open_fixed_cost", h.open_fixed_cost);
  h.campaign_n = get_number(obj, "headline.", "campaign_n", h.campaign_n);
  h.finetune_p = get_number(obj, "headline.", "finetune_p", h.finetune_p);
  h.finetune_cost = get_number(obj, "headline.", "finetune_cost", h.finetune_cost);
  h.finetune_lambda = get_number(obj, "headline.", "finetune_lambda", h.finetune_lambda);
  h.train_p = get_number(obj, "headline.", "train_p", h.train_p);
  h.train_cost = get_number(obj, "headline.", "train_cost", h.train_cost);
  h.tier_basic_p = get_number(obj, "headline.", "tier_basic_p", h.tier_basic_p);
  h.tier_premium_p = get_number(obj, "headline.", "tier_premium_p", h.tier_premium_p);
  h.tier_premium_surcharge =
      get_number(obj, "headline.", "tier_premium_surcharge", h.tier_premium_surcharge);
  return h;
}

}  // namespace

ScenarioFile parse_scenario(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("syntax error: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("document root must be an object");
  check_keys(doc, "",
             {"schema", "ranges", "options", "campaign_n", "samples", "seed", "grids", "metrics",
              "headline"});

  ScenarioFile s;
  if (!doc.contains("schema") || !doc.at("schema").is_number_integer()) {
    throw ValidationError("schema: required integer field");
  }
  s.schema = doc.at("schema").get<int>();
  if (doc.contains("ranges")) {
    if (!doc.at("ranges").is_object()) throw ValidationError("ranges: expected an object");
    s.ranges = parse_ranges(doc.at("ranges"));
  }
  if (!doc.contains("options") || !doc.at("options").is_array()) {
    throw ValidationError("options: required array");
  }
  for (std::size_t i = 0; i < doc.at("options").size(); ++i) {
    const json& o = doc.at("options")[i];
    const std::string path = "options[" + std::to_string(i) + "]";
    if (!o.is_object()) fail(path, "expected an object");
    s.options.push_back(parse_option(o, path));
  }
  if (!doc.contains("campaign_n") || !doc.at("campaign_n").is_number_integer()) {
    throw ValidationError("campaign_n: required integer field");
  }
  s.campaign_n = doc.at("campaign_n").get<std::int64_t>();
  if (doc.contains("samples")) {
    if (!doc.at("samples").is_number_unsigned()) {
      throw ValidationError("samples: expected a non-negative integer");
    }
    s.samples = doc.at("samples").get<std::size_t>();
  }
  if (doc.contains("seed")) {
    if (!doc.at("seed").is_number_unsigned()) {
      throw ValidationError("seed: expected a non-negative integer");
    }
    s.seed = doc.at("seed").get<std::uint64_t>();
  }
  if (doc.contains("grids")) {
    const json& grids = doc.at("grids");
    if (!grids.is_object()) throw ValidationError("grids: expected an object");
    for (const auto& [key, val] : grids.items()) {
      if (!val.is_object()) fail("grids." + key, "expected an object");
      s.grids[key] = parse_grid(val, "grids." + key);
    }
  }
  if (doc.contains("metrics")) {
    const json& metrics = doc.at("metrics");
    if (!metrics.is_array()) throw ValidationError("metrics: expected an array");
    for (const json& v : metrics) {
      if (!v.is_string()) throw ValidationError("metrics: entries must be strings");
      s.metrics.push_back(v.get<std::string>());
    }
  }
  if (doc.contains("headline")) {
    if (!doc.at("headline").is_object()) throw ValidationError("headline: expected an object");
    s.headline = parse_headline(doc.at("headline"));
  }
  s.validate();
  return s;
}

std::string serialize_scenario(const ScenarioFile& s) {
  json doc;
  doc["schema"] = s.schema;
  doc["ranges"] = {
      {"alpha", {s.ranges.review_speedup_lo, s.ranges.review_speedup_hi}},
      {"wage", {s.ranges.wage_lo, s.ranges.wage_hi}},
      {"productivity", {s.ranges.productivity_lo, s.ranges.productivity_hi}},
      {"inference_cost", {s.ranges.inference_cost_lo, s.ranges.inference_cost_hi}},
      {"penalty_multiplier", {s.ranges.penalty_mult_lo, s.ranges.penalty_mult_hi}},
  };
  doc["options"] = json::array();
  for (const ModelConfig& m : s.options) {
    json o;
    o["name"] = m.name;
    o["kind"] = to_string(m.kind);
    if (m.kind != ModelKind::manual) {
      o["p"] = m.p;
      o["lambda"] = m.lambda;
      o["penalty_surcharge"] = m.penalty_surcharge;
      o["fixed_cost"] = m.fixed_cost;
    }
    doc["options"].push_back(o);
  }
  doc["campaign_n"] = s.campaign_n;
  doc["samples"] = s.samples;
  doc["seed"] = s.seed;
  if (!s.grids.empty()) {
    json grids;
    for (const auto& [key, g] : s.grids) {
      grids[key] = {{"lo", g.lo}, {"hi", g.hi}, {"count", g.count}, {"log", g.log_scale}};
    }
    doc["grids"] = grids;
  }
  if (!s.metrics.empty()) doc["metrics"] = s.metrics;
  doc["headline"] = {
      {"team_p", s.headline.team_p},
      {"open_p", s.headline.open_p},
      {"open_fixed_cost", s.headline.open_fixed_cost},
      {"campaign_n", s.headline.campaign_n},
      {"finetune_p", s.headline.finetune_p},
      {"finetune_cost", s.headline.finetune_cost},
      {"finetune_lambda", s.headline.finetune_lambda},
      {"train_p", s.headline.train_p},
      {"train_cost", s.headline.train_cost},
      {"tier_basic_p", s.headline.tier_basic_p},
      {"tier_premium_p", s.headline.tier_premium_p},
      {"tier_premium_surcharge", s.headline.tier_premium_surcharge},
  };
  return doc.dump(2) + "\n";
}

ScenarioFile load_scenario_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open scenario file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

}  // namespace opcost
