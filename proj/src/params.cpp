#include "opcost/params.hpp"

#include <cmath>
#include <string>

#include "opcost/errors.hpp"
#include "opcost/rng.hpp"

namespace opcost {

namespace {

void check_range(double lo, double hi, const char* name) {
  if (!(std::isfinite(lo) && std::isfinite(hi))) {
    throw DomainError(std::string(name) + ": bounds must be finite");
  }
  if (!(lo > 0.0)) throw DomainError(std::string(name) + ": lower bound must be > 0");
  if (!(lo <= hi)) throw DomainError(std::string(name) + ": lower bound exceeds upper");
}

}  // namespace

void ParamRanges::validate() const {
  check_range(review_speedup_lo, review_speedup_hi, "review_speedup");
  check_range(wage_lo, wage_hi, "wage");
  check_range(productivity_lo, productivity_hi, "productivity");
  check_range(inference_cost_lo, inference_cost_hi, "inference_cost");
  check_range(penalty_mult_lo, penalty_mult_hi, "penalty_mult");
}

void ParamDraw::validate() const {
  if (!(review_speedup > 0.0 && wage > 0.0 && productivity > 0.0 &&
        inference_cost > 0.0 && penalty > 0.0)) {
    throw DomainError("ParamDraw: all fields must be strictly positive");
  }
}

ParamRanges default_ranges() { return ParamRanges{}; }

ParamDraw midpoint(const ParamRanges& ranges) {
  ranges.validate();
  ParamDraw d;
  d.review_speedup = 0.5 * (ranges.review_speedup_lo + ranges.review_speedup_hi);
  d.wage = 0.5 * (ranges.wage_lo + ranges.wage_hi);
  d.productivity = 0.5 * (ranges.productivity_lo + ranges.productivity_hi);
  d.inference_cost = 0.5 * (ranges.inference_cost_lo + ranges.inference_cost_hi);
  d.penalty = 0.5 * (ranges.penalty_mult_lo + ranges.penalty_mult_hi) * d.wage;
  return d;
}

SampleSet sample(const ParamRanges& ranges, std::size_t count, std::uint64_t seed) {
  ranges.validate();
  if (count == 0) throw DomainError("sample: count must be >= 1");

  const std::uint64_t s_alpha = derive_stream(seed, 0);
  const std::uint64_t s_wage = derive_stream(seed, 1);
  const std::uint64_t s_prod = derive_stream(seed, 2);
  const std::uint64_t s_ic = derive_stream(seed, 3);
  const std::uint64_t s_mult = derive_stream(seed, 4);

  SampleSet set;
  set.seed = seed;
  set.draws.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    ParamDraw& d = set.draws[i];
    d.review_speedup = ranges.review_speedup_lo +
                       (ranges.review_speedup_hi - ranges.review_speedup_lo) * u01_at(s_alpha, i);
    d.wage = ranges.wage_lo + (ranges.wage_hi - ranges.wage_lo) * u01_at(s_wage, i);
    d.productivity = ranges.productivity_lo +
                     (ranges.productivity_hi - ranges.productivity_lo) * u01_at(s_prod, i);
    d.inference_cost = ranges.inference_cost_lo +
                       (ranges.inference_cost_hi - ranges.inference_cost_lo) * u01_at(s_ic, i);
    const double mult = ranges.penalty_mult_lo +
                        (ranges.penalty_mult_hi - ranges.penalty_mult_lo) * u01_at(s_mult, i);
    d.penalty = mult * d.wage;
  }
  return set;
}

double inference_cost_per_output(double token_price, double tokens_per_output) {
  if (!(token_price > 0.0) || !(tokens_per_output > 0.0)) {
    throw DomainError("inference_cost_per_output: inputs must be strictly positive");
  }
  return token_price * tokens_per_output;
}

}  // namespace opcost
