#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace opcost {

/// Uniform sampling bounds for the five uncertain campaign parameters.
/// The penalty is stored as a wage multiplier: a draw's penalty in USD is
/// multiplier * wage, so penalty stays coupled to the same draw's wage.
struct ParamRanges {
  double review_speedup_lo = 2.0;  ///< alpha: review speedup vs writing
  double review_speedup_hi = 10.0;
  double wage_lo = 1.41;  ///< w: USD per hour
  double wage_hi = 9.53;
  double productivity_lo = 5.0;  ///< L: manually written outputs per hour
  double productivity_hi = 25.0;
  double inference_cost_lo = 0.0006;  ///< IC: USD per generated output
  double inference_cost_hi = 0.024;
  double penalty_mult_lo = 0.5;  ///< P/w: hours of wage burned per detection
  double penalty_mult_hi = 2.0;

  void validate() const;
};

/// One joint sample of the uncertain parameters. penalty is in USD per
/// detection (already multiplied by this draw's wage).
struct ParamDraw {
  double review_speedup = 0.0;
  double wage = 0.0;
  double productivity = 0.0;
  double inference_cost = 0.0;
  double penalty = 0.0;

  void validate() const;
};

struct SampleSet {
  std::vector<ParamDraw> draws;
  std::uint64_t seed = 0;

  std::size_t count() const { return draws.size(); }
};

ParamRanges default_ranges();

/// Deterministic midpoint draw: each field at the arithmetic midpoint of its
/// range, penalty = midpoint multiplier * midpoint wage.
ParamDraw midpoint(const ParamRanges& ranges);

/// Draw `count` independent joint samples. Draw i is a pure function of
/// (ranges, seed, i): field f of draw i uses u01_at(derive_stream(seed, f), i)
/// with f in {0: review_speedup, 1: wage, 2: productivity, 3: inference_cost,
/// 4: penalty multiplier}. Identical inputs give bitwise-identical output on
/// any platform and thread count.
SampleSet sample(const ParamRanges& ranges, std::size_t count, std::uint64_t seed);

/// Marginal inference cost of one output at a given token price.
double inference_cost_per_output(double token_price, double tokens_per_output);

}  // namespace opcost
