#include "opcost/rng.hpp"

#include <cmath>

#include "opcost/errors.hpp"

namespace opcost {

namespace {

std::uint64_t poisson_small(CounterRng& rng, double mean) {
  // Knuth-style inversion by sequential search, one uniform per draw.
  const double u = rng.u01();
  double p = std::exp(-mean);
  double cdf = p;
  std::uint64_t k = 0;
  while (u > cdf) {
    ++k;
    p *= mean / static_cast<double>(k);
    cdf += p;
    if (p < 1e-300) break;  // u in the far tail; cdf has saturated
  }
  return k;
}

std::uint64_t poisson_ptrs(CounterRng& rng, double mean) {
  // Hormann (1993), transformed rejection with squeeze ("PTRS").
  const double slam = std::sqrt(mean);
  const double loglam = std::log(mean);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);

  for (;;) {
    const double u = rng.u01() - 0.5;
    const double v = rng.u01();
    const double us = 0.5 - std::fabs(u);
    const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= v_r) {
      return static_cast<std::uint64_t>(kf);
    }
    if (kf < 0.0 || (us < 0.013 && v > us)) {
      continue;
    }
    if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
        kf * loglam - mean - std::lgamma(kf + 1.0)) {
      return static_cast<std::uint64_t>(kf);
    }
  }
}

}  // namespace

std::uint64_t poisson_draw(CounterRng& rng, double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) {
    throw DomainError("poisson_draw: mean must be finite and >= 0");
  }
  if (mean == 0.0) return 0;
  if (mean < 10.0) return poisson_small(rng, mean);
  return poisson_ptrs(rng, mean);
}

}  // namespace opcost
