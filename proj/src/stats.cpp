#include "opcost/stats.hpp"

#include <algorithm>
#include <cmath>

#include "opcost/errors.hpp"

namespace opcost {

double mean(std::span<const double> xs) {
  if (xs.empty()) throw DomainError("mean: empty input");
  double acc = 0.0;
  for (double x : xs) acc += x;
  return acc / static_cast<double>(xs.size());
}

double sample_stddev(std::span<const double> xs) {
  if (xs.size() < 2) throw DomainError("sample_stddev: need at least 2 values");
  const double mu = mean(xs);
  double acc = 0.0;
  for (double x : xs) acc += (x - mu) * (x - mu);
  return std::sqrt(acc / static_cast<double>(xs.size() - 1));
}

double percentile_inplace(std::vector<double>& xs, double q) {
  if (xs.empty()) throw DomainError("percentile: empty input");
  if (!(q >= 0.0 && q <= 100.0)) throw DomainError("percentile: q outside [0,100]");
  const std::size_t n = xs.size();
  const double pos = q / 100.0 * static_cast<double>(n - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  const double frac = pos - static_cast<double>(lo);
  auto it = xs.begin() + static_cast<std::ptrdiff_t>(lo);
  std::nth_element(xs.begin(), it, xs.end());
  const double v0 = *it;
  if (frac == 0.0 || lo + 1 >= n) return v0;
  // second order statistic: minimum of the remaining tail
  const double v1 = *std::min_element(it + 1, xs.end());
  return v0 + frac * (v1 - v0);
}

double percentile(std::span<const double> xs, double q) {
  std::vector<double> copy(xs.begin(), xs.end());
  return percentile_inplace(copy, q);
}

Quartiles quartiles(std::span<const double> xs) {
  std::vector<double> copy(xs.begin(), xs.end());
  std::sort(copy.begin(), copy.end());
  auto at = [&](double q) {
    const double pos = q / 100.0 * static_cast<double>(copy.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(lo);
    if (frac == 0.0 || lo + 1 >= copy.size()) return copy[lo];
    return copy[lo] + frac * (copy[lo + 1] - copy[lo]);
  };
  if (copy.empty()) throw DomainError("quartiles: empty input");
  return Quartiles{at(0), at(25), at(50), at(75), at(100)};
}

double ks_uniform_stat(std::vector<double> xs, double lo, double hi) {
  if (xs.empty()) throw DomainError("ks_uniform_stat: empty input");
  if (!(hi > lo)) throw DomainError("ks_uniform_stat: hi must exceed lo");
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = (xs[i] - lo) / (hi - lo);
    const double lo_step = static_cast<double>(i) / n;
    const double hi_step = static_cast<double>(i + 1) / n;
    d = std::max(d, std::max(std::fabs(f - lo_step), std::fabs(hi_step - f)));
  }
  return d;
}

double ks_critical(double alpha, std::size_t n) {
  return std::sqrt(-0.5 * std::log(alpha / 2.0)) / std::sqrt(static_cast<double>(n));
}

namespace {

// Series representation of P(a, x), valid for x < a + 1.
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int i = 0; i < 500; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * 1e-15) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued-fraction representation of Q(a, x), valid for x >= a + 1.
double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-15) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double gamma_q(double a, double x) {
  if (!(a > 0.0) || x < 0.0) throw DomainError("gamma_q: requires a > 0 and x >= 0");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_cf(a, x);
}

double chi2_sf(double x, double dof) {
  return gamma_q(dof / 2.0, x / 2.0);
}

double poisson_gof_pvalue(std::span<const double> draws, double mean, double min_expected) {
  if (draws.empty()) throw DomainError("poisson_gof_pvalue: no draws");
  if (!(mean > 0.0)) throw DomainError("poisson_gof_pvalue: mean must be > 0");
  const double n = static_cast<double>(draws.size());
  const double sd = std::sqrt(mean);
  const double lo_f = std::max(0.0, std::floor(mean - 10.0 * sd));
  const auto k_lo = static_cast<std::uint64_t>(lo_f);
  const auto k_hi = static_cast<std::uint64_t>(std::ceil(mean + 10.0 * sd + 10.0));
  const std::size_t width = static_cast<std::size_t>(k_hi - k_lo) + 1;

  std::vector<double> observed(width, 0.0);
  for (double v : draws) {
    std::uint64_t k = v < 0.0 ? 0 : static_cast<std::uint64_t>(v);
    k = std::clamp(k, k_lo, k_hi);
    observed[static_cast<std::size_t>(k - k_lo)] += 1.0;
  }

  const double log_mean = std::log(mean);
  std::vector<double> expected(width, 0.0);
  for (std::size_t i = 0; i < width; ++i) {
    const double k = static_cast<double>(k_lo + i);
    expected[i] = n * std::exp(k * log_mean - mean - std::lgamma(k + 1.0));
  }
  // P(X <= k) for a Poisson is Q(k + 1, mean); fold both tails into the edges
  if (k_lo >= 1) expected.front() += n * gamma_q(static_cast<double>(k_lo), mean);
  expected.back() += n * (1.0 - gamma_q(static_cast<double>(k_hi) + 1.0, mean));

  std::vector<double> obs_bins, exp_bins;
  double op = 0.0, ep = 0.0;
  for (std::size_t i = 0; i < width; ++i) {
    op += observed[i];
    ep += expected[i];
    if (ep >= min_expected) {
      obs_bins.push_back(op);
      exp_bins.push_back(ep);
      op = ep = 0.0;
    }
  }
  if (ep > 0.0) {
    if (exp_bins.empty()) {
      obs_bins.push_back(op);
      exp_bins.push_back(ep);
    } else {
      obs_bins.back() += op;
      exp_bins.back() += ep;
    }
  }
  if (obs_bins.size() < 2) return 1.0;  // nothing to test against
  double chi2 = 0.0;
  for (std::size_t i = 0; i < obs_bins.size(); ++i) {
    chi2 += (obs_bins[i] - exp_bins[i]) * (obs_bins[i] - exp_bins[i]) / exp_bins[i];
  }
  return chi2_sf(chi2, static_cast<double>(obs_bins.size() - 1));
}

}  // namespace opcost
