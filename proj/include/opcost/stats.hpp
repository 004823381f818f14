#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace opcost {

double mean(std::span<const double> xs);
double sample_stddev(std::span<const double> xs);

/// q-th percentile (q in [0,100]) with linear interpolation between order
/// statistics. Reorders `xs` in place (nth_element based).
double percentile_inplace(std::vector<double>& xs, double q);

/// Percentile of a copy; input untouched.
double percentile(std::span<const double> xs, double q);

struct Quartiles {
  double q0, q25, q50, q75, q100;
};
Quartiles quartiles(std::span<const double> xs);

/// Two-sided Kolmogorov-Smirnov statistic against Uniform(lo, hi).
double ks_uniform_stat(std::vector<double> xs, double lo, double hi);

/// Asymptotic KS critical value at significance `alpha` for n observations.
double ks_critical(double alpha, std::size_t n);

/// Regularized upper incomplete gamma Q(a, x).
double gamma_q(double a, double x);

/// Survival function of the chi-square distribution with `dof` degrees of
/// freedom (the goodness-of-fit p-value for statistic `x`).
double chi2_sf(double x, double dof);

/// Chi-square goodness-of-fit p-value of integer-valued draws against
/// Poisson(mean). Bins are pooled until each holds at least `min_expected`
/// expected observations; head and tail mass are folded into the edge bins.
double poisson_gof_pvalue(std::span<const double> draws, double mean,
                          double min_expected = 5.0);

}  // namespace opcost
