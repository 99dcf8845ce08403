#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace netarch {

struct wilson_interval {
    double lo = 0.0;
    double hi = 1.0;
};

// 95% Wilson score interval by default (z = 1.96).
wilson_interval wilson(std::uint64_t hits, std::uint64_t trials, double z = 1.959963984540054);

// Regularized upper incomplete gamma Q(a, x); chi-square survival function.
double gamma_q(double a, double x);
double chi2_sf(double x, int df);

struct chi2_result {
    double statistic = 0.0;
    int df = 0;
    double p_value = 1.0;
    std::size_t pooled_bins = 0;
};

// Two-sample chi-square test of homogeneity over integer-valued statistics.
// Adjacent bins (ascending support) are pooled until every expected count is at
// least min_expected; df = pooled bins - 1.
chi2_result chi2_two_sample(const std::map<std::int64_t, std::uint64_t>& a,
                            const std::map<std::int64_t, std::uint64_t>& b,
                            double min_expected = 5.0);

// One-sample chi-square against exact bin probabilities (same pooling rule).
chi2_result chi2_goodness(const std::map<std::int64_t, std::uint64_t>& observed,
                          const std::map<std::int64_t, double>& probabilities,
                          std::uint64_t trials, double min_expected = 5.0);

struct ols_fit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_se = 0.0;
};

ols_fit ols(std::span<const double> x, std::span<const double> y);

// Kolmogorov-Smirnov distance between a sample and the Exp(1) distribution.
double ks_distance_exp1(std::vector<double> sample);

struct summary_stats {
    std::uint64_t count = 0;
    double mean = 0.0;
    double variance = 0.0;  // unbiased
    double q25 = 0.0, median = 0.0, q75 = 0.0;
    double min = 0.0, max = 0.0;
};

summary_stats summarize(std::vector<double> values);

// Type-7 quantile (linear interpolation of order statistics) on sorted data.
double quantile_sorted(std::span<const double> sorted, double q);

}  // namespace netarch
