#include "netarch/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace netarch {

wilson_interval wilson(std::uint64_t hits, std::uint64_t trials, double z) {
    if (trials == 0) return {0.0, 1.0};
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(hits) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

namespace {

// Regularized incomplete gamma by series (x < a + 1) or continued fraction.
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < 10000; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * 1e-15) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 10000; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-15) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double gamma_q(double a, double x) {
    if (x < 0 || a <= 0) throw std::domain_error("gamma_q: bad arguments");
    if (x == 0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_cf(a, x);
}

double chi2_sf(double x, int df) {
    if (df <= 0) throw std::domain_error("chi2_sf: df must be positive");
    return gamma_q(0.5 * df, 0.5 * x);
}

namespace {

struct pooled_bin {
    double a = 0.0;
    double b = 0.0;
};

}  // namespace

chi2_result chi2_two_sample(const std::map<std::int64_t, std::uint64_t>& a,
                            const std::map<std::int64_t, std::uint64_t>& b, double min_expected) {
    double n1 = 0, n2 = 0;
    for (const auto& [k, v] : a) n1 += static_cast<double>(v);
    for (const auto& [k, v] : b) n2 += static_cast<double>(v);
    if (n1 == 0 || n2 == 0) throw std::domain_error("chi2_two_sample: empty sample");

    // Merge the supports, accumulate ascending, pool until both expected counts clear the floor.
    std::map<std::int64_t, pooled_bin> combined;
    for (const auto& [k, v] : a) combined[k].a += static_cast<double>(v);
    for (const auto& [k, v] : b) combined[k].b += static_cast<double>(v);

    std::vector<pooled_bin> bins;
    pooled_bin acc;
    const double total = n1 + n2;
    for (const auto& [k, bin] : combined) {
        acc.a += bin.a;
        acc.b += bin.b;
        const double both = acc.a + acc.b;
        if (n1 * both / total >= min_expected && n2 * both / total >= min_expected) {
            bins.push_back(acc);
            acc = {};
        }
    }
    if (acc.a + acc.b > 0) {
        if (!bins.empty()) {
            bins.back().a += acc.a;
            bins.back().b += acc.b;
        } else {
            bins.push_back(acc);
        }
    }

    chi2_result r;
    r.pooled_bins = bins.size();
    if (bins.size() < 2) {
        r.df = 0;
        r.p_value = 1.0;
        return r;
    }
    double stat = 0.0;
    const double k1 = std::sqrt(n2 / n1);
    const double k2 = std::sqrt(n1 / n2);
    for (const auto& bin : bins) {
        const double d = k1 * bin.a - k2 * bin.b;
        stat += d * d / (bin.a + bin.b);
    }
    r.statistic = stat;
    r.df = static_cast<int>(bins.size()) - 1;
    r.p_value = chi2_sf(stat, r.df);
    return r;
}

chi2_result chi2_goodness(const std::map<std::int64_t, std::uint64_t>& observed,
                          const std::map<std::int64_t, double>& probabilities, std::uint64_t trials,
                          double min_expected) {
    const double n = static_cast<double>(trials);
    std::map<std::int64_t, pooled_bin> combined;  // a = observed, b = expected
    for (const auto& [k, p] : probabilities) combined[k].b += n * p;
    for (const auto& [k, v] : observed) {
        if (!probabilities.count(k))
            throw std::domain_error("chi2_goodness: observed value outside the exact support");
        combined[k].a += static_cast<double>(v);
    }

    std::vector<pooled_bin> bins;
    pooled_bin acc;
    for (const auto& [k, bin] : combined) {
        acc.a += bin.a;
        acc.b += bin.b;
        if (acc.b >= min_expected) {
            bins.push_back(acc);
            acc = {};
        }
    }
    if (acc.b > 0 || acc.a > 0) {
        if (!bins.empty()) {
            bins.back().a += acc.a;
            bins.back().b += acc.b;
        } else {
            bins.push_back(acc);
        }
    }

    chi2_result r;
    r.pooled_bins = bins.size();
    if (bins.size() < 2) {
        r.df = 0;
        r.p_value = 1.0;
        return r;
    }
    double stat = 0.0;
    for (const auto& bin : bins) stat += (bin.a - bin.b) * (bin.a - bin.b) / bin.b;
    r.statistic = stat;
    r.df = static_cast<int>(bins.size()) - 1;
    r.p_value = chi2_sf(stat, r.df);
    return r;
}

ols_fit ols(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 3) throw std::domain_error("ols: need >= 3 points");
    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0) throw std::domain_error("ols: degenerate x");
    ols_fit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (fit.intercept + fit.slope * x[i]);
        ss_res += r * r;
    }
    fit.slope_se = std::sqrt(ss_res / ((n - 2.0) * sxx));
    return fit;
}

double ks_distance_exp1(std::vector<double> sample) {
    if (sample.empty()) throw std::domain_error("ks_distance_exp1: empty sample");
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double cdf = -std::expm1(-sample[i]);
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - cdf));
        d = std::max(d, std::abs(static_cast<double>(i) / n - cdf));
    }
    return d;
}

double quantile_sorted(std::span<const double> sorted, double q) {
    if (sorted.empty()) throw std::domain_error("quantile: empty data");
    if (q <= 0) return sorted.front();
    if (q >= 1) return sorted.back();
    const double h = q * (static_cast<double>(sorted.size()) - 1.0);
    const std::size_t lo = static_cast<std::size_t>(h);
    const double frac = h - static_cast<double>(lo);
    if (lo + 1 >= sorted.size()) return sorted.back();
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

summary_stats summarize(std::vector<double> values) {
    summary_stats s;
    s.count = values.size();
    if (values.empty()) return s;
    double sum = 0;
    for (double v : values) sum += v;
    s.mean = sum / static_cast<double>(values.size());
    double ss = 0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.variance = values.size() > 1 ? ss / static_cast<double>(values.size() - 1) : 0.0;
    std::sort(values.begin(), values.end());
    s.min = values.front();
    s.max = values.back();
    s.q25 = quantile_sorted(values, 0.25);
    s.median = quantile_sorted(values, 0.5);
    s.q75 = quantile_sorted(values, 0.75);
    return s;
}

}  // namespace netarch
