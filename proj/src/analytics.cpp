#include "netarch/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "netarch/errors.hpp"

namespace netarch {

namespace {
constexpr std::uint64_t k_term_cap = 10'000'000;
constexpr double k_sum_cap = 1e15;
}  // namespace

muhat_result muhat_detail(const attachment_function& f, double theta, double tol) {
    if (!(theta > 0)) throw std::domain_error("muhat: theta must be positive");
    if (!(tol > 0)) throw std::domain_error("muhat: tol must be positive");

    switch (f.kind()) {
        case attachment_kind::constant:
            // geometric series with ratio c / (theta + c)
            return {f.constant_value() / theta, 0, true};
        case attachment_kind::linear: {
            // Gamma-ratio telescoping: terms p_k ~ k^{-theta}, so the series has
            // divergence point 1 and sums to (1 + beta) / (theta - 1) beyond it.
            if (theta <= 1.0)
                throw divergence_detected("muhat: linear attachment transform diverges for theta <= 1");
            return {(1.0 + f.linear_beta()) / (theta - 1.0), 0, true};
        }
        default:
            break;
    }

    double p = 1.0;
    double sum = 0.0;
    for (std::uint64_t k = 1; k <= k_term_cap; ++k) {
        const double fk = f(k);
        p *= fk / (theta + fk);
        sum += p;
        const double tail = p * fk / theta;
        if (p + tail < tol) return {sum + tail, k, false};
        if (sum > k_sum_cap)
            throw divergence_detected("muhat: partial sums exceeded the cap");
    }
    throw divergence_detected("muhat: term budget exhausted without convergence");
}

double muhat(const attachment_function& f, double theta, double tol) {
    return muhat_detail(f, theta, tol).value;
}

nlohmann::json malthusian_solution::to_json() const {
    return {{"lambda_star", lambda_star},
            {"bracket", {bracket.first, bracket.second}},
            {"tolerance", tolerance},
            {"muhat_at_solution", muhat_at_solution},
            {"term_count_used", term_count_used}};
}

malthusian_solution malthusian_rate(const attachment_function& f, double theta_tol) {
    if (!(theta_tol > 0)) throw std::domain_error("malthusian_rate: tolerance must be positive");
    double lo = f.f_star();
    double hi = 2.0 * f.slope_bound();

    const auto value_at = [&](double theta) -> double {
        try {
            return muhat(f, theta, 1e-12);
        } catch (const divergence_detected&) {
            return std::numeric_limits<double>::infinity();
        }
    };

    if (value_at(hi) > 1.0)
        throw bracket_failure("malthusian_rate: muhat(2 C_f) > 1; declared slope bound looks wrong");

    for (int iter = 0; iter < 64 && (hi - lo) > theta_tol; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (value_at(mid) > 1.0)
            lo = mid;
        else
            hi = mid;
    }

    malthusian_solution sol;
    sol.lambda_star = 0.5 * (lo + hi);
    sol.bracket = {lo, hi};
    const auto final_eval = muhat_detail(f, sol.lambda_star, 1e-12);
    sol.muhat_at_solution = final_eval.value;
    sol.term_count_used = final_eval.terms;
    sol.tolerance = std::abs(final_eval.value - 1.0);
    return sol;
}

double tilde_alpha_star(const attachment_function& f, double lambda_star, double x) {
    if (!(x > 0)) throw std::domain_error("tilde_alpha_star: x must be positive");
    if (!(lambda_star > 0)) throw std::domain_error("tilde_alpha_star: lambda_star must be positive");

    const auto objective = [&](double theta) -> double {
        try {
            return x * std::log(muhat(f, theta, 1e-12)) + theta;
        } catch (const divergence_detected&) {
            return std::numeric_limits<double>::infinity();
        }
    };

    // Log-spaced grid over (0, lambda*], scanned downward from lambda*. The
    // objective is unimodal on the supported kinds and blows up as theta -> 0,
    // so the scan stops once it is clearly past the minimum or once the
    // transform diverges; both clamp the effective lower end of the grid.
    constexpr int grid_points = 256;
    constexpr int past_min_stop = 8;
    const double theta_lo = lambda_star * 1e-6;
    const double ratio = std::pow(lambda_star / theta_lo, 1.0 / (grid_points - 1));
    int best = -1;
    double best_val = std::numeric_limits<double>::infinity();
    std::vector<double> thetas(grid_points);
    for (int i = 0; i < grid_points; ++i) thetas[i] = theta_lo * std::pow(ratio, i);
    for (int i = grid_points - 1; i >= 0; --i) {
        const double v = objective(thetas[i]);
        if (std::isinf(v)) break;
        if (v < best_val) {
            best_val = v;
            best = i;
        } else if (best >= 0 && best - i >= past_min_stop) {
            break;
        }
    }
    if (best < 0) throw divergence_detected("tilde_alpha_star: transform diverges on the whole grid");

    // Golden-section refinement between the neighbors of the best grid point.
    double a = thetas[std::max(0, best - 1)];
    double b = thetas[std::min(grid_points - 1, best + 1)];
    if (std::isinf(objective(a))) a = thetas[best];
    constexpr double inv_phi = 0.6180339887498949;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = objective(c);
    double fd = objective(d);
    while (b - a > 1e-8) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = objective(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = objective(d);
        }
    }
    return std::min({best_val, fc, fd});
}

double radius_rn(std::uint64_t n, double lambda_star, double c1, const phi_table& phi) {
    if (n < 3) throw std::domain_error("radius_rn: n must be >= 3");
    if (c1 < 0) throw std::domain_error("radius_rn: c1 must be >= 0");
    if (c1 == 0.0) return 0.0;
    return c1 * lambda_star * phi.kappa(std::log(static_cast<double>(n)) / lambda_star);
}

double budget_bn_log(double log_n, double r_n, double alpha, double lambda_star) {
    if (!(r_n > 0)) throw std::domain_error("budget_bn: r_n must be positive");
    if (!(alpha > 0) || alpha > 0.5) throw std::domain_error("budget_bn: alpha must lie in (0, 1/2]");
    const double denom = 2.0 * lambda_star * r_n;
    if (log_n <= denom)
        throw std::domain_error("budget_bn: log n <= 2 lambda* r_n; n too small for the bound");
    return std::exp(8.0 / (1.0 - alpha) * r_n * std::log(log_n / denom));
}

double budget_bn(std::uint64_t n, double r_n, double alpha, double lambda_star) {
    return budget_bn_log(std::log(static_cast<double>(n)), r_n, alpha, lambda_star);
}

budget_regime budget_regime::linear(int m, double beta) {
    budget_regime r;
    r.k = kind::linear;
    r.m = m;
    r.beta = beta;
    return r;
}

budget_regime budget_regime::general_tree(double lambda_star, double f_star, double delta) {
    budget_regime r;
    r.k = kind::general_tree;
    r.lambda_star = lambda_star;
    r.f_star = f_star;
    r.delta = delta;
    return r;
}

budget_regime budget_regime::general_m(double c_f, double f_star, double f_m, int m, double delta) {
    budget_regime r;
    r.k = kind::general_m;
    r.c_f = c_f;
    r.f_star = f_star;
    r.f_m = f_m;
    r.m = m;
    r.delta = delta;
    return r;
}

double budget_bound::lower_shape(double eps) const {
    return std::pow(eps, -lower_exponent);
}

double budget_bound::upper_shape(double eps) const {
    double v = std::pow(eps, -upper_exponent);
    if (upper_has_sqrt_log_correction) v *= std::exp(std::sqrt(std::log(1.0 / eps)));
    return v;
}

nlohmann::json budget_bound::to_json() const {
    return {{"epsilon", epsilon},
            {"regime", regime_tag},
            {"lower_exponent", lower_exponent},
            {"upper_exponent", upper_exponent},
            {"lower_value", lower_shape(epsilon)},
            {"upper_value", upper_shape(epsilon)},
            {"upper_has_sqrt_log_correction", upper_has_sqrt_log_correction},
            {"unit_constants", unit_constants}};
}

budget_bound budget_bounds(double epsilon, const budget_regime& regime) {
    if (!(epsilon > 0) || !(epsilon < 1)) throw std::domain_error("budget_bounds: epsilon must lie in (0,1)");
    budget_bound b;
    b.epsilon = epsilon;
    switch (regime.k) {
        case budget_regime::kind::linear: {
            if (regime.m < 1) throw std::domain_error("budget_bounds: m must be >= 1");
            if (regime.beta < 0) throw std::domain_error("budget_bounds: beta must be >= 0");
            const double m = regime.m;
            const double e = (2.0 * m + regime.beta) / (m * (m + regime.beta));
            b.lower_exponent = e;
            b.upper_exponent = e;
            b.upper_has_sqrt_log_correction = true;
            b.regime_tag = "linear";
            break;
        }
        case budget_regime::kind::general_tree: {
            if (!(regime.delta > 0) || !(regime.delta < 1))
                throw std::domain_error("budget_bounds: delta must lie in (0,1)");
            b.lower_exponent = regime.lambda_star / regime.f_star;
            b.upper_exponent = regime.lambda_star / ((1.0 - regime.delta) * regime.f_star);
            b.regime_tag = "general-tree";
            break;
        }
        case budget_regime::kind::general_m: {
            if (!(regime.delta > 0) || !(regime.delta < 1))
                throw std::domain_error("budget_bounds: delta must lie in (0,1)");
            if (regime.m <= 1) throw std::domain_error("budget_bounds: general_m requires m > 1");
            b.lower_exponent = regime.f_star / (regime.m * regime.f_m);
            b.upper_exponent = 2.0 * regime.c_f / ((1.0 - regime.delta) * regime.f_star);
            b.regime_tag = "general-m";
            break;
        }
    }
    return b;
}

double yule_mgf(double theta, double t, double nu, double beta_imm) {
    if (t < 0) throw std::domain_error("yule_mgf: t must be >= 0");
    if (!(nu > 0)) throw std::domain_error("yule_mgf: nu must be positive");
    if (beta_imm < 0) throw std::domain_error("yule_mgf: immigration rate must be >= 0");
    if (t > 0) {
        const double bound = -std::log1p(-std::exp(-nu * t));  // log(e^{nu t}/(e^{nu t}-1))
        if (theta >= bound) throw std::domain_error("yule_mgf: theta outside the validity domain");
    }
    // log base = nu t + log((1 - e^theta) + e^{theta - nu t}), stable for large nu t.
    const double log_base = nu * t + std::log((1.0 - std::exp(theta)) + std::exp(theta - nu * t));
    return std::exp(theta - (1.0 + beta_imm / nu) * log_base);
}

}  // namespace netarch
