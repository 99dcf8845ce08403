#include <doctest.h>

#include <cmath>

#include "netarch/analytics.hpp"
#include "netarch/errors.hpp"

using namespace netarch;

TEST_CASE("muhat closed forms") {
    CHECK(muhat(attachment_function::constant(1.0), 2.0) == doctest::Approx(0.5));
    CHECK(muhat(attachment_function::linear(0.0), 2.0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(muhat(attachment_function::linear(0.0), 0.5), divergence_detected);
    CHECK_THROWS_AS(muhat(attachment_function::constant(1.0), 0.0), std::domain_error);
}

TEST_CASE("muhat linear closed form matches a direct partial sum") {
    const double theta = 2.5, beta = 0.5;
    double p = 1.0, sum = 0.0;
    for (int k = 1; k <= 10000; ++k) {
        p *= (k + beta) / (theta + k + beta);
        sum += p;
    }
    CHECK(muhat(attachment_function::linear(beta), theta) == doctest::Approx(sum).epsilon(1e-3));
}

TEST_CASE("muhat iterative path matches geometric series for a constant table") {
    // table kind forces the iterative path; tail keeps f constant at 1
    table_tail tail;
    tail.rule = table_tail::kind::constant;
    tail.c = 1.0;
    const auto f = attachment_function::table({1.0}, tail);
    const auto r = muhat_detail(f, 2.0, 1e-12);
    CHECK_FALSE(r.exact);
    CHECK(r.value == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("muhat strictly decreasing where finite") {
    const auto f = attachment_function::power(0.5);
    double prev = std::numeric_limits<double>::infinity();
    for (double theta = 0.4; theta < 3.0; theta += 0.2) {
        const double v = muhat(f, theta);
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("malthusian rates for the preset oracles") {
    CHECK(malthusian_rate(attachment_function::constant(1.0)).lambda_star ==
          doctest::Approx(1.0).epsilon(1e-6));
    CHECK(malthusian_rate(attachment_function::linear(0.0)).lambda_star ==
          doctest::Approx(2.0).epsilon(1e-6));
    CHECK(malthusian_rate(attachment_function::linear(1.0)).lambda_star ==
          doctest::Approx(3.0).epsilon(1e-6));
}

TEST_CASE("malthusian solution consistency") {
    for (const auto& f : {attachment_function::constant(1.0), attachment_function::linear(0.0),
                          attachment_function::power(0.4), attachment_function::power(0.5)}) {
        const auto sol = malthusian_rate(f);
        CHECK(std::abs(sol.muhat_at_solution - 1.0) <= 1e-5);
        CHECK(sol.lambda_star >= f.f_star());
        CHECK(sol.lambda_star <= 2.0 * f.slope_bound());
    }
}

TEST_CASE("tilde_alpha_star closed form for constant attachment") {
    const auto f = attachment_function::constant(1.0);
    // muhat = 1/theta, so the objective is theta - x log theta with minimizer theta = x.
    CHECK(tilde_alpha_star(f, 1.0, 0.5) == doctest::Approx(0.5 * (1.0 - std::log(0.5))).epsilon(1e-5));
    CHECK(tilde_alpha_star(f, 1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(tilde_alpha_star(f, 1.0, 2.0) == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("tilde_alpha_star small-x shape for sublinear presets") {
    // alpha~*(x) <= C x - 2/(1-alpha) x log x near zero, with one C fitted at x = 0.1.
    for (double alpha : {0.4, 0.5}) {
        const auto f = attachment_function::power(alpha);
        const double lambda = malthusian_rate(f).lambda_star;
        const double shape = 2.0 / (1.0 - alpha);
        const double x_fit = 0.1;
        const double c_fit =
            (tilde_alpha_star(f, lambda, x_fit) + shape * x_fit * std::log(x_fit)) / x_fit;
        for (double x : {0.01, 0.05, 0.1}) {
            const double bound = c_fit * x - shape * x * std::log(x);
            CHECK(tilde_alpha_star(f, lambda, x) <= bound * (1.0 + 1e-6) + 1e-9);
        }
    }
}

TEST_CASE("radius_rn") {
    phi_table phi_const(attachment_function::constant(1.0));
    const std::uint64_t n = static_cast<std::uint64_t>(std::ceil(std::exp(10.0)));
    CHECK(radius_rn(n, 1.0, 1.0, phi_const) == doctest::Approx(10.0).epsilon(1e-4));
    CHECK(radius_rn(1000, 1.5, 0.0, phi_const) == 0.0);
    CHECK_THROWS_AS(radius_rn(2, 1.0, 1.0, phi_const), std::domain_error);

    // kappa is the identity for constant f, so log n = 7.5 and lambda* = 1.5
    // give kappa(log(n)/lambda*) = 5 and r_n = c1 * lambda* * 5.
    const auto n2 = static_cast<std::uint64_t>(std::ceil(std::exp(7.5)));
    CHECK(radius_rn(n2, 1.5, 2.0, phi_const) == doctest::Approx(15.0).epsilon(1e-3));
}

TEST_CASE("budget_bn formula and domain") {
    CHECK(budget_bn_log(4.0, 1.0, 0.5, 1.0) == doctest::Approx(65536.0));
    // log n = 2 lambda* r_n * e gives exp(16 r_n)
    const double rn = 0.7;
    CHECK(budget_bn_log(2.0 * rn * std::exp(1.0), rn, 0.5, 1.0) ==
          doctest::Approx(std::exp(16.0 * rn)));
    // boundary log n = 2 lambda* r_n: domain error
    CHECK_THROWS_AS(budget_bn_log(4.0, 2.0, 0.5, 1.0), std::domain_error);
    // the integer-n wrapper agrees with the log form
    CHECK(budget_bn(100000, 1.0, 0.4, 1.2) ==
          doctest::Approx(budget_bn_log(std::log(1e5), 1.0, 0.4, 1.2)));
}

TEST_CASE("budget_bounds exponents") {
    const auto lin10 = budget_bounds(0.1, budget_regime::linear(1, 0.0));
    CHECK(lin10.lower_exponent == doctest::Approx(2.0));
    CHECK(lin10.upper_exponent == doctest::Approx(2.0));
    CHECK(lin10.upper_has_sqrt_log_correction);

    const auto lin2 = budget_bounds(0.1, budget_regime::linear(2, 0.0));
    CHECK(lin2.lower_exponent == doctest::Approx(1.0));  // decreasing in m

    // general-tree matches linear(m=1, beta=1) as delta -> 0
    const auto gt = budget_bounds(0.1, budget_regime::general_tree(3.0, 2.0, 1e-9));
    CHECK(gt.lower_exponent == doctest::Approx(1.5));
    CHECK(gt.upper_exponent == doctest::Approx(1.5).epsilon(1e-6));
    const auto lin_b1 = budget_bounds(0.1, budget_regime::linear(1, 1.0));
    CHECK(lin_b1.lower_exponent == doctest::Approx(1.5));

    CHECK_THROWS_AS(budget_bounds(1.5, budget_regime::linear(1, 0.0)), std::domain_error);
}

TEST_CASE("budget_bounds lower <= upper across parameters") {
    for (double eps : {0.01, 0.1, 0.5}) {
        for (int m : {1, 2, 3}) {
            for (double beta : {0.0, 0.5, 2.0}) {
                const auto b = budget_bounds(eps, budget_regime::linear(m, beta));
                CHECK(b.lower_exponent <= b.upper_exponent);
                CHECK(b.lower_shape(eps) <= b.upper_shape(eps));
            }
        }
        for (double delta : {0.1, 0.5}) {
            const auto b = budget_bounds(eps, budget_regime::general_tree(2.0, 1.0, delta));
            CHECK(b.lower_exponent <= b.upper_exponent);
            const auto bm = budget_bounds(eps, budget_regime::general_m(2.0, 1.0, 1.5, 2, delta));
            CHECK(bm.lower_exponent <= bm.upper_exponent);
        }
    }
}

TEST_CASE("yule_mgf") {
    CHECK(yule_mgf(0.3, 0.0, 1.0, 0.0) == doctest::Approx(std::exp(0.3)));
    CHECK(yule_mgf(-2.0, 0.0, 0.5, 1.0) == doctest::Approx(std::exp(-2.0)));
    CHECK(yule_mgf(0.0, 3.0, 1.0, 0.5) == doctest::Approx(1.0));

    // derivative in theta at zero is the Yule mean e^t
    const double h = 1e-5, t = 2.0;
    const double deriv = (yule_mgf(h, t, 1.0, 0.0) - yule_mgf(-h, t, 1.0, 0.0)) / (2.0 * h);
    CHECK(deriv == doctest::Approx(std::exp(t)).epsilon(1e-4));

    const double bound = std::log(std::exp(1.0) / (std::exp(1.0) - 1.0));
    CHECK_THROWS_AS(yule_mgf(bound + 0.01, 1.0, 1.0, 0.0), std::domain_error);
}

TEST_CASE("muhat at the solved rate is one") {
    for (const auto& f : {attachment_function::constant(2.0), attachment_function::linear(0.5),
                          attachment_function::power(0.5)}) {
        const auto sol = malthusian_rate(f, 1e-9);
        CHECK(std::abs(muhat(f, sol.lambda_star) - 1.0) <= 1e-5);
    }
}
