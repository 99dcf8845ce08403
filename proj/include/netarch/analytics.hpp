#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include <json.hpp>

#include "netarch/attachment.hpp"

namespace netarch {

struct muhat_result {
    double value = 0.0;
    std::uint64_t terms = 0;  // 0 when a closed form was used
    bool exact = false;
};

// Laplace transform of the reproduction intensity,
//   muhat(theta) = sum_{k>=1} prod_{i<=k} f(i) / (theta + f(i)).
// Closed forms: constant c -> c/theta; linear (f(i) = i + beta) -> (1+beta)/(theta-1)
// for theta > 1 (the series diverges at or below 1). Other kinds sum the product
// terms p_k and stop once p_k plus the local-geometric tail estimate
// p_k * f(k) / theta drops below tol; that estimate is added to the partial sum.
// Throws divergence_detected when the running sum blows past a cap or the term
// budget is exhausted, which signals theta at or below the divergence point.
muhat_result muhat_detail(const attachment_function& f, double theta, double tol = 1e-12);
double muhat(const attachment_function& f, double theta, double tol = 1e-12);

struct malthusian_solution {
    double lambda_star = 0.0;
    std::pair<double, double> bracket{0.0, 0.0};  // final bisection interval
    double tolerance = 0.0;                       // |muhat(lambda_star) - 1|
    double muhat_at_solution = 0.0;
    std::uint64_t term_count_used = 0;

    nlohmann::json to_json() const;
};

// Solves muhat(lambda) = 1 by bisection over [f_*, 2 C_f]; muhat is strictly
// decreasing there and a divergent probe counts as muhat > 1. Throws
// bracket_failure when muhat(2 C_f) > 1, which contradicts the declared C_f.
malthusian_solution malthusian_rate(const attachment_function& f, double theta_tol = 1e-9);

// alpha~*(x) = inf_{0 < theta <= lambda*} { x log muhat(theta) + theta }, computed on a
// log-spaced grid refined by golden-section search. Grid points where the transform
// diverges (theta too small) are skipped.
double tilde_alpha_star(const attachment_function& f, double lambda_star, double x);

// r_n = c1 * lambda* * K(log(n) / lambda*).
double radius_rn(std::uint64_t n, double lambda_star, double c1, const phi_table& phi);

// b_n = exp( 8/(1-alpha) * r_n * log( log(n) / (2 lambda* r_n) ) ).
// Domain error when log(n) <= 2 lambda* r_n (n too small for the bound).
double budget_bn(std::uint64_t n, double r_n, double alpha, double lambda_star);
double budget_bn_log(double log_n, double r_n, double alpha, double lambda_star);

// Parameters for the three budget-bound regimes.
struct budget_regime {
    enum class kind { linear, general_tree, general_m };
    kind k = kind::linear;

    // linear: f(i) = i + beta with m edges per arrival
    int m = 1;
    double beta = 0.0;
    // general_tree: lambda*, f_*, delta
    double lambda_star = 0.0;
    double f_star = 0.0;
    double delta = 0.0;
    // general_m additionally: C_f and f(m)
    double c_f = 0.0;
    double f_m = 0.0;

    static budget_regime linear(int m, double beta);
    static budget_regime general_tree(double lambda_star, double f_star, double delta);
    static budget_regime general_m(double c_f, double f_star, double f_m, int m, double delta);
};

// Budget bound evaluator with every leading constant fixed at 1 (the exponents
// are the testable content; the flag records the convention).
struct budget_bound {
    double epsilon = 0.0;
    double lower_exponent = 0.0;
    double upper_exponent = 0.0;
    bool upper_has_sqrt_log_correction = false;  // linear regime only
    std::string regime_tag;
    bool unit_constants = true;

    double lower_shape(double eps) const;
    double upper_shape(double eps) const;
    nlohmann::json to_json() const;
};

budget_bound budget_bounds(double epsilon, const budget_regime& regime);

// Moment generating function of the simple birth process with immigration
// (birth rate nu, immigration rate beta_imm, one initial individual):
//   M(theta, t) = e^theta / ((1 - e^theta) e^{nu t} + e^theta)^{1 + beta/nu},
// valid for theta < log(e^{nu t} / (e^{nu t} - 1)).
double yule_mgf(double theta, double t, double nu, double beta_imm);

}  // namespace netarch
