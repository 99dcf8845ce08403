#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace netarch {

enum class attachment_kind { constant, linear, power, table };

enum class regime { persistent, non_persistent, unknown };

std::string to_string(regime r);

// Continuation rule applied to a table-backed attachment function beyond its
// stored range. There is no silent extrapolation: a table must declare one.
struct table_tail {
    enum class kind { constant, power, linear };
    kind rule = kind::constant;
    double c = 1.0;      // constant: f(k) = c;  power: f(k) = c * k^alpha
    double alpha = 1.0;  // power exponent
    double beta = 0.0;   // linear: f(k) = k + beta

    double eval(std::uint64_t k) const;
};

// An attachment function f: {1,2,...} -> (0, inf). Presets carry their analytic
// bounds (f_*, slope bound C_f, power-envelope exponent); table kinds may declare
// them. Values are immutable after construction; copies are cheap.
class attachment_function {
public:
    static attachment_function constant(double c);
    static attachment_function linear(double beta);
    static attachment_function power(double alpha, double c0 = 1.0);
    static attachment_function table(std::vector<double> values, table_tail tail,
                                     std::optional<double> f_star = std::nullopt,
                                     std::optional<double> slope_bound = std::nullopt,
                                     std::optional<double> alpha_bound = std::nullopt);

    attachment_kind kind() const { return kind_; }

    // f(k) for integer k >= 1; k = 0 is a domain error.
    double operator()(std::uint64_t k) const;

    // Step extension to the reals: f(x) = f(floor(x)) for x >= 1.
    double at_real(double x) const;

    // min_{i >= 1} f(i)
    double f_star() const { return f_star_; }
    // C_f with f(i) <= C_f * i for all i
    double slope_bound() const { return slope_bound_; }
    // smallest declared a with f(i) <= C0 * i^a, when known
    std::optional<double> alpha_bound() const { return alpha_bound_; }

    // Parameter accessors (valid for the matching kind only).
    double constant_value() const { return c_; }
    double linear_beta() const { return beta_; }
    double power_alpha() const { return alpha_; }
    double power_c0() const { return c_; }
    const std::vector<double>& table_values() const { return *values_; }
    const table_tail& tail() const { return tail_; }

    // Analytic classification: sum 1/f^2 < inf (persistent) or = inf.
    regime classify() const;

    nlohmann::json to_json() const;
    static attachment_function from_json(const nlohmann::json& j);

    bool operator==(const attachment_function& other) const;

private:
    attachment_function() = default;

    attachment_kind kind_ = attachment_kind::constant;
    double c_ = 1.0;      // constant value / power c0
    double beta_ = 0.0;   // linear offset
    double alpha_ = 1.0;  // power exponent
    std::shared_ptr<const std::vector<double>> values_;
    table_tail tail_;

    double f_star_ = 1.0;
    double slope_bound_ = 1.0;
    std::optional<double> alpha_bound_;
    std::optional<double> declared_slope_bound_;  // table kinds: checked on access
};

// Cached prefix sums Phi_1, Phi_2 of 1/f and 1/f^2, extended to the reals:
// zero on [0,1], linear interpolation between integers. The cache grows by
// doubling; concurrent readers are safe while a single writer extends it.
class phi_table {
public:
    explicit phi_table(attachment_function f, std::size_t initial_size = 64);

    const attachment_function& f() const { return f_; }

    // Phi_order(x) for x >= 0; order must be 1 or 2.
    double phi(int order, double x) const;

    // The unique x >= 1 with Phi_order(x) = y (x = 1 when y = 0). Throws
    // std::range_error when y is at or above the series limit estimate for a
    // convergent series.
    double phi_inverse(int order, double y) const;

    // K(t) = Phi_2(Phi_1^{-1}(t)).
    double kappa(double t) const;

    // (lower, upper) bracket for Phi_order(inf) when the series converges;
    // nullopt when it diverges or convergence is not established. Brackets come
    // from integral tail bounds at the current cache size for preset kinds.
    std::optional<std::pair<double, double>> limit_bracket(int order) const;

    std::size_t cached_size() const;

private:
    void ensure(std::size_t l) const;  // extend cache so Phi(l) is available
    double read_phi(int order, double x) const;
    std::optional<std::pair<double, double>> tail_bracket(int order, std::size_t from) const;

    attachment_function f_;
    mutable std::shared_mutex mutex_;
    // phi1_[i] = Phi_1(i + 1); phi1_[0] = Phi_1(1) = 0. Same layout for phi2_.
    mutable std::vector<double> phi1_;
    mutable std::vector<double> phi2_;
};

}  // namespace netarch
