#include "netarch/attachment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <stdexcept>

namespace netarch {

std::string to_string(regime r) {
    switch (r) {
        case regime::persistent: return "persistent";
        case regime::non_persistent: return "non-persistent";
        default: return "unknown";
    }
}

double table_tail::eval(std::uint64_t k) const {
    switch (rule) {
        case kind::constant: return c;
        case kind::power: return c * std::pow(static_cast<double>(k), alpha);
        case kind::linear: return static_cast<double>(k) + beta;
    }
    return c;
}

attachment_function attachment_function::constant(double c) {
    if (!(c > 0)) throw std::domain_error("attachment_function::constant: c must be positive");
    attachment_function f;
    f.kind_ = attachment_kind::constant;
    f.c_ = c;
    f.f_star_ = c;
    f.slope_bound_ = c;        // f(i) = c <= c * i for i >= 1
    f.alpha_bound_ = 0.0;      // f(i) = c * i^0
    return f;
}

attachment_function attachment_function::linear(double beta) {
    if (beta < 0) throw std::domain_error("attachment_function::linear: beta must be >= 0");
    attachment_function f;
    f.kind_ = attachment_kind::linear;
    f.beta_ = beta;
    f.f_star_ = 1.0 + beta;
    f.slope_bound_ = 1.0 + beta;  // i + beta <= (1 + beta) * i for i >= 1
    f.alpha_bound_ = std::nullopt;
    return f;
}

attachment_function attachment_function::power(double alpha, double c0) {
    if (!(alpha > 0) || alpha > 1.0)
        throw std::domain_error("attachment_function::power: alpha must lie in (0, 1]");
    if (!(c0 > 0)) throw std::domain_error("attachment_function::power: c0 must be positive");
    attachment_function f;
    f.kind_ = attachment_kind::power;
    f.alpha_ = alpha;
    f.c_ = c0;
    f.f_star_ = c0;       // increasing, min at i = 1
    f.slope_bound_ = c0;  // c0 * i^alpha <= c0 * i
    f.alpha_bound_ = alpha;
    return f;
}

attachment_function attachment_function::table(std::vector<double> values, table_tail tail,
                                               std::optional<double> f_star,
                                               std::optional<double> slope_bound,
                                               std::optional<double> alpha_bound) {
    if (values.empty()) throw std::domain_error("attachment_function::table: empty value list");
    for (double v : values)
        if (!(v > 0)) throw std::domain_error("attachment_function::table: values must be positive");

    attachment_function f;
    f.kind_ = attachment_kind::table;
    f.tail_ = tail;
    f.values_ = std::make_shared<const std::vector<double>>(std::move(values));
    const auto& vals = *f.values_;

    double min_stored = *std::min_element(vals.begin(), vals.end());
    double tail_min = tail.eval(vals.size() + 1);  // tail rules here are nondecreasing beyond the range
    if (tail.rule == table_tail::kind::constant) tail_min = tail.c;
    f.f_star_ = f_star.value_or(std::min(min_stored, tail_min));

    if (slope_bound) {
        f.declared_slope_bound_ = slope_bound;
        f.slope_bound_ = *slope_bound;
    } else {
        double cf = 0.0;
        for (std::size_t i = 0; i < vals.size(); ++i)
            cf = std::max(cf, vals[i] / static_cast<double>(i + 1));
        switch (tail.rule) {
            case table_tail::kind::constant: cf = std::max(cf, tail.c / static_cast<double>(vals.size() + 1)); break;
            case table_tail::kind::power: cf = std::max(cf, tail.c); break;
            case table_tail::kind::linear: cf = std::max(cf, 1.0 + tail.beta); break;
        }
        f.slope_bound_ = cf;
    }
    f.alpha_bound_ = alpha_bound;
    return f;
}

double attachment_function::operator()(std::uint64_t k) const {
    if (k == 0) throw std::domain_error("attachment function evaluated at k = 0");
    switch (kind_) {
        case attachment_kind::constant: return c_;
        case attachment_kind::linear: return static_cast<double>(k) + beta_;
        case attachment_kind::power: return c_ * std::pow(static_cast<double>(k), alpha_);
        case attachment_kind::table: {
            double v = k <= values_->size() ? (*values_)[k - 1] : tail_.eval(k);
            if (declared_slope_bound_ && v > *declared_slope_bound_ * static_cast<double>(k))
                throw std::domain_error("table attachment function violates its declared slope bound at k=" +
                                        std::to_string(k));
            return v;
        }
    }
    return c_;
}

double attachment_function::at_real(double x) const {
    if (!(x >= 1.0)) throw std::domain_error("attachment function extension defined on [1, inf)");
    return (*this)(static_cast<std::uint64_t>(std::floor(x)));
}

regime attachment_function::classify() const {
    switch (kind_) {
        case attachment_kind::constant: return regime::non_persistent;
        case attachment_kind::linear: return regime::persistent;
        case attachment_kind::power:
            return alpha_ > 0.5 ? regime::persistent : regime::non_persistent;
        case attachment_kind::table:
            // The stored prefix never decides convergence of sum 1/f^2; only the tail can.
            switch (tail_.rule) {
                case table_tail::kind::constant: return regime::non_persistent;
                case table_tail::kind::linear: return regime::persistent;
                case table_tail::kind::power:
                    return tail_.alpha > 0.5 ? regime::persistent : regime::non_persistent;
            }
    }
    return regime::unknown;
}

nlohmann::json attachment_function::to_json() const {
    nlohmann::json j;
    switch (kind_) {
        case attachment_kind::constant:
            j["kind"] = "constant";
            j["c"] = c_;
            break;
        case attachment_kind::linear:
            j["kind"] = "linear";
            j["beta"] = beta_;
            break;
        case attachment_kind::power:
            j["kind"] = "power";
            j["alpha"] = alpha_;
            j["c0"] = c_;
            break;
        case attachment_kind::table: {
            j["kind"] = "table";
            j["values"] = *values_;
            nlohmann::json t;
            switch (tail_.rule) {
                case table_tail::kind::constant:
                    t["kind"] = "constant";
                    t["c"] = tail_.c;
                    break;
                case table_tail::kind::power:
                    t["kind"] = "power";
                    t["alpha"] = tail_.alpha;
                    t["c0"] = tail_.c;
                    break;
                case table_tail::kind::linear:
                    t["kind"] = "linear";
                    t["beta"] = tail_.beta;
                    break;
            }
            j["tail"] = t;
            j["f_star"] = f_star_;
            if (declared_slope_bound_) j["c_f"] = *declared_slope_bound_;
            if (alpha_bound_) j["alpha_bound"] = *alpha_bound_;
            break;
        }
    }
    return j;
}

attachment_function attachment_function::from_json(const nlohmann::json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "constant") return constant(j.at("c").get<double>());
    if (kind == "linear") return linear(j.at("beta").get<double>());
    if (kind == "power") return power(j.at("alpha").get<double>(), j.value("c0", 1.0));
    if (kind == "table") {
        auto values = j.at("values").get<std::vector<double>>();
        const auto& t = j.at("tail");
        table_tail tail;
        const std::string tk = t.at("kind").get<std::string>();
        if (tk == "constant") {
            tail.rule = table_tail::kind::constant;
            tail.c = t.at("c").get<double>();
        } else if (tk == "power") {
            tail.rule = table_tail::kind::power;
            tail.alpha = t.at("alpha").get<double>();
            tail.c = t.value("c0", 1.0);
        } else if (tk == "linear") {
            tail.rule = table_tail::kind::linear;
            tail.beta = t.at("beta").get<double>();
        } else {
            throw std::domain_error("unknown table tail kind: " + tk);
        }
        std::optional<double> fs, cf, ab;
        if (j.contains("f_star")) fs = j.at("f_star").get<double>();
        if (j.contains("c_f")) cf = j.at("c_f").get<double>();
        if (j.contains("alpha_bound")) ab = j.at("alpha_bound").get<double>();
        return table(std::move(values), tail, fs, cf, ab);
    }
    throw std::domain_error("unknown attachment function kind: " + kind);
}

bool attachment_function::operator==(const attachment_function& other) const {
    return to_json() == other.to_json();
}

// ---------------------------------------------------------------------------
// phi_table

namespace {
constexpr std::size_t k_max_cache = std::size_t{1} << 26;
}

phi_table::phi_table(attachment_function f, std::size_t initial_size) : f_(std::move(f)) {
    phi1_.reserve(initial_size);
    phi2_.reserve(initial_size);
    phi1_.push_back(0.0);  // Phi(1) = 0, the empty sum
    phi2_.push_back(0.0);
    ensure(std::max<std::size_t>(initial_size, 2));
}

std::size_t phi_table::cached_size() const {
    std::shared_lock lock(mutex_);
    return phi1_.size();
}

void phi_table::ensure(std::size_t l) const {
    {
        std::shared_lock lock(mutex_);
        if (phi1_.size() >= l) return;
    }
    std::unique_lock lock(mutex_);
    if (phi1_.size() >= l) return;
    if (l > k_max_cache) throw std::range_error("phi_table: requested cache size exceeds limit");
    std::size_t target = phi1_.size();
    while (target < l) target *= 2;
    target = std::min(target, k_max_cache);
    while (phi1_.size() < target) {
        const std::uint64_t i = phi1_.size();  // adding Phi(i + 1) = Phi(i) + 1/f(i)^k
        const double fi = f_(i);
        phi1_.push_back(phi1_.back() + 1.0 / fi);
        phi2_.push_back(phi2_.back() + 1.0 / (fi * fi));
    }
}

double phi_table::read_phi(int order, double x) const {
    const auto& tab = order == 1 ? phi1_ : phi2_;
    if (x <= 1.0) return 0.0;
    const std::size_t lo = static_cast<std::size_t>(std::floor(x));
    const double frac = x - static_cast<double>(lo);
    const double base = tab[lo - 1];
    if (frac == 0.0) return base;
    return base + frac * (tab[lo] - tab[lo - 1]);
}

double phi_table::phi(int order, double x) const {
    if (order != 1 && order != 2) throw std::domain_error("phi: order must be 1 or 2");
    if (x < 0) throw std::domain_error("phi: x must be >= 0");
    if (x <= 1.0) return 0.0;
    ensure(static_cast<std::size_t>(std::floor(x)) + 1);
    std::shared_lock lock(mutex_);
    return read_phi(order, x);
}

double phi_table::phi_inverse(int order, double y) const {
    if (order != 1 && order != 2) throw std::domain_error("phi_inverse: order must be 1 or 2");
    if (y < 0) throw std::domain_error("phi_inverse: y must be >= 0");
    if (y == 0.0) return 1.0;

    if (auto bracket = limit_bracket(order); bracket && y >= bracket->first)
        throw std::range_error("phi_inverse: y is at or above the series limit estimate");

    // Grow the cache until the table value at the top exceeds y.
    for (;;) {
        {
            std::shared_lock lock(mutex_);
            const auto& tab = order == 1 ? phi1_ : phi2_;
            if (tab.back() > y) {
                // Largest l with Phi(l) <= y, then linear interpolation on [l, l+1].
                auto it = std::upper_bound(tab.begin(), tab.end(), y);
                const std::size_t l = static_cast<std::size_t>(it - tab.begin());  // Phi(l) <= y < Phi(l+1)
                const double base = tab[l - 1];
                if (y == base) return static_cast<double>(l);
                return static_cast<double>(l) + (y - base) / (tab[l] - tab[l - 1]);
            }
            if (tab.size() >= k_max_cache)
                throw std::range_error("phi_inverse: y too close to the series limit for the cache budget");
        }
        ensure(cached_size() * 2);
    }
}

double phi_table::kappa(double t) const {
    if (t < 0) throw std::domain_error("kappa: t must be >= 0");
    if (t == 0.0) return 0.0;
    return phi(2, phi_inverse(1, t));
}

std::optional<std::pair<double, double>> phi_table::tail_bracket(int order, std::size_t from) const {
    // Integral-test bracket for sum_{i >= from} 1/f(i)^order, preset kinds only.
    const double n = static_cast<double>(from);
    switch (f_.kind()) {
        case attachment_kind::constant:
            return std::nullopt;  // divergent for both orders
        case attachment_kind::linear: {
            if (order == 1) return std::nullopt;
            const double b = f_.linear_beta();
            return std::make_pair(1.0 / (n + b), 1.0 / (n - 1.0 + b));
        }
        case attachment_kind::power: {
            const double a = f_.power_alpha() * order;
            if (a <= 1.0) return std::nullopt;
            const double c = std::pow(f_.power_c0(), -static_cast<double>(order));
            return std::make_pair(c * std::pow(n, 1.0 - a) / (a - 1.0),
                                  c * std::pow(n - 1.0, 1.0 - a) / (a - 1.0));
        }
        case attachment_kind::table: {
            // Delegate to the tail rule once the cache has passed the stored range.
            const auto& t = f_.tail();
            switch (t.rule) {
                case table_tail::kind::constant:
                    return std::nullopt;
                case table_tail::kind::linear: {
                    if (order == 1) return std::nullopt;
                    if (from <= f_.table_values().size()) return std::nullopt;  // not yet in tail territory
                    return std::make_pair(1.0 / (n + t.beta), 1.0 / (n - 1.0 + t.beta));
                }
                case table_tail::kind::power: {
                    const double a = t.alpha * order;
                    if (a <= 1.0) return std::nullopt;
                    if (from <= f_.table_values().size()) return std::nullopt;
                    const double c = std::pow(t.c, -static_cast<double>(order));
                    return std::make_pair(c * std::pow(n, 1.0 - a) / (a - 1.0),
                                          c * std::pow(n - 1.0, 1.0 - a) / (a - 1.0));
                }
            }
            return std::nullopt;
        }
    }
    return std::nullopt;
}

std::optional<std::pair<double, double>> phi_table::limit_bracket(int order) const {
    if (order != 1 && order != 2) throw std::domain_error("limit_bracket: order must be 1 or 2");
    // For table kinds the bracket needs the cache to cover the stored range first.
    if (f_.kind() == attachment_kind::table) ensure(f_.table_values().size() + 2);
    std::shared_lock lock(mutex_);
    const auto& tab = order == 1 ? phi1_ : phi2_;
    const std::size_t from = tab.size();  // tab.back() == Phi(from)
    auto tail = tail_bracket(order, from);
    if (!tail) return std::nullopt;
    return std::make_pair(tab.back() + tail->first, tab.back() + tail->second);
}

}  // namespace netarch
