#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "netarch/attachment.hpp"
#include "netarch/rng.hpp"

namespace netarch {

// Stop rule for continuous-time simulations: run until the population holds
// n + 1 individuals, or until the clock passes t.
struct stop_at_count {
    std::uint64_t n;
};
struct stop_at_time {
    double t;
};
using stop_rule = std::variant<stop_at_count, stop_at_time>;

constexpr std::uint64_t k_default_event_cap = 50'000'000;

struct ctbp_node {
    double birth_time = 0.0;
    std::uint32_t parent = UINT32_MAX;  // UINT32_MAX marks a root
    std::uint32_t child_count = 0;
    double next_birth_time = 0.0;
};

struct trace_event {
    double time;
    std::uint32_t parent;
    std::uint32_t child;
};

// Continuous-time branching process started from two roots at time zero. Every
// individual reproduces by a point process whose gap to its (j+1)-th child is an
// independent Exp(1) / f(j+1) variate. Individuals are stored in birth order, so
// node l is vertex v_l and its birth time is the arrival time T_l (T_1 = 0).
class ctbp_tree {
public:
    const std::vector<ctbp_node>& nodes() const { return nodes_; }
    std::size_t size() const { return nodes_.size(); }
    double clock() const { return clock_; }

    // T_l: birth time of v_l, l >= 1.
    double arrival_time(std::uint64_t l) const;

    // The first l + 1 individuals with the root edge v0-v1 added, as a
    // birth-ordered (child, parent) edge list.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> discrete_view(std::uint64_t l) const;

    const std::vector<trace_event>& trace() const { return trace_; }
    void export_trace_csv(std::ostream& out) const;

private:
    friend ctbp_tree simulate_roots(const attachment_function&, std::uint32_t, stop_rule,
                                    std::uint64_t, bool, std::uint64_t);

    std::vector<ctbp_node> nodes_;
    std::vector<trace_event> trace_;
    double clock_ = 0.0;
};

// Shared engine behind ctbp_simulate (two roots) and sample_winfty (one root).
ctbp_tree simulate_roots(const attachment_function& f, std::uint32_t root_count, stop_rule stop,
                         std::uint64_t seed, bool record_trace, std::uint64_t event_cap);

// Two-root simulation (the embedding of the m = 1 discrete process).
ctbp_tree ctbp_simulate(const attachment_function& f, stop_rule stop, std::uint64_t seed,
                        bool record_trace = false, std::uint64_t event_cap = k_default_event_cap);

// Collapsed continuous-time construction for m > 1: existing vertices reproduce
// with degree-dependent clocks, newborns stay inert, and each batch of m newborns
// collapses into one vertex of degree m.
struct collapsed_result {
    std::uint64_t m = 0;
    std::vector<std::uint32_t> degrees;                              // by vertex index
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;      // (child, parent) per round, birth order
    std::vector<double> round_times;                                 // tau_l, round_times[l] for l >= 1
};

collapsed_result collapsed_simulate(const attachment_function& f, std::uint64_t m,
                                    std::uint64_t n_target, std::uint64_t seed,
                                    std::uint64_t event_cap = k_default_event_cap);

// One sample of e^{-lambda* t_max} |BP_f(t_max)| from a single-root process.
double sample_winfty(const attachment_function& f, double lambda_star, double t_max,
                     std::uint64_t seed, std::uint64_t event_cap = k_default_event_cap);

// One sample of T_n - log(n)/lambda* from the two-root process.
double sample_tn_drift(const attachment_function& f, double lambda_star, std::uint64_t n,
                       std::uint64_t seed, std::uint64_t event_cap = k_default_event_cap);

// One path of the degree-tracking process M_A(t) = sum_{i <= xi_A(t)} 1/f(A+i) - t,
// evaluated at each grid time. The grid must be nondecreasing and nonnegative.
std::vector<double> martingale_path(const attachment_function& f, std::uint64_t a,
                                    std::span<const double> t_grid, std::uint64_t seed,
                                    std::uint64_t event_cap = k_default_event_cap);

}  // namespace netarch
