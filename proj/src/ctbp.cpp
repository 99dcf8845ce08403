#include "netarch/ctbp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <queue>
#include <stdexcept>

#include "netarch/errors.hpp"

namespace netarch {

namespace {

struct birth_event {
    double time;
    std::uint32_t node;
};

struct later_first {
    bool operator()(const birth_event& a, const birth_event& b) const {
        if (a.time != b.time) return a.time > b.time;
        return a.node > b.node;  // deterministic order for simultaneous events
    }
};

using event_queue = std::priority_queue<birth_event, std::vector<birth_event>, later_first>;

}  // namespace

double ctbp_tree::arrival_time(std::uint64_t l) const {
    if (l < 1 || l >= nodes_.size()) throw std::out_of_range("ctbp_tree::arrival_time: l out of range");
    return nodes_[l].birth_time;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> ctbp_tree::discrete_view(std::uint64_t l) const {
    if (l < 1 || l >= nodes_.size()) throw std::out_of_range("ctbp_tree::discrete_view: l out of range");
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    edges.reserve(l);
    edges.emplace_back(1u, 0u);  // the root edge joining the two initial individuals
    for (std::uint64_t j = 2; j <= l; ++j)
        edges.emplace_back(static_cast<std::uint32_t>(j), nodes_[j].parent);
    return edges;
}

void ctbp_tree::export_trace_csv(std::ostream& out) const {
    out << "time,parent,child\n";
    for (const auto& ev : trace_) out << ev.time << ',' << ev.parent << ',' << ev.child << '\n';
}

ctbp_tree simulate_roots(const attachment_function& f, std::uint32_t root_count, stop_rule stop,
                         std::uint64_t seed, bool record_trace, std::uint64_t event_cap) {
    ctbp_tree tree;
    splitmix64 rng(seed);
    event_queue queue;

    const auto target_size = [&]() -> std::uint64_t {
        if (const auto* c = std::get_if<stop_at_count>(&stop)) return c->n + 1;
        return UINT64_MAX;
    }();
    const auto time_limit = [&]() -> double {
        if (const auto* t = std::get_if<stop_at_time>(&stop)) return t->t;
        return std::numeric_limits<double>::infinity();
    }();
    if (const auto* c = std::get_if<stop_at_count>(&stop); c && c->n < 1)
        throw std::domain_error("ctbp_simulate: vertex count stop must be >= 1");
    if (time_limit < 0) throw std::domain_error("ctbp_simulate: time stop must be >= 0");

    for (std::uint32_t r = 0; r < root_count; ++r) {
        ctbp_node root;
        root.birth_time = 0.0;
        root.next_birth_time = rng.next_exp() / f(1);
        tree.nodes_.push_back(root);
        queue.push({root.next_birth_time, r});
    }

    std::uint64_t events = 0;
    while (tree.nodes_.size() < target_size) {
        const birth_event ev = queue.top();
        if (ev.time > time_limit) break;
        queue.pop();
        if (++events > event_cap)
            throw resource_error("ctbp_simulate: event budget exhausted");

        tree.clock_ = ev.time;
        ctbp_node& parent = tree.nodes_[ev.node];
        parent.child_count += 1;
        parent.next_birth_time = ev.time + rng.next_exp() / f(parent.child_count + 1);
        queue.push({parent.next_birth_time, ev.node});

        ctbp_node child;
        child.birth_time = ev.time;
        child.parent = ev.node;
        child.next_birth_time = ev.time + rng.next_exp() / f(1);
        const auto child_id = static_cast<std::uint32_t>(tree.nodes_.size());
        tree.nodes_.push_back(child);
        queue.push({child.next_birth_time, child_id});
        if (record_trace) tree.trace_.push_back({ev.time, ev.node, child_id});
    }
    if (std::holds_alternative<stop_at_time>(stop)) tree.clock_ = time_limit;
    return tree;
}

ctbp_tree ctbp_simulate(const attachment_function& f, stop_rule stop, std::uint64_t seed,
                        bool record_trace, std::uint64_t event_cap) {
    return simulate_roots(f, 2, stop, seed, record_trace, event_cap);
}

collapsed_result collapsed_simulate(const attachment_function& f, std::uint64_t m,
                                    std::uint64_t n_target, std::uint64_t seed,
                                    std::uint64_t event_cap) {
    if (m <= 1) throw std::domain_error("collapsed_simulate: m must be > 1 (use ctbp_simulate)");
    if (n_target < 1) throw std::domain_error("collapsed_simulate: n_target must be >= 1");

    collapsed_result out;
    out.m = m;
    out.degrees = {static_cast<std::uint32_t>(m), static_cast<std::uint32_t>(m)};
    out.round_times = {0.0, 0.0};  // tau_0 = tau_1 = 0
    splitmix64 rng(seed);
    event_queue queue;

    const auto schedule = [&](std::uint32_t v, double now) {
        const double gap = rng.next_exp() / f(out.degrees[v]);
        queue.push({now + gap, v});
    };
    schedule(0, 0.0);
    schedule(1, 0.0);

    std::vector<std::uint32_t> round_parents;
    round_parents.reserve(m);
    std::uint64_t events = 0;

    for (std::uint64_t l = 2; l <= n_target; ++l) {
        round_parents.clear();
        double now = 0.0;
        while (round_parents.size() < m) {
            const birth_event ev = queue.top();
            queue.pop();
            if (++events > event_cap)
                throw resource_error("collapsed_simulate: event budget exhausted");
            now = ev.time;
            round_parents.push_back(ev.node);
            out.degrees[ev.node] += 1;  // the parent's clock rate rises immediately
            schedule(ev.node, now);
        }
        // Collapse the m newborns into vertex l with degree exactly m.
        const auto v = static_cast<std::uint32_t>(l);
        out.degrees.push_back(static_cast<std::uint32_t>(m));
        for (std::uint32_t p : round_parents) out.edges.emplace_back(v, p);
        out.round_times.push_back(now);
        schedule(v, now);
    }
    return out;
}

double sample_winfty(const attachment_function& f, double lambda_star, double t_max,
                     std::uint64_t seed, std::uint64_t event_cap) {
    if (!(t_max >= 0)) throw std::domain_error("sample_winfty: t_max must be >= 0");
    ctbp_tree tree = simulate_roots(f, 1, stop_at_time{t_max}, seed, false, event_cap);
    return std::exp(-lambda_star * t_max) * static_cast<double>(tree.size());
}

double sample_tn_drift(const attachment_function& f, double lambda_star, std::uint64_t n,
                       std::uint64_t seed, std::uint64_t event_cap) {
    if (n < 2) throw std::domain_error("sample_tn_drift: n must be >= 2");
    ctbp_tree tree = ctbp_simulate(f, stop_at_count{n}, seed, false, event_cap);
    return tree.arrival_time(n) - std::log(static_cast<double>(n)) / lambda_star;
}

std::vector<double> martingale_path(const attachment_function& f, std::uint64_t a,
                                    std::span<const double> t_grid, std::uint64_t seed,
                                    std::uint64_t event_cap) {
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        if (t_grid[i] < 0) throw std::domain_error("martingale_path: grid times must be >= 0");
        if (i > 0 && t_grid[i] < t_grid[i - 1])
            throw std::domain_error("martingale_path: grid must be nondecreasing");
    }
    std::vector<double> values;
    values.reserve(t_grid.size());
    if (t_grid.empty()) return values;

    splitmix64 rng(seed);
    double clock = 0.0;       // time of the last birth of xi_A
    double harmonic = 0.0;    // sum_{i <= births} 1 / f(a + i)
    std::uint64_t births = 0;
    double next_gap = rng.next_exp() / f(a + 1);

    for (double t : t_grid) {
        while (clock + next_gap <= t) {
            if (births + 1 > event_cap) throw resource_error("martingale_path: event budget exhausted");
            clock += next_gap;
            births += 1;
            harmonic += 1.0 / f(a + births);
            next_gap = rng.next_exp() / f(a + births + 1);
        }
        values.push_back(harmonic - t);
    }
    return values;
}

}  // namespace netarch
