#include "netarch/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "netarch/analytics.hpp"
#include "netarch/ctbp.hpp"
#include "netarch/generator.hpp"
#include "netarch/rng.hpp"
#include "netarch/rootfind.hpp"
#include "netarch/stats.hpp"

namespace netarch {

experiment_config experiment_config::from_json(const nlohmann::json& j) {
    const std::string version = j.value("version", "");
    if (version != "netarch-config v1")
        throw std::domain_error("experiment config: expected version \"netarch-config v1\"");
    experiment_config cfg;
    cfg.experiment = j.at("experiment").get<std::string>();
    cfg.f = attachment_function::from_json(j.at("f"));
    cfg.m = j.value("m", std::uint64_t{1});
    cfg.n = j.value("n", std::uint64_t{0});
    if (j.contains("checkpoints")) {
        cfg.checkpoints = j.at("checkpoints").get<std::vector<std::uint64_t>>();
        if (!std::is_sorted(cfg.checkpoints.begin(), cfg.checkpoints.end()))
            throw std::domain_error("experiment config: checkpoints must be sorted ascending");
    }
    cfg.replications = j.at("replications").get<std::uint64_t>();
    if (cfg.replications < 1) throw std::domain_error("experiment config: replications must be >= 1");
    cfg.master_seed = j.at("master_seed").get<std::uint64_t>();
    cfg.workers = j.value("workers", 0u);
    cfg.out = j.value("out", "");
    cfg.summary_out = j.value("summary_out", "");
    if (j.contains("params")) cfg.params = j.at("params");
    if (cfg.params.contains("epsilon")) {
        const double eps = cfg.params.at("epsilon").get<double>();
        if (!(eps > 0) || !(eps < 1))
            throw std::domain_error("experiment config: epsilon must lie in (0,1)");
    }
    return cfg;
}

std::string experiment_result::jsonl() const {
    std::string out;
    for (const auto& rec : records) {
        out += rec.dump();
        out += '\n';
    }
    return out;
}

unsigned resolve_workers(unsigned requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

std::vector<nlohmann::json> run_replications(
    std::uint64_t replications, std::uint64_t master_seed, unsigned workers,
    const std::function<nlohmann::json(std::uint64_t, std::uint64_t)>& body) {
    std::vector<nlohmann::json> records(replications);
    const auto pool = static_cast<unsigned>(
        std::min<std::uint64_t>(resolve_workers(workers), replications));
    if (pool <= 1) {
        for (std::uint64_t i = 0; i < replications; ++i)
            records[i] = body(i, derive_seed(master_seed, i));
        return records;
    }
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> threads;
    threads.reserve(pool);
    for (unsigned w = 0; w < pool; ++w) {
        threads.emplace_back([&]() {
            for (;;) {
                const std::uint64_t i = next.fetch_add(1);
                if (i >= replications) return;
                try {
                    records[i] = body(i, derive_seed(master_seed, i));
                } catch (...) {
                    std::scoped_lock lock(error_mutex);
                    if (!error) error = std::current_exception();
                    next.store(replications);
                    return;
                }
            }
        });
    }
    for (auto& t : threads) t.join();
    if (error) std::rethrow_exception(error);
    return records;
}

namespace {

std::vector<std::uint64_t> read_u64_list(const nlohmann::json& params, const std::string& key) {
    if (!params.contains(key)) throw std::domain_error("experiment config: missing params." + key);
    return params.at(key).get<std::vector<std::uint64_t>>();
}

double lambda_star_for(const experiment_config& cfg) {
    if (cfg.params.contains("lambda_star")) return cfg.params.at("lambda_star").get<double>();
    return malthusian_rate(cfg.f).lambda_star;
}

nlohmann::json wilson_json(std::uint64_t hits, std::uint64_t n) {
    const auto w = wilson(hits, n);
    return {{"lo", w.lo}, {"hi", w.hi}};
}

struct timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

}  // namespace

std::optional<std::uint64_t> budget_estimate(const std::vector<std::uint64_t>& k_grid,
                                             const std::vector<std::uint64_t>& hits,
                                             std::uint64_t replications, double epsilon) {
    for (std::size_t i = 0; i < k_grid.size(); ++i)
        if (wilson(hits[i], replications).lo >= 1.0 - epsilon) return k_grid[i];
    return std::nullopt;
}

// --------------------------------------------------------------------------
// root-hit: per replication, the smallest K at which the root enters the top-K
// (the root's rank under the fixed tie-break); aggregated over a K grid.

experiment_result run_root_hit_curve(const experiment_config& cfg) {
    timer t;
    auto k_grid = read_u64_list(cfg.params, "k_grid");
    if (cfg.n < 1) throw std::domain_error("root-hit: n must be >= 1");
    if (k_grid.empty() || !std::is_sorted(k_grid.begin(), k_grid.end()))
        throw std::domain_error("root-hit: k_grid must be sorted and nonempty");
    for (auto k : k_grid)
        if (k < 1 || k > cfg.n + 1) throw std::domain_error("root-hit: K grid outside [1, n+1]");

    experiment_result res;
    res.records = run_replications(
        cfg.replications, cfg.master_seed, cfg.workers,
        [&](std::uint64_t i, std::uint64_t seed) -> nlohmann::json {
            evolving_graph g(cfg.m, cfg.f, seed);
            g.grow_to(cfg.n);
            return {{"rep", i}, {"seed", seed}, {"root_rank", root_rank(g.view())}};
        });

    std::vector<std::uint64_t> hits(k_grid.size(), 0);
    for (const auto& rec : res.records) {
        const auto rank = rec.at("root_rank").get<std::uint64_t>();
        for (std::size_t j = 0; j < k_grid.size(); ++j)
            if (rank <= k_grid[j]) ++hits[j];
    }

    nlohmann::json rows = nlohmann::json::array();
    std::vector<double> log_k, log_miss;
    std::ostringstream csv;
    csv << "k,hits,replications,p_hat,wilson_lo,wilson_hi\n";
    for (std::size_t j = 0; j < k_grid.size(); ++j) {
        const auto w = wilson(hits[j], cfg.replications);
        const double p = static_cast<double>(hits[j]) / static_cast<double>(cfg.replications);
        rows.push_back({{"k", k_grid[j]},
                        {"hits", hits[j]},
                        {"replications", cfg.replications},
                        {"p_hat", p},
                        {"wilson", wilson_json(hits[j], cfg.replications)}});
        csv << k_grid[j] << ',' << hits[j] << ',' << cfg.replications << ',' << p << ',' << w.lo
            << ',' << w.hi << '\n';
        if (hits[j] < cfg.replications && p < 1.0) {
            log_k.push_back(std::log(static_cast<double>(k_grid[j])));
            log_miss.push_back(std::log(1.0 - p));
        }
    }
    res.summary["curve"] = rows;
    if (log_k.size() >= 3) {
        const auto fit = ols(log_k, log_miss);
        res.summary["miss_slope"] = {{"slope", fit.slope},
                                     {"intercept", fit.intercept},
                                     {"slope_se", fit.slope_se},
                                     {"points", log_k.size()}};
    }
    if (cfg.params.contains("epsilon")) {
        const double eps = cfg.params.at("epsilon").get<double>();
        const auto k_hat = budget_estimate(k_grid, hits, cfg.replications, eps);
        res.summary["budget"] = {{"epsilon", eps},
                                 {"k_hat", k_hat ? nlohmann::json(*k_hat) : nlohmann::json(nullptr)}};
    }
    res.summary_csv = csv.str();
    res.wall_seconds = t.seconds();
    return res;
}

// --------------------------------------------------------------------------
// ak-event: indicator of the configuration event (root degree <= d* in G_K and
// at least floor(beta K) other vertices of degree >= d*) per K on a grid.

experiment_result run_event_ak(const experiment_config& cfg) {
    timer t;
    auto k_grid = read_u64_list(cfg.params, "k_grid");
    if (k_grid.empty() || !std::is_sorted(k_grid.begin(), k_grid.end()))
        throw std::domain_error("ak-event: k_grid must be sorted and nonempty");
    if (k_grid.front() < 2) throw std::domain_error("ak-event: k_grid entries must be >= 2");
    const auto d_star = cfg.params.value("d_star", cfg.m);
    const double beta_frac = cfg.params.value("beta_frac", 1.0);
    if (d_star < cfg.m) throw std::domain_error("ak-event: d_star must be >= m");
    if (!(beta_frac > 0) || beta_frac > 1.0)
        throw std::domain_error("ak-event: beta_frac must lie in (0,1]");

    experiment_result res;
    res.records = run_replications(
        cfg.replications, cfg.master_seed, cfg.workers,
        [&](std::uint64_t i, std::uint64_t seed) -> nlohmann::json {
            evolving_graph g(cfg.m, cfg.f, seed);
            std::vector<int> indicators;
            indicators.reserve(k_grid.size());
            g.grow_to(k_grid.back(), k_grid, [&](const evolving_graph& snap) {
                const auto& deg = snap.degrees();
                const std::uint64_t k = snap.arrivals();
                const auto need = static_cast<std::uint64_t>(
                    std::floor(beta_frac * static_cast<double>(k)));
                bool ok = deg[0] <= d_star;
                if (ok) {
                    std::uint64_t others = 0;
                    for (std::size_t v = 1; v < deg.size() && others < need; ++v)
                        if (deg[v] >= d_star) ++others;
                    ok = others >= need;
                }
                indicators.push_back(ok ? 1 : 0);
            });
            return {{"rep", i}, {"seed", seed}, {"event", indicators}};
        });

    std::vector<std::uint64_t> hits(k_grid.size(), 0);
    for (const auto& rec : res.records) {
        const auto& ind = rec.at("event");
        for (std::size_t j = 0; j < k_grid.size(); ++j)
            hits[j] += ind[j].get<int>();
    }

    nlohmann::json rows = nlohmann::json::array();
    std::vector<double> log_k, log_p;
    std::ostringstream csv;
    csv << "k,hits,replications,p_hat,wilson_lo,wilson_hi\n";
    for (std::size_t j = 0; j < k_grid.size(); ++j) {
        const double p = static_cast<double>(hits[j]) / static_cast<double>(cfg.replications);
        const auto w = wilson(hits[j], cfg.replications);
        rows.push_back({{"k", k_grid[j]},
                        {"hits", hits[j]},
                        {"replications", cfg.replications},
                        {"p_hat", p},
                        {"wilson", wilson_json(hits[j], cfg.replications)}});
        csv << k_grid[j] << ',' << hits[j] << ',' << cfg.replications << ',' << p << ',' << w.lo
            << ',' << w.hi << '\n';
        if (hits[j] > 0) {
            log_k.push_back(std::log(static_cast<double>(k_grid[j])));
            log_p.push_back(std::log(p));
        }
    }
    res.summary["curve"] = rows;
    if (log_k.size() >= 3) {
        const auto fit = ols(log_k, log_p);
        res.summary["slope"] = {{"slope", fit.slope},
                                {"intercept", fit.intercept},
                                {"slope_se", fit.slope_se},
                                {"points", log_k.size()}};
    }
    res.summary_csv = csv.str();
    res.wall_seconds = t.seconds();
    return res;
}

// --------------------------------------------------------------------------
// persistence: ordered top-K tuple at each checkpoint; change count and the
// index of the last checkpoint where the tuple differed from its predecessor.

experiment_result run_persistence(const experiment_config& cfg) {
    timer t;
    if (cfg.checkpoints.size() < 2)
        throw std::domain_error("persistence: need at least two checkpoints");
    if (cfg.checkpoints.front() < 2)
        throw std::domain_error("persistence: checkpoints must be >= 2");
    const auto k = cfg.params.value("k_top", std::uint64_t{1});

    experiment_result res;
    res.records = run_replications(
        cfg.replications, cfg.master_seed, cfg.workers,
        [&](std::uint64_t i, std::uint64_t seed) -> nlohmann::json {
            evolving_graph g(cfg.m, cfg.f, seed);
            std::vector<std::vector<std::uint32_t>> tuples;
            tuples.reserve(cfg.checkpoints.size());
            g.grow_to(cfg.checkpoints.back(), cfg.checkpoints, [&](const evolving_graph& snap) {
                tuples.push_back(topk_tuple(snap.view(), k));
            });
            std::uint64_t changes = 0, last_change = 0;
            for (std::size_t j = 1; j < tuples.size(); ++j) {
                if (tuples[j] != tuples[j - 1]) {
                    ++changes;
                    last_change = j;
                }
            }
            return {{"rep", i}, {"seed", seed}, {"changes", changes}, {"last_change", last_change}};
        });

    std::vector<double> changes;
    changes.reserve(res.records.size());
    for (const auto& rec : res.records)
        changes.push_back(rec.at("changes").get<double>());
    const auto s = summarize(changes);
    res.summary = {{"k_top", k},
                   {"checkpoints", cfg.checkpoints},
                   {"median_changes", s.median},
                   {"mean_changes", s.mean},
                   {"max_changes", s.max}};
    std::ostringstream csv;
    csv << "median_changes,mean_changes,max_changes\n"
        << s.median << ',' << s.mean << ',' << s.max << '\n';
    res.summary_csv = csv.str();
    res.wall_seconds = t.seconds();
    return res;
}

// --------------------------------------------------------------------------
// maxdeg-age: birth index of the youngest maximal-degree vertex and the ratio
// log(I*_n) / K(log(n)/lambda*).

experiment_result run_maxdeg_age(const experiment_config& cfg) {
    timer t;
    if (cfg.m != 1) throw std::domain_error("maxdeg-age: defined for m = 1");
    if (cfg.n < 10) throw std::domain_error("maxdeg-age: n must be >= 10");
    const double lambda = lambda_star_for(cfg);
    phi_table phi(cfg.f);
    const double scale = phi.kappa(std::log(static_cast<double>(cfg.n)) / lambda);
    if (!(scale > 0)) throw std::domain_error("maxdeg-age: degenerate kappa scale");

    experiment_result res;
    res.records = run_replications(
        cfg.replications, cfg.master_seed, cfg.workers,
        [&](std::uint64_t i, std::uint64_t seed) -> nlohmann::json {
            evolving_graph g(cfg.m, cfg.f, seed);
            g.grow_to(cfg.n);
            const std::uint32_t istar = vmax(g.view());
            const double ratio =
                istar >= 1 ? std::log(static_cast<double>(istar)) / scale : 0.0;
            return {{"rep", i}, {"seed", seed}, {"istar", istar}, {"ratio", ratio}};
        });

    std::vector<double> ratios;
    ratios.reserve(res.records.size());
    for (const auto& rec : res.records) ratios.push_back(rec.at("ratio").get<double>());
    const auto s = summarize(ratios);
    res.summary = {{"lambda_star", lambda},
                   {"kappa_scale", scale},
                   {"target", lambda * lambda / 2.0},
                   {"ratio_q25", s.q25},
                   {"ratio_median", s.median},
                   {"ratio_q75", s.q75},
                   {"ratio_mean", s.mean}};
    std::ostringstream csv;
    csv << "target,ratio_q25,ratio_median,ratio_q75,ratio_mean\n"
        << lambda * lambda / 2.0 << ',' << s.q25 << ',' << s.median << ',' << s.q75 << ',' << s.mean
        << '\n';
    res.summary_csv = csv.str();
    res.wall_seconds = t.seconds();
    return res;
}

// --------------------------------------------------------------------------
// neighborhood: containment of the root in the ball around the youngest
// maximal-degree vertex, for every c1 on a grid, sharing seeds across c1.

experiment_result run_neighborhood(const experiment_config& cfg) {
    timer t;
    if (cfg.m != 1) throw std::domain_error("neighborhood: defined for m = 1");
    std::vector<double> c1_grid;
    if (cfg.params.contains("c1_grid"))
        c1_grid = cfg.params.at("c1_grid").get<std::vector<double>>();
    else
        c1_grid = {cfg.params.value("c1", 2.0)};
    if (c1_grid.empty() || !std::is_sorted(c1_grid.begin(), c1_grid.end()))
        throw std::domain_error("neighborhood: c1 grid must be sorted and nonempty");

    const double lambda = lambda_star_for(cfg);
    phi_table phi(cfg.f);
    const double kappa_log_n = phi.kappa(std::log(static_cast<double>(cfg.n)) / lambda);

    std::vector<std::uint32_t> radii;
    std::vector<std::optional<double>> bounds;
    for (double c1 : c1_grid) {
        const double r_n = c1 * lambda * kappa_log_n;
        radii.push_back(static_cast<std::uint32_t>(std::ceil(r_n)));
        std::optional<double> bn;
        if (const auto alpha = cfg.f.alpha_bound(); alpha && *alpha > 0 && *alpha <= 0.5 && r_n > 0) {
            try {
                bn = budget_bn(cfg.n, r_n, *alpha, lambda);
            } catch (const std::domain_error&) {
            }
        }
        bounds.push_back(bn);
    }

    experiment_result res;
    res.records = run_replications(
        cfg.replications, cfg.master_seed, cfg.workers,
        [&](std::uint64_t i, std::uint64_t seed) -> nlohmann::json {
            evolving_graph g(cfg.m, cfg.f, seed);
            g.grow_to(cfg.n);
            const auto view = g.view();
            const auto adj = adjacency::build(view);
            const auto dist = bfs_distances(adj, vmax(view));
            // One BFS serves every radius: size = #{dist <= r}, containment = dist(v0) <= r.
            std::vector<std::uint32_t> hist;
            for (std::uint32_t d : dist) {
                if (d >= hist.size()) hist.resize(d + 1, 0);
                ++hist[d];
            }
            std::vector<std::uint64_t> cum(hist.size());
            std::uint64_t acc = 0;
            for (std::size_t d = 0; d < hist.size(); ++d) {
                acc += hist[d];
                cum[d] = acc;
            }
            nlohmann::json sizes = nlohmann::json::array();
            nlohmann::json contains = nlohmann::json::array();
            for (std::uint32_t r : radii) {
                const std::uint64_t size =
                    r < cum.size() ? cum[r] : static_cast<std::uint64_t>(view.vertex_count());
                sizes.push_back(size);
                contains.push_back(dist[0] <= r);
            }
            return {{"rep", i},
                    {"seed", seed},
                    {"dist_root_vmax", dist[0]},
                    {"sizes", sizes},
                    {"contains", contains}};
        });

    nlohmann::json rows = nlohmann::json::array();
    std::ostringstream csv;
    csv << "c1,radius,contain_freq,size_q25,size_median,size_q75,bn,frac_within_bn\n";
    for (std::size_t j = 0; j < c1_grid.size(); ++j) {
        std::uint64_t contained = 0, within_bn = 0;
        std::vector<double> sizes;
        sizes.reserve(res.records.size());
        for (const auto& rec : res.records) {
            const auto size = rec.at("sizes")[j].get<std::uint64_t>();
            sizes.push_back(static_cast<double>(size));
            if (rec.at("contains")[j].get<bool>()) ++contained;
            if (bounds[j] && static_cast<double>(size) <= *bounds[j]) ++within_bn;
        }
        const auto s = summarize(sizes);
        const double freq =
            static_cast<double>(contained) / static_cast<double>(res.records.size());
        rows.push_back(
            {{"c1", c1_grid[j]},
             {"radius", radii[j]},
             {"contain_freq", freq},
             {"contained", contained},
             {"size_q25", s.q25},
             {"size_median", s.median},
             {"size_q75", s.q75},
             {"bn", bounds[j] ? nlohmann::json(*bounds[j]) : nlohmann::json(nullptr)},
             {"frac_within_bn",
              bounds[j] ? nlohmann::json(static_cast<double>(within_bn) /
                                         static_cast<double>(res.records.size()))
                        : nlohmann::json(nullptr)}});
        csv << c1_grid[j] << ',' << radii[j] << ',' << freq << ',' << s.q25 << ',' << s.median
            << ',' << s.q75 << ',';
        if (bounds[j])
            csv << *bounds[j] << ','
                << static_cast<double>(within_bn) / static_cast<double>(res.records.size());
        else
            csv << ",";
        csv << '\n';
    }
    res.summary = {{"lambda_star", lambda}, {"kappa_log_n", kappa_log_n}, {"per_c1", rows}};
    res.summary_csv = csv.str();
    res.wall_seconds = t.seconds();
    return res;
}

// --------------------------------------------------------------------------
// embedding: two-sample chi-square comparison of (root degree, max degree) at
// size l between the discrete generator and a continuous-time arm.

namespace {

struct degree_pair {
    std::int64_t root;
    std::int64_t max;
};

degree_pair degrees_from_edges(const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges,
                               std::size_t vertex_count) {
    std::vector<std::uint32_t> deg(vertex_count, 0);
    for (const auto& [c, p] : edges) {
        ++deg[c];
        ++deg[p];
    }
    return {deg[0], *std::max_element(deg.begin(), deg.end())};
}

}  // namespace

experiment_result run_embedding(const experiment_config& cfg) {
    timer t;
    const auto l = cfg.params.value("l", std::uint64_t{20});
    const std::string arm = cfg.params.value("arm", cfg.m > 1 ? "collapsed" : "ctbp");
    if (l < 1) throw std::domain_error("embedding: l must be >= 1");
    if (arm == "collapsed" && cfg.m <= 1)
        throw std::domain_error("embedding: collapsed arm requires m > 1");
    if (arm == "ctbp" && cfg.m != 1) throw std::domain_error("embedding: ctbp arm requires m = 1");

    // Replications 0..R-1 drive the generator arm, R..2R-1 the continuous arm
    // (or a second generator stream for the null check).
    const std::uint64_t r = cfg.replications;
    experiment_result res;
    res.records = run_replications(
        2 * r, cfg.master_seed, cfg.workers,
        [&](std::uint64_t i, std::uint64_t seed) -> nlohmann::json {
            const bool first_arm = i < r;
            degree_pair d{};
            if (first_arm || arm == "generator") {
                evolving_graph g(cfg.m, cfg.f, seed);
                g.grow_to(l);
                const auto& deg = g.degrees();
                d.root = deg[0];
                d.max = *std::max_element(deg.begin(), deg.end());
            } else if (arm == "ctbp") {
                const auto tree = ctbp_simulate(cfg.f, stop_at_count{l}, seed);
                d = degrees_from_edges(tree.discrete_view(l), l + 1);
            } else {
                const auto cbp = collapsed_simulate(cfg.f, cfg.m, l, seed);
                d.root = cbp.degrees[0];
                d.max = *std::max_element(cbp.degrees.begin(), cbp.degrees.end());
            }
            return {{"rep", i},
                    {"seed", seed},
                    {"arm", first_arm ? "generator" : arm},
                    {"root_degree", d.root},
                    {"max_degree", d.max}};
        });

    std::map<std::int64_t, std::uint64_t> root_a, root_b, max_a, max_b;
    for (const auto& rec : res.records) {
        const bool first_arm = rec.at("rep").get<std::uint64_t>() < r;
        auto& root = first_arm ? root_a : root_b;
        auto& max = first_arm ? max_a : max_b;
        ++root[rec.at("root_degree").get<std::int64_t>()];
        ++max[rec.at("max_degree").get<std::int64_t>()];
    }
    const auto root_test = chi2_two_sample(root_a, root_b);
    const auto max_test = chi2_two_sample(max_a, max_b);
    res.summary = {{"l", l},
                   {"arm", arm},
                   {"root_degree",
                    {{"statistic", root_test.statistic},
                     {"df", root_test.df},
                     {"p_value", root_test.p_value}}},
                   {"max_degree",
                    {{"statistic", max_test.statistic},
                     {"df", max_test.df},
                     {"p_value", max_test.p_value}}}};
    std::ostringstream csv;
    csv << "statistic,arm,chi2,df,p_value\n";
    csv << "root_degree," << arm << ',' << root_test.statistic << ',' << root_test.df << ','
        << root_test.p_value << '\n';
    csv << "max_degree," << arm << ',' << max_test.statistic << ',' << max_test.df << ','
        << max_test.p_value << '\n';
    res.summary_csv = csv.str();
    res.wall_seconds = t.seconds();
    return res;
}

// --------------------------------------------------------------------------
// tn-drift: samples of T_n - log(n)/lambda*.

experiment_result run_tn_drift(const experiment_config& cfg) {
    timer t;
    if (cfg.m != 1) throw std::domain_error("tn-drift: defined for m = 1");
    if (cfg.n < 2) throw std::domain_error("tn-drift: n must be >= 2");
    const double lambda = lambda_star_for(cfg);

    experiment_result res;
    res.records = run_replications(
        cfg.replications, cfg.master_seed, cfg.workers,
        [&](std::uint64_t i, std::uint64_t seed) -> nlohmann::json {
            const double drift = sample_tn_drift(cfg.f, lambda, cfg.n, seed);
            return {{"rep", i}, {"seed", seed}, {"drift", drift}};
        });

    std::vector<double> drifts;
    drifts.reserve(res.records.size());
    for (const auto& rec : res.records) drifts.push_back(rec.at("drift").get<double>());
    const auto s = summarize(drifts);
    res.summary = {{"lambda_star", lambda},
                   {"mean", s.mean},
                   {"variance", s.variance},
                   {"se", std::sqrt(s.variance / static_cast<double>(s.count))},
                   {"q25", s.q25},
                   {"median", s.median},
                   {"q75", s.q75}};
    std::ostringstream csv;
    csv << "mean,variance,se,q25,median,q75\n"
        << s.mean << ',' << s.variance << ','
        << std::sqrt(s.variance / static_cast<double>(s.count)) << ',' << s.q25 << ',' << s.median
        << ',' << s.q75 << '\n';
    res.summary_csv = csv.str();
    res.wall_seconds = t.seconds();
    return res;
}

// --------------------------------------------------------------------------
// winfty: samples of e^{-lambda* t_max} |BP_f(t_max)|.

experiment_result run_winfty(const experiment_config& cfg) {
    timer t;
    const double t_max = cfg.params.value("t_max", 8.0);
    const double lambda = lambda_star_for(cfg);

    experiment_result res;
    res.records = run_replications(
        cfg.replications, cfg.master_seed, cfg.workers,
        [&](std::uint64_t i, std::uint64_t seed) -> nlohmann::json {
            const double w = sample_winfty(cfg.f, lambda, t_max, seed);
            return {{"rep", i}, {"seed", seed}, {"w", w}};
        });

    std::vector<double> ws;
    ws.reserve(res.records.size());
    for (const auto& rec : res.records) ws.push_back(rec.at("w").get<double>());
    const auto s = summarize(ws);
    res.summary = {{"lambda_star", lambda},
                   {"t_max", t_max},
                   {"mean", s.mean},
                   {"variance", s.variance},
                   {"se", std::sqrt(s.variance / static_cast<double>(s.count))},
                   {"median", s.median},
                   {"ks_to_exp1", ks_distance_exp1(ws)}};
    std::ostringstream csv;
    csv << "t_max,mean,se,median,ks_to_exp1\n"
        << t_max << ',' << s.mean << ',' << std::sqrt(s.variance / static_cast<double>(s.count))
        << ',' << s.median << ',' << ks_distance_exp1(ws) << '\n';
    res.summary_csv = csv.str();
    res.wall_seconds = t.seconds();
    return res;
}

experiment_result run_experiment(const experiment_config& cfg) {
    if (cfg.experiment == "root-hit") return run_root_hit_curve(cfg);
    if (cfg.experiment == "ak-event") return run_event_ak(cfg);
    if (cfg.experiment == "persistence") return run_persistence(cfg);
    if (cfg.experiment == "maxdeg-age") return run_maxdeg_age(cfg);
    if (cfg.experiment == "neighborhood") return run_neighborhood(cfg);
    if (cfg.experiment == "embedding") return run_embedding(cfg);
    if (cfg.experiment == "tn-drift") return run_tn_drift(cfg);
    if (cfg.experiment == "winfty") return run_winfty(cfg);
    throw std::domain_error("unknown experiment kind: " + cfg.experiment);
}

}  // namespace netarch
