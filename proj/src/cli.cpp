#include "netarch/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "netarch/analytics.hpp"
#include "netarch/ctbp.hpp"
#include "netarch/errors.hpp"
#include "netarch/experiments.hpp"
#include "netarch/generator.hpp"
#include "netarch/rootfind.hpp"
#include "netarch/stats.hpp"

namespace netarch::cli {

namespace {

attachment_function parse_f(const std::string& f_json) {
    return attachment_function::from_json(nlohmann::json::parse(f_json));
}

void write_file(const std::string& path, const std::string& content, std::ostream& out) {
    if (path == "-") {
        out << content;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file: " + path);
    file << content;
}

evolving_graph load_graph(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open graph file: " + path);
    return evolving_graph::import_edge_list(in);
}

unsigned workers_from_env(unsigned flag_value) {
    if (flag_value > 0) return flag_value;
    if (const char* env = std::getenv("NETARCH_WORKERS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return 0;
}

// --- analytic subcommands -------------------------------------------------

int cmd_analytic(const std::string& quantity, const std::string& f_json, double theta, double x,
                 std::uint64_t n, double c1, std::optional<double> lambda_opt,
                 std::optional<double> rn_opt, std::optional<double> alpha_opt, double epsilon,
                 const std::string& regime_name, int m, double beta, double f_star, double delta,
                 double c_f, double f_m, double tol, std::ostream& out) {
    nlohmann::json result;
    if (quantity == "malthusian") {
        const auto f = parse_f(f_json);
        result = malthusian_rate(f, tol).to_json();
    } else if (quantity == "muhat") {
        const auto f = parse_f(f_json);
        const auto r = muhat_detail(f, theta, tol);
        result = {{"theta", theta}, {"value", r.value}, {"terms", r.terms}, {"exact", r.exact}};
    } else if (quantity == "alpha-star") {
        const auto f = parse_f(f_json);
        const double lambda = lambda_opt ? *lambda_opt : malthusian_rate(f).lambda_star;
        result = {{"x", x}, {"lambda_star", lambda}, {"value", tilde_alpha_star(f, lambda, x)}};
    } else if (quantity == "rn") {
        const auto f = parse_f(f_json);
        const double lambda = lambda_opt ? *lambda_opt : malthusian_rate(f).lambda_star;
        phi_table phi(f);
        result = {{"n", n}, {"c1", c1}, {"lambda_star", lambda},
                  {"value", radius_rn(n, lambda, c1, phi)}};
    } else if (quantity == "bn") {
        const auto f = parse_f(f_json);
        const double lambda = lambda_opt ? *lambda_opt : malthusian_rate(f).lambda_star;
        double r_n;
        if (rn_opt) {
            r_n = *rn_opt;
        } else {
            phi_table phi(f);
            r_n = radius_rn(n, lambda, c1, phi);
        }
        const auto alpha = alpha_opt ? alpha_opt : f.alpha_bound();
        if (!alpha) throw std::domain_error("bn: no alpha bound available; pass --alpha");
        result = {{"n", n}, {"r_n", r_n}, {"alpha", *alpha}, {"lambda_star", lambda},
                  {"value", budget_bn(n, r_n, *alpha, lambda)}};
    } else if (quantity == "budget") {
        budget_regime reg;
        if (regime_name == "linear") {
            reg = budget_regime::linear(m, beta);
        } else if (regime_name == "general-tree") {
            if (!lambda_opt) throw std::domain_error("budget general-tree: pass --lambda-star");
            reg = budget_regime::general_tree(*lambda_opt, f_star, delta);
        } else if (regime_name == "general-m") {
            reg = budget_regime::general_m(c_f, f_star, f_m, m, delta);
        } else {
            throw std::domain_error("budget: unknown regime " + regime_name);
        }
        result = budget_bounds(epsilon, reg).to_json();
    } else {
        throw std::domain_error("unknown analytic quantity: " + quantity);
    }
    out << result.dump() << "\n";
    return 0;
}

// --- validate suites --------------------------------------------------------

int cmd_validate(const std::string& suite, std::uint64_t seed, std::uint64_t reps,
                 std::ostream& out) {
    nlohmann::json report;
    bool pass = false;
    if (suite == "embedding") {
        experiment_config cfg;
        cfg.experiment = "embedding";
        cfg.f = attachment_function::linear(0.0);
        cfg.m = 1;
        cfg.replications = reps ? reps : 20000;
        cfg.master_seed = seed;
        cfg.params = {{"l", 20}, {"arm", "ctbp"}};
        const auto res = run_embedding(cfg);
        const double p_root = res.summary.at("root_degree").at("p_value").get<double>();
        const double p_max = res.summary.at("max_degree").at("p_value").get<double>();
        pass = p_root > 0.01 && p_max > 0.01;
        report = {{"suite", suite}, {"summary", res.summary}, {"pass", pass}};
    } else if (suite == "martingale") {
        const std::uint64_t r = reps ? reps : 20000;
        const std::vector<double> grid{1.0};
        const auto f = attachment_function::linear(0.0);
        auto records = run_replications(r, seed, 0, [&](std::uint64_t i, std::uint64_t s) {
            (void)i;
            return nlohmann::json{{"m1", martingale_path(f, 0, grid, s)[0]}};
        });
        std::vector<double> vals;
        vals.reserve(records.size());
        for (const auto& rec : records) vals.push_back(rec.at("m1").get<double>());
        const auto s = summarize(vals);
        const double se = std::sqrt(s.variance / static_cast<double>(s.count));
        pass = std::abs(s.mean) <= 3.0 * se;
        report = {{"suite", suite}, {"mean", s.mean}, {"se", se}, {"pass", pass}};
    } else if (suite == "drift") {
        experiment_config cfg;
        cfg.experiment = "tn-drift";
        cfg.f = attachment_function::constant(1.0);
        cfg.m = 1;
        cfg.n = 1000;
        cfg.replications = reps ? reps : 2000;
        cfg.master_seed = seed;
        const auto res = run_tn_drift(cfg);
        const double mean = res.summary.at("mean").get<double>();
        const double se = res.summary.at("se").get<double>();
        // Target is gamma - 1 (limit of H_n - log n - 1); allow 4 standard errors.
        const double target = -0.4227843350984671;
        pass = std::abs(mean - target) <= 4.0 * se + 0.01;
        report = {{"suite", suite}, {"mean", mean}, {"se", se}, {"target", target}, {"pass", pass}};
    } else {
        throw std::domain_error("unknown validation suite: " + suite);
    }
    out << report.dump() << "\n";
    return pass ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"growing random network simulation and root-finding toolkit"};
    app.require_subcommand(1);

    // generate
    auto* generate = app.add_subcommand("generate", "grow a graph and write an edge list");
    std::string gen_f = R"({"kind":"linear","beta":0.0})";
    std::uint64_t gen_m = 1, gen_n = 0, gen_seed = 1;
    std::string gen_out = "-", gen_degrees_out;
    generate->add_option("--f", gen_f, "attachment function JSON");
    generate->add_option("--m", gen_m, "edges per arrival")->check(CLI::PositiveNumber);
    generate->add_option("--n", gen_n, "vertex arrivals")->required()->check(CLI::PositiveNumber);
    generate->add_option("--seed", gen_seed, "RNG seed");
    generate->add_option("--out", gen_out, "output path (- for stdout)");
    generate->add_option("--degrees-out", gen_degrees_out, "optional degree CSV path");

    // find-root
    auto* find_root = app.add_subcommand("find-root", "confidence set from an edge-list file");
    std::string fr_graph, fr_method = "topk", fr_out = "-";
    std::uint64_t fr_k = 1;
    double fr_c1 = 2.0;
    find_root->add_option("--graph", fr_graph, "EdgeListV1 file")->required();
    find_root->add_option("--method", fr_method, "topk | jordan | neighborhood")
        ->check(CLI::IsMember({"topk", "jordan", "neighborhood"}));
    find_root->add_option("--k", fr_k, "set size for topk/jordan");
    find_root->add_option("--c1", fr_c1, "radius constant for neighborhood");
    find_root->add_option("--out", fr_out, "output path (- for stdout)");

    // analytic
    auto* analytic = app.add_subcommand("analytic", "closed-form and numeric quantities");
    std::string an_quantity, an_f = R"({"kind":"linear","beta":0.0})", an_regime = "linear";
    double an_theta = 1.0, an_x = 1.0, an_c1 = 2.0, an_eps = 0.1, an_beta = 0.0;
    double an_f_star = 1.0, an_delta = 0.1, an_c_f = 1.0, an_f_m = 1.0, an_tol = 1e-9;
    std::uint64_t an_n = 3;
    int an_m = 1;
    std::optional<double> an_lambda, an_rn, an_alpha;
    analytic->add_option("quantity", an_quantity, "malthusian|muhat|alpha-star|rn|bn|budget")
        ->required();
    analytic->add_option("--f", an_f, "attachment function JSON");
    analytic->add_option("--theta", an_theta);
    analytic->add_option("--x", an_x);
    analytic->add_option("--n", an_n);
    analytic->add_option("--c1", an_c1);
    analytic->add_option("--lambda-star", an_lambda);
    analytic->add_option("--rn", an_rn);
    analytic->add_option("--alpha", an_alpha);
    analytic->add_option("--epsilon", an_eps);
    analytic->add_option("--regime", an_regime, "linear|general-tree|general-m");
    analytic->add_option("--m", an_m);
    analytic->add_option("--beta", an_beta);
    analytic->add_option("--f-star", an_f_star);
    analytic->add_option("--delta", an_delta);
    analytic->add_option("--c-f", an_c_f);
    analytic->add_option("--f-m", an_f_m);
    analytic->add_option("--tol", an_tol);

    // experiment
    auto* experiment = app.add_subcommand("experiment", "run a Monte Carlo experiment config");
    std::string ex_config;
    std::string ex_out, ex_summary_out;
    unsigned ex_workers = 0;
    experiment->add_option("--config", ex_config, "netarch-config v1 JSON file")->required();
    experiment->add_option("--out", ex_out, "override JSONL output path");
    experiment->add_option("--summary-out", ex_summary_out, "override summary CSV path");
    experiment->add_option("--workers", ex_workers, "override worker count");

    // validate
    auto* validate = app.add_subcommand("validate", "built-in statistical validation suites");
    std::string va_suite;
    std::uint64_t va_seed = 20260810, va_reps = 0;
    validate->add_option("--suite", va_suite, "embedding | martingale | drift")
        ->required()
        ->check(CLI::IsMember({"embedding", "martingale", "drift"}));
    validate->add_option("--seed", va_seed);
    validate->add_option("--reps", va_reps);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << e.what() << "\n" << app.help();
        return 2;
    }

    try {
        if (generate->parsed()) {
            evolving_graph g(gen_m, parse_f(gen_f), gen_seed);
            g.grow_to(gen_n);
            std::ostringstream buffer;
            g.export_edge_list(buffer);
            write_file(gen_out, buffer.str(), out);
            if (!gen_degrees_out.empty()) {
                std::ostringstream degrees;
                g.export_degrees_csv(degrees);
                write_file(gen_degrees_out, degrees.str(), out);
            }
            return 0;
        }
        if (find_root->parsed()) {
            const auto g = load_graph(fr_graph);
            confidence_set cs;
            if (fr_method == "topk") {
                cs = degree_topk(g.view(), fr_k);
            } else if (fr_method == "jordan") {
                cs = jordan_topk(g.view(), fr_k);
            } else {
                const double lambda = malthusian_rate(g.f()).lambda_star;
                phi_table phi(g.f());
                cs = neighborhood_confidence_set(g.view(), g.f(), fr_c1, lambda, phi);
            }
            write_file(fr_out, cs.to_json().dump() + "\n", out);
            return 0;
        }
        if (analytic->parsed()) {
            return cmd_analytic(an_quantity, an_f, an_theta, an_x, an_n, an_c1, an_lambda, an_rn,
                                an_alpha, an_eps, an_regime, an_m, an_beta, an_f_star, an_delta,
                                an_c_f, an_f_m, an_tol, out);
        }
        if (experiment->parsed()) {
            std::ifstream in(ex_config);
            if (!in) throw std::runtime_error("cannot open config file: " + ex_config);
            nlohmann::json j;
            in >> j;
            auto cfg = experiment_config::from_json(j);
            if (!ex_out.empty()) cfg.out = ex_out;
            if (!ex_summary_out.empty()) cfg.summary_out = ex_summary_out;
            cfg.workers = workers_from_env(ex_workers ? ex_workers : cfg.workers);
            const auto res = run_experiment(cfg);
            if (!cfg.out.empty()) write_file(cfg.out, res.jsonl(), out);
            if (!cfg.summary_out.empty()) write_file(cfg.summary_out, res.summary_csv, out);
            out << res.summary.dump() << "\n";
            err << "wall_seconds=" << res.wall_seconds << "\n";
            return 0;
        }
        if (validate->parsed()) {
            return cmd_validate(va_suite, va_seed, va_reps, out);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    err << app.help();
    return 2;
}

}  // namespace netarch::cli
