// Acceptance suite: one line per criterion, [PASS]/[FAIL] with the measured
// numbers. Exit code is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "netarch/analytics.hpp"
#include "netarch/ctbp.hpp"
#include "netarch/experiments.hpp"
#include "netarch/generator.hpp"
#include "netarch/rng.hpp"
#include "netarch/rootfind.hpp"
#include "netarch/stats.hpp"
#include "support/reference_sampler.hpp"

using namespace netarch;

namespace {

int g_failures = 0;

struct stopwatch {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

void report(int number, const std::string& name, bool pass, const std::string& detail,
            double seconds) {
    std::printf("[%s] %2d. %s: %s (%.1fs)\n", pass ? "PASS" : "FAIL", number, name.c_str(),
                detail.c_str(), seconds);
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

experiment_config make_config(const std::string& kind, attachment_function f, std::uint64_t m,
                              std::uint64_t n, std::uint64_t reps, std::uint64_t seed) {
    experiment_config cfg;
    cfg.experiment = kind;
    cfg.f = std::move(f);
    cfg.m = m;
    cfg.n = n;
    cfg.replications = reps;
    cfg.master_seed = seed;
    cfg.workers = 0;  // hardware
    return cfg;
}

// 1. Malthusian solver closed forms.
void criterion_1() {
    stopwatch sw;
    const double l_const = malthusian_rate(attachment_function::constant(1.0)).lambda_star;
    const double l_lin0 = malthusian_rate(attachment_function::linear(0.0)).lambda_star;
    const double l_lin1 = malthusian_rate(attachment_function::linear(1.0)).lambda_star;
    const double secs = sw.seconds();
    const bool pass = std::abs(l_const - 1.0) <= 1e-6 && std::abs(l_lin0 - 2.0) <= 1e-6 &&
                      std::abs(l_lin1 - 3.0) <= 1e-6 && secs < 1.0;
    report(1, "Malthusian solver", pass,
           "lambda*(1)=" + fmt(l_const) + " lambda*(i)=" + fmt(l_lin0) +
               " lambda*(i+1)=" + fmt(l_lin1),
           secs);
}

// 2. Exact-enumeration agreement for the n=2 top-1 probability and P(A_2), P(A_3).
void criterion_2() {
    stopwatch sw;
    const std::uint64_t reps = 100000;
    auto hit_cfg = make_config("root-hit", attachment_function::linear(0.0), 1, 2, reps, 1002);
    hit_cfg.params = {{"k_grid", {1}}};
    const auto hit = run_root_hit_curve(hit_cfg);
    const double p_top1 = hit.summary.at("curve")[0].at("p_hat").get<double>();

    auto ak_cfg = make_config("ak-event", attachment_function::linear(0.0), 1, 0, reps, 1003);
    ak_cfg.params = {{"k_grid", {2, 3}}, {"d_star", 1}, {"beta_frac", 1.0}};
    const auto ak = run_event_ak(ak_cfg);
    const double p_a2 = ak.summary.at("curve")[0].at("p_hat").get<double>();
    const double p_a3 = ak.summary.at("curve")[1].at("p_hat").get<double>();

    const auto sigma = [&](double p) { return std::sqrt(p * (1.0 - p) / reps); };
    const double secs = sw.seconds();
    const bool pass = std::abs(p_top1 - 0.5) <= 3.0 * sigma(0.5) &&
                      std::abs(p_a2 - 0.5) <= 3.0 * sigma(0.5) &&
                      std::abs(p_a3 - 0.375) <= 3.0 * sigma(0.375) && secs < 10.0;
    report(2, "exact-enumeration agreement", pass,
           "P(top-1)=" + fmt(p_top1) + " P(A_2)=" + fmt(p_a2) + " P(A_3)=" + fmt(p_a3), secs);
}

// 3. Budget exponent for linear attachment: OLS slope of log(miss) vs log K.
void criterion_3() {
    stopwatch sw;
    auto cfg = make_config("root-hit", attachment_function::linear(0.0), 1, 100000, 20000, 1004);
    cfg.params = {{"k_grid", {2, 4, 8, 16, 32, 64, 128}}};
    const auto res = run_root_hit_curve(cfg);
    const double slope = res.summary.at("miss_slope").at("slope").get<double>();
    const double se = res.summary.at("miss_slope").at("slope_se").get<double>();
    const bool pass = slope >= -0.70 && slope <= -0.35;
    report(3, "budget exponent (linear attachment)", pass,
           "slope=" + fmt(slope) + " se=" + fmt(se) + " window=[-0.70,-0.35]", sw.seconds());
}

// 4. A_K scaling: slope of log P(A_K) vs log K near -1/2 for m=1, beta=0.
void criterion_4() {
    stopwatch sw;
    auto cfg = make_config("ak-event", attachment_function::linear(0.0), 1, 0, 100000, 1005);
    cfg.params = {{"k_grid", {4, 8, 16, 32, 64, 128, 256}}, {"d_star", 1}, {"beta_frac", 1.0}};
    const auto res = run_event_ak(cfg);
    const double slope = res.summary.at("slope").at("slope").get<double>();
    const bool pass = std::abs(slope - (-0.5)) <= 0.15;
    report(4, "A_K scaling", pass, "slope=" + fmt(slope) + " target=-0.5 tol=0.15", sw.seconds());
}

// 5. Embedding equivalence: generator vs CTBP (l=20, m=1) and vs collapsed
//    (l=10, m=2), chi-square on root- and max-degree pmfs.
void criterion_5() {
    stopwatch sw;
    auto tree_cfg = make_config("embedding", attachment_function::linear(0.0), 1, 0, 100000, 1006);
    tree_cfg.params = {{"l", 20}, {"arm", "ctbp"}};
    const auto tree = run_embedding(tree_cfg);
    const double p1 = tree.summary.at("root_degree").at("p_value").get<double>();
    const double p2 = tree.summary.at("max_degree").at("p_value").get<double>();

    auto coll_cfg = make_config("embedding", attachment_function::linear(0.0), 2, 0, 100000, 1007);
    coll_cfg.params = {{"l", 10}, {"arm", "collapsed"}};
    const auto coll = run_embedding(coll_cfg);
    const double p3 = coll.summary.at("root_degree").at("p_value").get<double>();
    const double p4 = coll.summary.at("max_degree").at("p_value").get<double>();

    const bool pass = p1 > 0.01 && p2 > 0.01 && p3 > 0.01 && p4 > 0.01;
    report(5, "embedding equivalence", pass,
           "ctbp p=(" + fmt(p1) + "," + fmt(p2) + ") collapsed p=(" + fmt(p3) + "," + fmt(p4) + ")",
           sw.seconds());
}

// 6. Martingale property: empirical mean of M_0(1) and M_0(5) within 3 sigma of 0.
void criterion_6() {
    stopwatch sw;
    const auto f = attachment_function::linear(0.0);
    const std::vector<double> grid{1.0, 5.0};
    const std::uint64_t reps = 100000;
    const auto records = run_replications(reps, 1008, 0, [&](std::uint64_t, std::uint64_t seed) {
        const auto path = martingale_path(f, 0, grid, seed);
        return nlohmann::json{{"m1", path[0]}, {"m5", path[1]}};
    });
    double s1 = 0, s1sq = 0, s5 = 0, s5sq = 0;
    for (const auto& rec : records) {
        const double a = rec.at("m1").get<double>();
        const double b = rec.at("m5").get<double>();
        s1 += a;
        s1sq += a * a;
        s5 += b;
        s5sq += b * b;
    }
    const double n = static_cast<double>(reps);
    const double mean1 = s1 / n, mean5 = s5 / n;
    const double se1 = std::sqrt((s1sq / n - mean1 * mean1) / n);
    const double se5 = std::sqrt((s5sq / n - mean5 * mean5) / n);
    const double secs = sw.seconds();
    const bool pass =
        std::abs(mean1) <= 3.0 * se1 && std::abs(mean5) <= 3.0 * se5 && secs < 30.0;
    report(6, "martingale centering", pass,
           "mean(M(1))=" + fmt(mean1) + "+-" + fmt(se1) + " mean(M(5))=" + fmt(mean5) + "+-" +
               fmt(se5),
           secs);
}

// 7. T_n drift for uniform attachment: sample mean near gamma - 1.
void criterion_7() {
    stopwatch sw;
    auto cfg = make_config("tn-drift", attachment_function::constant(1.0), 1, 10000, 10000, 1009);
    cfg.params = {{"lambda_star", 1.0}};
    const auto res = run_tn_drift(cfg);
    const double mean = res.summary.at("mean").get<double>();
    const double secs = sw.seconds();
    const bool pass = mean >= -0.46 && mean <= -0.39 && secs < 120.0;
    report(7, "T_n drift", pass, "mean=" + fmt(mean) + " target=-0.4228 window=[-0.46,-0.39]",
           secs);
}

// 8. W_infinity sampler: close to Exp(1) for uniform attachment at t_max = 8.
void criterion_8() {
    stopwatch sw;
    auto cfg = make_config("winfty", attachment_function::constant(1.0), 1, 0, 10000, 1010);
    cfg.params = {{"t_max", 8.0}, {"lambda_star", 1.0}};
    const auto res = run_winfty(cfg);
    const double ks = res.summary.at("ks_to_exp1").get<double>();
    const double mean = res.summary.at("mean").get<double>();
    const double secs = sw.seconds();
    const bool pass = ks < 0.03 && mean >= 0.95 && mean <= 1.05 && secs < 60.0;
    report(8, "W_infinity sampler", pass, "ks=" + fmt(ks) + " mean=" + fmt(mean), secs);
}

// 9. Persistence contrast: median top-1 change count, linear strictly below
//    power(0.4) at shared checkpoints.
void criterion_9() {
    stopwatch sw;
    auto lin = make_config("persistence", attachment_function::linear(0.0), 1, 0, 500, 1011);
    lin.checkpoints = {1000, 10000, 100000};
    lin.params = {{"k_top", 1}};
    auto pow = lin;
    pow.f = attachment_function::power(0.4);
    const auto lin_res = run_persistence(lin);
    const auto pow_res = run_persistence(pow);
    const double med_lin = lin_res.summary.at("median_changes").get<double>();
    const double med_pow = pow_res.summary.at("median_changes").get<double>();
    const bool pass = med_lin < med_pow;
    report(9, "persistence contrast", pass,
           "median changes linear=" + fmt(med_lin) + " power(0.4)=" + fmt(med_pow), sw.seconds());
}

// 10. Neighborhood confidence set: containment monotone in c1 on shared seeds,
//     exactly 1 once the ball spans the graph, and a sub-sqrt(n) size median at
//     the small-c1 end of the grid (where the b_n bound's domain holds).
void criterion_10() {
    stopwatch sw;
    const std::uint64_t n = 100000;
    auto cfg = make_config("neighborhood", attachment_function::power(0.4), 1, n, 300, 1012);
    cfg.params = {{"c1_grid", {0.25, 0.5, 1.0, 2.0, 1e6}}};
    const auto res = run_neighborhood(cfg);
    const auto& rows = res.summary.at("per_c1");

    bool monotone = true;
    double prev = -1.0;
    for (const auto& row : rows) {
        const double freq = row.at("contain_freq").get<double>();
        if (freq < prev) monotone = false;
        prev = freq;
    }
    const double full_freq = rows.back().at("contain_freq").get<double>();
    const double small_median = rows.front().at("size_median").get<double>();
    const double small_c1 = rows.front().at("c1").get<double>();
    const bool pass = monotone && full_freq == 1.0 && small_median < std::sqrt(double(n));
    report(10, "neighborhood confidence set", pass,
           "monotone=" + std::string(monotone ? "yes" : "no") + " spanning freq=" + fmt(full_freq) +
               " size median@c1=" + fmt(small_c1) + " is " + fmt(small_median) + " < " +
               fmt(std::sqrt(double(n))),
           sw.seconds());
}

// 11. Sampler equivalence: indexed and linear-scan growth produce identical
//     edge lists over 100 seeds.
void criterion_11() {
    stopwatch sw;
    bool identical = true;
    const std::uint64_t n = 1000;
    for (std::uint64_t s = 0; s < 50 && identical; ++s) {
        const std::uint64_t seed = derive_seed(1013, s);
        evolving_graph g(1, attachment_function::linear(0.0), seed);
        g.grow_to(n);
        identical = g.edges() == testing::reference_grow(attachment_function::linear(0.0), 1, seed, n);
    }
    for (std::uint64_t s = 0; s < 50 && identical; ++s) {
        const std::uint64_t seed = derive_seed(1014, s);
        evolving_graph g(2, attachment_function::power(0.5), seed);
        g.grow_to(n);
        identical = g.edges() == testing::reference_grow(attachment_function::power(0.5), 2, seed, n);
    }
    report(11, "sampler equivalence", identical,
           identical ? "100 seeds bit-identical at n=1000" : "divergence found", sw.seconds());
}

// 12. Determinism: identical config and master seed give byte-identical JSONL,
//     independent of the worker count.
void criterion_12() {
    stopwatch sw;
    auto cfg = make_config("root-hit", attachment_function::power(0.5), 1, 1000, 500, 1015);
    cfg.params = {{"k_grid", {1, 2, 4, 8}}};
    cfg.workers = 2;
    const auto a = run_root_hit_curve(cfg);
    const auto b = run_root_hit_curve(cfg);
    cfg.workers = 1;
    const auto c = run_root_hit_curve(cfg);
    const bool pass = a.jsonl() == b.jsonl() && a.jsonl() == c.jsonl() && !a.jsonl().empty();
    report(12, "experiment determinism", pass,
           pass ? "rerun and 1-vs-2-worker JSONL byte-identical" : "outputs differ", sw.seconds());
}

}  // namespace

int main() {
    std::printf("netarch acceptance suite\n");
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    criterion_12();
    std::printf("%d of 12 criteria passed\n", 12 - g_failures);
    return g_failures;
}
