#include <doctest.h>

#include <algorithm>
#include <set>

#include "netarch/generator.hpp"
#include "netarch/rng.hpp"
#include "netarch/rootfind.hpp"

using namespace netarch;

namespace {

graph_view make_view(const std::vector<std::uint32_t>& degrees,
                     const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges,
                     std::uint64_t m = 1) {
    return {m, {degrees.data(), degrees.size()}, {edges.data(), edges.size()}};
}

}  // namespace

TEST_CASE("degree_topk tie-breaks and ordering") {
    // G_1: both vertices degree m, oldest first
    const std::vector<std::uint32_t> deg1{1, 1};
    const std::vector<std::pair<std::uint32_t, std::uint32_t>> e1{{1, 0}};
    const auto top1 = degree_topk(make_view(deg1, e1), 1);
    CHECK(top1.vertices == std::vector<std::uint32_t>{0});

    // degrees [1,2,1]: K=2 -> {v1, v0}
    const std::vector<std::uint32_t> deg2{1, 2, 1};
    const std::vector<std::pair<std::uint32_t, std::uint32_t>> e2{{1, 0}, {2, 1}};
    const auto top2 = degree_topk(make_view(deg2, e2), 2);
    CHECK(top2.vertices == std::vector<std::uint32_t>{1, 0});

    const auto all = degree_topk(make_view(deg2, e2), 3);
    CHECK(all.vertices.size() == 3);
    CHECK_THROWS_AS(degree_topk(make_view(deg2, e2), 4), std::domain_error);
}

TEST_CASE("topk nesting") {
    evolving_graph g(1, attachment_function::linear(0.0), 321);
    g.grow_to(60);
    const auto view = g.view();
    std::vector<std::uint32_t> prev;
    for (std::uint64_t k = 1; k <= 61; ++k) {
        const auto cur = degree_topk(view, k).vertices;
        std::set<std::uint32_t> cur_set(cur.begin(), cur.end());
        for (auto v : prev) CHECK(cur_set.count(v) == 1);
        prev = cur;
    }
}

TEST_CASE("root_rank equals the smallest containing K") {
    evolving_graph g(1, attachment_function::power(0.5), 4711);
    g.grow_to(100);
    const auto view = g.view();
    const auto rank = root_rank(view);
    if (rank > 1) {
        const auto below = degree_topk(view, rank - 1).vertices;
        CHECK(std::find(below.begin(), below.end(), 0u) == below.end());
    }
    const auto at = degree_topk(view, rank).vertices;
    CHECK(std::find(at.begin(), at.end(), 0u) != at.end());
}

TEST_CASE("jordan scores on hand examples") {
    // path a-b-c
    const std::vector<std::uint32_t> deg_path{1, 2, 1};
    const std::vector<std::pair<std::uint32_t, std::uint32_t>> e_path{{1, 0}, {2, 1}};
    CHECK(jordan_scores(make_view(deg_path, e_path)) == std::vector<std::uint32_t>{2, 1, 2});

    // star: center v0 with three leaves
    const std::vector<std::uint32_t> deg_star{3, 1, 1, 1};
    const std::vector<std::pair<std::uint32_t, std::uint32_t>> e_star{{1, 0}, {2, 0}, {3, 0}};
    CHECK(jordan_scores(make_view(deg_star, e_star)) == std::vector<std::uint32_t>{1, 3, 3, 3});

    // two vertices: both score 1
    const std::vector<std::uint32_t> deg2{1, 1};
    const std::vector<std::pair<std::uint32_t, std::uint32_t>> e2{{1, 0}};
    CHECK(jordan_scores(make_view(deg2, e2)) == std::vector<std::uint32_t>{1, 1});
}

TEST_CASE("jordan rejects non-trees") {
    const std::vector<std::uint32_t> deg{2, 2};
    const std::vector<std::pair<std::uint32_t, std::uint32_t>> multi{{1, 0}, {1, 0}};
    CHECK_THROWS_AS(jordan_scores(make_view(deg, multi, 2)), std::domain_error);
}

TEST_CASE("jordan matches a brute-force component oracle on random trees") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull, 4ull, 5ull}) {
        evolving_graph g(1, attachment_function::power(0.5), seed);
        g.grow_to(49);  // 50 vertices
        const auto view = g.view();
        const auto fast = jordan_scores(view);

        const auto adj = adjacency::build(view);
        const std::size_t n = view.vertex_count();
        for (std::uint32_t v = 0; v < n; ++v) {
            // largest component of the tree with v removed, by BFS
            std::vector<bool> seen(n, false);
            seen[v] = true;
            std::uint32_t largest = 0;
            for (std::uint32_t s = 0; s < n; ++s) {
                if (seen[s]) continue;
                std::uint32_t size = 0;
                std::vector<std::uint32_t> stack{s};
                seen[s] = true;
                while (!stack.empty()) {
                    const auto u = stack.back();
                    stack.pop_back();
                    ++size;
                    for (std::uint32_t i = adj.offsets[u]; i < adj.offsets[u + 1]; ++i) {
                        const auto w = adj.neighbors[i];
                        if (!seen[w]) {
                            seen[w] = true;
                            stack.push_back(w);
                        }
                    }
                }
                largest = std::max(largest, size);
            }
            CHECK(fast[v] == largest);
        }
    }
}

TEST_CASE("vmax picks the youngest maximum") {
    const std::vector<std::pair<std::uint32_t, std::uint32_t>> e{{1, 0}};
    CHECK(vmax(make_view({1, 1}, e)) == 1);
    CHECK(vmax(make_view({1, 2, 1}, e)) == 1);
    CHECK(vmax(make_view({2, 2, 1, 1}, e)) == 1);
    evolving_graph g(1, attachment_function::linear(0.0), 8);
    g.grow_to(50);
    const auto view = g.view();
    const auto v = vmax(view);
    CHECK(view.degrees[v] == *std::max_element(view.degrees.begin(), view.degrees.end()));
}

TEST_CASE("ball semantics and monotonicity") {
    // path 0-1-2
    const std::vector<std::uint32_t> deg{1, 2, 1};
    const std::vector<std::pair<std::uint32_t, std::uint32_t>> e{{1, 0}, {2, 1}};
    const auto view = make_view(deg, e);
    CHECK(ball(view, 1, 0) == std::vector<std::uint32_t>{1});
    CHECK(ball(view, 0, 1) == std::vector<std::uint32_t>{0, 1});
    CHECK(ball(view, 0, 2) == std::vector<std::uint32_t>{0, 1, 2});
    CHECK(ball(view, 0, 99) == std::vector<std::uint32_t>{0, 1, 2});

    evolving_graph g(1, attachment_function::power(0.4), 99);
    g.grow_to(200);
    const auto gv = g.view();
    std::size_t prev = 0;
    for (std::uint32_t r = 0; r < 12; ++r) {
        const auto b = ball(gv, vmax(gv), r);
        CHECK(b.size() >= prev);
        prev = b.size();
    }
}

TEST_CASE("neighborhood confidence set") {
    const auto f = attachment_function::power(0.4);
    const double lambda = 1.247;  // close enough for construction purposes
    phi_table phi(f);

    evolving_graph g(1, f, 2025);
    g.grow_to(500);
    const auto view = g.view();

    // c1 = 0 collapses to the maximal-degree vertex itself
    const auto tight = neighborhood_confidence_set(view, f, 0.0, lambda, phi);
    CHECK(tight.vertices == std::vector<std::uint32_t>{vmax(view)});
    CHECK_FALSE(tight.predicted_size_bound.has_value());

    // huge c1 covers everything and must contain the root
    const auto wide = neighborhood_confidence_set(view, f, 50.0, lambda, phi);
    CHECK(wide.vertices.size() == view.vertex_count());
    CHECK(wide.contains_root.has_value());
    CHECK(*wide.contains_root);

    // n too small for the b_n domain: bound absent, not an error
    const auto mid = neighborhood_confidence_set(view, f, 2.0, lambda, phi);
    CHECK_FALSE(mid.predicted_size_bound.has_value());

    const auto j = mid.to_json();
    CHECK(j.at("method") == "neighborhood");
    CHECK(j.at("predicted_size_bound").is_null());
}
