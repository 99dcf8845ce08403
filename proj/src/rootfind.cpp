#include "netarch/rootfind.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace netarch {

nlohmann::json confidence_set::to_json() const {
    nlohmann::json j;
    nlohmann::json params;
    switch (method) {
        case method_kind::degree_topk:
            j["method"] = "topk";
            params["k"] = k;
            break;
        case method_kind::jordan:
            j["method"] = "jordan";
            params["k"] = k;
            break;
        case method_kind::neighborhood:
            j["method"] = "neighborhood";
            params["c1"] = c1;
            params["lambda_star"] = lambda_star;
            params["radius"] = radius;
            break;
    }
    j["params"] = params;
    j["vertices"] = vertices;
    j["size"] = vertices.size();
    j["predicted_size_bound"] = predicted_size_bound ? nlohmann::json(*predicted_size_bound)
                                                     : nlohmann::json(nullptr);
    j["contains_root"] = contains_root ? nlohmann::json(*contains_root) : nlohmann::json(nullptr);
    return j;
}

adjacency adjacency::build(const graph_view& g) {
    adjacency adj;
    const std::size_t n = g.vertex_count();
    adj.offsets.assign(n + 1, 0);
    for (const auto& [c, p] : g.edges) {
        ++adj.offsets[c + 1];
        ++adj.offsets[p + 1];
    }
    for (std::size_t v = 0; v < n; ++v) adj.offsets[v + 1] += adj.offsets[v];
    adj.neighbors.resize(adj.offsets.back());
    std::vector<std::uint32_t> cursor(adj.offsets.begin(), adj.offsets.end() - 1);
    for (const auto& [c, p] : g.edges) {
        adj.neighbors[cursor[c]++] = p;
        adj.neighbors[cursor[p]++] = c;
    }
    return adj;
}

namespace {

// (degree desc, index asc): true when a ranks ahead of b.
inline bool ranks_before(std::uint32_t deg_a, std::uint32_t a, std::uint32_t deg_b, std::uint32_t b) {
    if (deg_a != deg_b) return deg_a > deg_b;
    return a < b;
}

std::vector<std::uint32_t> select_topk(const std::vector<std::uint32_t>& order, std::uint64_t k) {
    return {order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k)};
}

}  // namespace

std::vector<std::uint32_t> topk_tuple(const graph_view& g, std::uint64_t k) {
    const auto n = g.vertex_count();
    if (k < 1 || k > n) throw std::domain_error("topk: K must lie in [1, vertex count]");
    std::vector<std::uint32_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0u);
    std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k), idx.end(),
                      [&](std::uint32_t a, std::uint32_t b) {
                          return ranks_before(g.degrees[a], a, g.degrees[b], b);
                      });
    idx.resize(k);
    return idx;
}

confidence_set degree_topk(const graph_view& g, std::uint64_t k) {
    confidence_set cs;
    cs.method = confidence_set::method_kind::degree_topk;
    cs.k = k;
    cs.vertices = topk_tuple(g, k);
    cs.contains_root = std::find(cs.vertices.begin(), cs.vertices.end(), 0u) != cs.vertices.end();
    return cs;
}

std::uint64_t root_rank(const graph_view& g) {
    const std::uint32_t d0 = g.degrees[0];
    std::uint64_t ahead = 0;
    for (std::size_t v = 1; v < g.vertex_count(); ++v)
        if (g.degrees[v] > d0) ++ahead;  // ties lose to the older root
    return ahead + 1;
}

std::vector<std::uint32_t> jordan_scores(const graph_view& g) {
    const std::size_t n_vertices = g.vertex_count();
    if (n_vertices < 2) throw std::domain_error("jordan_scores: need at least two vertices");
    if (g.edges.size() != n_vertices - 1)
        throw std::domain_error("jordan_scores: input is not a tree");

    // Edges are (child, parent) with parent < child and one edge per child >= 1.
    std::vector<std::uint32_t> parent(n_vertices, 0);
    std::vector<bool> seen(n_vertices, false);
    seen[0] = true;
    for (const auto& [c, p] : g.edges) {
        if (p >= c || c >= n_vertices) throw std::domain_error("jordan_scores: input is not a tree");
        if (seen[c]) throw std::domain_error("jordan_scores: input is not a tree (duplicate child)");
        seen[c] = true;
        parent[c] = p;
    }

    std::vector<std::uint32_t> subtree(n_vertices, 1);
    for (std::size_t v = n_vertices - 1; v >= 1; --v) subtree[parent[v]] += subtree[v];
    std::vector<std::uint32_t> max_child(n_vertices, 0);
    for (std::size_t v = 1; v < n_vertices; ++v)
        max_child[parent[v]] = std::max(max_child[parent[v]], subtree[v]);

    std::vector<std::uint32_t> scores(n_vertices);
    const auto total = static_cast<std::uint32_t>(n_vertices);
    for (std::size_t v = 0; v < n_vertices; ++v)
        scores[v] = std::max(total - subtree[v], max_child[v]);
    return scores;
}

confidence_set jordan_topk(const graph_view& g, std::uint64_t k) {
    const auto n = g.vertex_count();
    if (k < 1 || k > n) throw std::domain_error("jordan_topk: K must lie in [1, vertex count]");
    const auto scores = jordan_scores(g);
    std::vector<std::uint32_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0u);
    std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k), idx.end(),
                      [&](std::uint32_t a, std::uint32_t b) {
                          if (scores[a] != scores[b]) return scores[a] < scores[b];
                          return a < b;
                      });
    confidence_set cs;
    cs.method = confidence_set::method_kind::jordan;
    cs.k = k;
    cs.vertices = select_topk(idx, k);
    cs.contains_root = std::find(cs.vertices.begin(), cs.vertices.end(), 0u) != cs.vertices.end();
    return cs;
}

std::uint32_t vmax(const graph_view& g) {
    std::uint32_t best = 0;
    for (std::size_t v = 1; v < g.vertex_count(); ++v)
        if (g.degrees[v] >= g.degrees[best]) best = static_cast<std::uint32_t>(v);
    return best;
}

std::vector<std::uint32_t> bfs_distances(const adjacency& adj, std::uint32_t source) {
    std::vector<std::uint32_t> dist(adj.offsets.size() - 1, UINT32_MAX);
    std::vector<std::uint32_t> frontier{source};
    dist[source] = 0;
    std::uint32_t d = 0;
    std::vector<std::uint32_t> next;
    while (!frontier.empty()) {
        ++d;
        next.clear();
        for (std::uint32_t v : frontier) {
            for (std::uint32_t i = adj.offsets[v]; i < adj.offsets[v + 1]; ++i) {
                const std::uint32_t w = adj.neighbors[i];
                if (dist[w] == UINT32_MAX) {
                    dist[w] = d;
                    next.push_back(w);
                }
            }
        }
        frontier.swap(next);
    }
    return dist;
}

std::vector<std::uint32_t> ball(const graph_view& g, std::uint32_t v, std::uint32_t r) {
    if (v >= g.vertex_count()) throw std::domain_error("ball: vertex out of range");
    const auto adj = adjacency::build(g);
    const auto dist = bfs_distances(adj, v);
    std::vector<std::uint32_t> members;
    for (std::size_t w = 0; w < dist.size(); ++w)
        if (dist[w] <= r) members.push_back(static_cast<std::uint32_t>(w));
    return members;
}

confidence_set neighborhood_confidence_set(const graph_view& g, const attachment_function& f,
                                           double c1, double lambda_star, const phi_table& phi) {
    confidence_set cs;
    cs.method = confidence_set::method_kind::neighborhood;
    cs.c1 = c1;
    cs.lambda_star = lambda_star;

    const std::uint64_t n = g.vertex_count() - 1;
    const double r_n = radius_rn(n, lambda_star, c1, phi);
    cs.radius = static_cast<std::uint32_t>(std::ceil(r_n));
    cs.vertices = ball(g, vmax(g), cs.radius);

    if (auto alpha = f.alpha_bound(); alpha && *alpha > 0 && *alpha <= 0.5 && r_n > 0) {
        try {
            cs.predicted_size_bound = budget_bn(n, r_n, *alpha, lambda_star);
        } catch (const std::domain_error&) {
            // n below the formula's domain: report the set without a bound.
        }
    }
    cs.contains_root = std::binary_search(cs.vertices.begin(), cs.vertices.end(), 0u);
    return cs;
}

}  // namespace netarch
