#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "netarch/analytics.hpp"
#include "netarch/generator.hpp"

namespace netarch {

struct confidence_set {
    enum class method_kind { degree_topk, jordan, neighborhood };
    method_kind method = method_kind::degree_topk;
    std::vector<std::uint32_t> vertices;  // most central first
    std::uint64_t k = 0;                  // degree_topk / jordan
    double c1 = 0.0;                      // neighborhood
    double lambda_star = 0.0;             // neighborhood
    std::uint32_t radius = 0;             // neighborhood: ceil(r_n)
    std::optional<double> predicted_size_bound;  // b_n when its domain condition holds
    std::optional<bool> contains_root;           // set when ground truth is known

    std::size_t size() const { return vertices.size(); }
    nlohmann::json to_json() const;
};

// CSR adjacency over the simple-graph skeleton (parallel edges kept; harmless for BFS).
struct adjacency {
    std::vector<std::uint32_t> offsets;
    std::vector<std::uint32_t> neighbors;

    static adjacency build(const graph_view& g);
};

// The K vertices of largest degree, ties broken oldest-first; members ordered by
// (degree desc, birth index asc).
confidence_set degree_topk(const graph_view& g, std::uint64_t k);

// Rank of the root under the top-K ordering: the smallest K whose top-K set
// contains vertex 0. Equals 1 + #{v : deg(v) > deg(v0)} under the tie-break.
std::uint64_t root_rank(const graph_view& g);

// The ordered top-K tuple (vertex indices), for persistence probes.
std::vector<std::uint32_t> topk_tuple(const graph_view& g, std::uint64_t k);

// score(v) = size of the largest component of the tree minus v. Trees only
// (m = 1); lower score = more central.
std::vector<std::uint32_t> jordan_scores(const graph_view& g);

// The K lowest Jordan scores, ties oldest-first.
confidence_set jordan_topk(const graph_view& g, std::uint64_t k);

// Youngest vertex attaining the maximal degree.
std::uint32_t vmax(const graph_view& g);

// BFS distances from source; UINT32_MAX marks unreachable (never happens for
// connected inputs).
std::vector<std::uint32_t> bfs_distances(const adjacency& adj, std::uint32_t source);

// All vertices at graph distance <= r from v (multi-edge multiplicity ignored).
std::vector<std::uint32_t> ball(const graph_view& g, std::uint32_t v, std::uint32_t r);

// The non-persistent-regime set: ball of radius ceil(r_n) around the youngest
// maximal-degree vertex, with the b_n size bound attached when its domain
// condition holds (absent otherwise, never an error).
confidence_set neighborhood_confidence_set(const graph_view& g, const attachment_function& f,
                                           double c1, double lambda_star, const phi_table& phi);

}  // namespace netarch
