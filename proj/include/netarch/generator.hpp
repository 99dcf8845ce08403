#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "netarch/attachment.hpp"
#include "netarch/fenwick.hpp"
#include "netarch/rng.hpp"

namespace netarch {

// Attachment weights are quantized to 32 fractional bits and summed as 64-bit
// integers. Selection is therefore exact: the dynamic prefix-sum index and a
// naive linear scan over the same weights agree bit-for-bit, on any platform.
// The quantization error is below 2^-32 per weight.
inline std::uint64_t quantize_weight(double w) {
    const auto q = static_cast<std::uint64_t>(std::llround(w * 4294967296.0));
    if (q == 0) throw std::domain_error("attachment weight underflows the quantization grid");
    return q;
}

// Threshold for inverse-CDF selection: one uniform variate per edge, mapped onto
// the integer weight scale. Both the indexed and the reference sampler use this.
inline std::uint64_t selection_threshold(double u, std::uint64_t total_weight) {
    auto t = static_cast<std::uint64_t>(u * static_cast<double>(total_weight));
    if (t >= total_weight) t = total_weight - 1;
    return t;
}

// Lightweight read-only view used by the root-finding module.
struct graph_view {
    std::uint64_t m = 1;
    std::span<const std::uint32_t> degrees;                                // by birth index
    std::span<const std::pair<std::uint32_t, std::uint32_t>> edges;        // (child, parent), attachment order

    std::size_t vertex_count() const { return degrees.size(); }
};

// Birth-ordered multigraph grown by degree-proportional attachment: each arriving
// vertex connects m edges, every endpoint drawn with probability proportional to
// f(current degree), degrees updated edge by edge. Starts from two vertices joined
// by m parallel edges.
class evolving_graph {
public:
    evolving_graph(std::uint64_t m, attachment_function f, std::uint64_t seed);

    std::uint64_t m() const { return m_; }
    const attachment_function& f() const { return f_; }
    std::uint64_t seed() const { return seed_; }
    std::uint64_t arrivals() const { return n_; }  // graph G_n; vertex count is n + 1
    std::size_t vertex_count() const { return degrees_.size(); }

    const std::vector<std::uint32_t>& degrees() const { return degrees_; }
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges() const { return edges_; }

    graph_view view() const {
        return {m_, {degrees_.data(), degrees_.size()}, {edges_.data(), edges_.size()}};
    }

    // Grows the graph to n_target arrivals.
    void grow_to(std::uint64_t n_target);

    // Growth with snapshot callbacks at the given sorted arrival counts, so
    // persistence-style experiments need a single pass.
    void grow_to(std::uint64_t n_target, std::span<const std::uint64_t> checkpoints,
                 const std::function<void(const evolving_graph&)>& on_checkpoint);

    // Recomputes the weight index total from scratch and compares with the
    // maintained one. Asserted at growth end in debug builds.
    bool verify_weight_index() const;

    // EdgeListV1: header `netarch-edgelist v1 m=<m> n=<n> seed=<seed> f=<json>`,
    // then one `child parent` line per edge in attachment order.
    void export_edge_list(std::ostream& out) const;
    static evolving_graph import_edge_list(std::istream& in);

    // CSV `vertex,degree`, one row per vertex in birth order.
    void export_degrees_csv(std::ostream& out) const;

    bool operator==(const evolving_graph& other) const;

private:
    void append_vertex_weight(std::uint32_t degree);
    std::uint64_t quantized_f(std::uint32_t degree);

    std::uint64_t m_;
    attachment_function f_;
    std::uint64_t seed_;
    std::uint64_t n_ = 1;
    std::uint64_t draws_ = 0;  // uniform variates consumed; rng state = seed + draws * gamma
    splitmix64 rng_;
    std::vector<std::uint32_t> degrees_;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges_;
    weight_index weights_;
    std::vector<std::uint64_t> qf_cache_;  // quantized f by degree, grown on demand
};

}  // namespace netarch
