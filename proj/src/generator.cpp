#include "netarch/generator.hpp"

#include <cassert>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace netarch {

evolving_graph::evolving_graph(std::uint64_t m, attachment_function f, std::uint64_t seed)
    : m_(m), f_(std::move(f)), seed_(seed), rng_(seed) {
    if (m == 0) throw std::domain_error("evolving_graph: m must be >= 1");
    degrees_ = {static_cast<std::uint32_t>(m), static_cast<std::uint32_t>(m)};
    edges_.assign(m, {1u, 0u});
    append_vertex_weight(static_cast<std::uint32_t>(m));
    append_vertex_weight(static_cast<std::uint32_t>(m));
}

std::uint64_t evolving_graph::quantized_f(std::uint32_t degree) {
    if (degree >= qf_cache_.size()) {
        std::size_t upto = std::max<std::size_t>(degree + 1, qf_cache_.size() * 2);
        if (qf_cache_.empty()) qf_cache_.push_back(0);  // degree 0 never queried
        for (std::size_t d = qf_cache_.size(); d < upto; ++d)
            qf_cache_.push_back(quantize_weight(f_(d)));
    }
    return qf_cache_[degree];
}

void evolving_graph::append_vertex_weight(std::uint32_t degree) {
    weights_.append(quantized_f(degree));
}

void evolving_graph::grow_to(std::uint64_t n_target) {
    grow_to(n_target, {}, nullptr);
}

void evolving_graph::grow_to(std::uint64_t n_target, std::span<const std::uint64_t> checkpoints,
                             const std::function<void(const evolving_graph&)>& on_checkpoint) {
    if (n_target < n_) throw std::domain_error("grow_to: target below current size");
    degrees_.reserve(n_target + 1);
    edges_.reserve(m_ * n_target);
    weights_.reserve(n_target + 1);

    std::size_t next_checkpoint = 0;
    while (next_checkpoint < checkpoints.size() && checkpoints[next_checkpoint] <= n_)
        ++next_checkpoint;

    for (std::uint64_t v = n_ + 1; v <= n_target; ++v) {
        for (std::uint64_t e = 0; e < m_; ++e) {
            const double u = rng_.next_unit();
            ++draws_;
            const std::uint64_t t = selection_threshold(u, weights_.total());
            const auto target = static_cast<std::uint32_t>(weights_.select(t));
            edges_.emplace_back(static_cast<std::uint32_t>(v), target);
            const std::uint32_t d = degrees_[target];
            // Later edges of this arrival see the updated degree.
            weights_.add(target, static_cast<std::int64_t>(quantized_f(d + 1)) -
                                     static_cast<std::int64_t>(quantized_f(d)));
            degrees_[target] = d + 1;
        }
        // The new vertex enters the index only after all its edges attached.
        degrees_.push_back(static_cast<std::uint32_t>(m_));
        append_vertex_weight(static_cast<std::uint32_t>(m_));
        n_ = v;
        if (next_checkpoint < checkpoints.size() && checkpoints[next_checkpoint] == v) {
            if (on_checkpoint) on_checkpoint(*this);
            ++next_checkpoint;
        }
    }
    assert(verify_weight_index());
}

bool evolving_graph::verify_weight_index() const {
    std::uint64_t total = 0;
    for (std::uint32_t d : degrees_) total += quantize_weight(f_(d));
    return total == weights_.total();
}

void evolving_graph::export_edge_list(std::ostream& out) const {
    out << "netarch-edgelist v1 m=" << m_ << " n=" << n_ << " seed=" << seed_
        << " f=" << f_.to_json().dump() << "\n";
    for (const auto& [child, parent] : edges_) out << child << ' ' << parent << '\n';
}

evolving_graph evolving_graph::import_edge_list(std::istream& in) {
    std::string header;
    if (!std::getline(in, header)) throw std::runtime_error("edge list import: missing header");
    std::istringstream hs(header);
    std::string magic, version, tok;
    hs >> magic >> version;
    if (magic != "netarch-edgelist" || version != "v1")
        throw std::runtime_error("edge list import: not a netarch-edgelist v1 file");
    std::uint64_t m = 0, n = 0, seed = 0;
    std::string f_json;
    while (hs >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) throw std::runtime_error("edge list import: malformed header field");
        const std::string key = tok.substr(0, eq);
        const std::string val = tok.substr(eq + 1);
        if (key == "m") m = std::stoull(val);
        else if (key == "n") n = std::stoull(val);
        else if (key == "seed") seed = std::stoull(val);
        else if (key == "f") f_json = val;
        else throw std::runtime_error("edge list import: unknown header field " + key);
    }
    if (m == 0 || n == 0 || f_json.empty())
        throw std::runtime_error("edge list import: incomplete header");

    evolving_graph g(m, attachment_function::from_json(nlohmann::json::parse(f_json)), seed);
    g.degrees_.assign(n + 1, 0);
    g.edges_.clear();
    g.edges_.reserve(m * n);
    std::uint32_t child = 0, parent = 0;
    while (in >> child >> parent) {
        if (child > n || parent > n) throw std::runtime_error("edge list import: vertex index out of range");
        if (parent >= child) throw std::runtime_error("edge list import: parent must be older than child");
        g.edges_.emplace_back(child, parent);
        ++g.degrees_[child];
        ++g.degrees_[parent];
    }
    if (g.edges_.size() != m * n) throw std::runtime_error("edge list import: edge count does not match header");

    g.n_ = n;
    g.draws_ = m * (n - 1);
    g.rng_ = splitmix64::resumed(seed, g.draws_);
    g.weights_ = weight_index{};
    g.weights_.reserve(n + 1);
    for (std::uint32_t d : g.degrees_) g.append_vertex_weight(d);
    return g;
}

void evolving_graph::export_degrees_csv(std::ostream& out) const {
    out << "vertex,degree\n";
    for (std::size_t v = 0; v < degrees_.size(); ++v) out << v << ',' << degrees_[v] << '\n';
}

bool evolving_graph::operator==(const evolving_graph& other) const {
    return m_ == other.m_ && n_ == other.n_ && seed_ == other.seed_ && f_ == other.f_ &&
           degrees_ == other.degrees_ && edges_ == other.edges_ && draws_ == other.draws_;
}

}  // namespace netarch
