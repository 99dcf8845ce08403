#pragma once

// Exhaustive enumeration of small attachment graphs: walks every sequence of
// edge choices with its product probability. Independent of the sampler under
// test; used to freeze exact expected values.

#include <cstdint>
#include <functional>
#include <vector>

#include "netarch/attachment.hpp"

namespace netarch::testing {

struct enum_state {
    std::vector<std::uint32_t> degrees;                          // by birth index
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;  // (child, parent)
    double probability = 1.0;
};

// Visits every outcome of growing to n arrivals with its exact probability.
inline void enumerate_growth(const attachment_function& f, std::uint64_t m, std::uint64_t n,
                             const std::function<void(const enum_state&)>& visit) {
    enum_state init;
    init.degrees = {static_cast<std::uint32_t>(m), static_cast<std::uint32_t>(m)};
    for (std::uint64_t e = 0; e < m; ++e) init.edges.emplace_back(1u, 0u);

    std::function<void(enum_state&, std::uint64_t, std::uint64_t)> step =
        [&](enum_state& s, std::uint64_t arrival, std::uint64_t edge) {
            if (arrival > n) {
                visit(s);
                return;
            }
            if (edge == m) {
                s.degrees.push_back(static_cast<std::uint32_t>(m));
                step(s, arrival + 1, 0);
                s.degrees.pop_back();
                return;
            }
            double total = 0.0;
            const std::size_t existing = arrival;  // vertices 0..arrival-1
            for (std::size_t v = 0; v < existing; ++v) total += f(s.degrees[v]);
            for (std::size_t v = 0; v < existing; ++v) {
                const double p = f(s.degrees[v]) / total;
                s.degrees[v] += 1;
                s.edges.emplace_back(static_cast<std::uint32_t>(arrival),
                                     static_cast<std::uint32_t>(v));
                const double saved = s.probability;
                s.probability *= p;
                step(s, arrival, edge + 1);
                s.probability = saved;
                s.edges.pop_back();
                s.degrees[v] -= 1;
            }
        };
    step(init, 2, 0);
}

}  // namespace netarch::testing
