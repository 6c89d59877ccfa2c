#pragma once

#include <string>

#include "flowmag/digraph.hpp"
#include "flowmag/flow.hpp"

namespace flowmag::testing {

inline std::string fixture(const std::string& name) {
    return std::string(FLOWMAG_FIXTURES_DIR) + "/" + name;
}

/// 3-vertex digraph whose characteristic polynomial is x^3 - x - 1, so the
/// spectral radius is the plastic number ~1.3247.
inline Digraph plastic_digraph() {
    return Digraph(3, {{0, 1}, {1, 0}, {1, 2}, {2, 0}});
}

inline Digraph directed_cycle(VertexId n) {
    std::vector<Edge> edges;
    for (VertexId v = 0; v < n; ++v) {
        edges.emplace_back(v, (v + 1) % n);
    }
    return Digraph(n, std::move(edges));
}

inline Digraph complete_loopless(VertexId n) {
    std::vector<Edge> edges;
    for (VertexId u = 0; u < n; ++u) {
        for (VertexId v = 0; v < n; ++v) {
            if (u != v) {
                edges.emplace_back(u, v);
            }
        }
    }
    return Digraph(n, std::move(edges));
}

/// Valid 4-vertex flow graph: 0 -> 1 -> 2 -> 1 with exit 2 -> 3.
inline Digraph chain_fixture() {
    return Digraph(4, {{0, 1}, {1, 2}, {2, 1}, {2, 3}});
}

} // namespace flowmag::testing
