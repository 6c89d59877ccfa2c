#include "flowmag/random_graphs.hpp"

#include "flowmag/rng.hpp"

namespace flowmag {

Digraph erdos_renyi(VertexId n, double q, std::uint64_t seed) {
    if (q < 0.0 || q > 1.0) {
        throw PreconditionError("edge probability must lie in [0, 1]");
    }
    SplitMix64 rng(seed);
    std::vector<Edge> edges;
    for (VertexId u = 0; u < n; ++u) {
        for (VertexId v = 0; v < n; ++v) {
            if (u == v) {
                continue;
            }
            const std::uint64_t pair_index =
                static_cast<std::uint64_t>(u) * static_cast<std::uint64_t>(n) + v;
            if (rng.uniform01(pair_index) < q) {
                edges.emplace_back(u, v);
            }
        }
    }
    return Digraph(n, std::move(edges));
}

Digraph bernoulli_edge_subsample(const Digraph& g, double p_remove, std::uint64_t seed) {
    if (p_remove < 0.0 || p_remove > 1.0) {
        throw PreconditionError("removal probability must lie in [0, 1]");
    }
    SplitMix64 rng(seed);
    std::vector<Edge> kept;
    kept.reserve(g.num_edges());
    // Edges are stored sorted, so the per-edge counter is canonical.
    std::uint64_t index = 0;
    for (const auto& e : g.edges()) {
        if (rng.uniform01(index++) >= p_remove) {
            kept.push_back(e);
        }
    }
    return Digraph(g.num_vertices(), std::move(kept),
                   g.has_labels() ? g.labels() : std::vector<std::string>{});
}

Digraph random_polytree(VertexId n, std::uint64_t seed) {
    if (n <= 0) {
        throw PreconditionError("polytree needs at least one vertex");
    }
    CounterRng rng(seed);
    std::vector<Edge> edges;
    edges.reserve(n - 1);
    for (VertexId v = 1; v < n; ++v) {
        VertexId parent = static_cast<VertexId>(rng.uniform_int(0, v - 1));
        if (rng.uniform01() < 0.5) {
            edges.emplace_back(parent, v);
        } else {
            edges.emplace_back(v, parent);
        }
    }
    return Digraph(n, std::move(edges));
}

} // namespace flowmag
