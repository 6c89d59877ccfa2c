#pragma once

#include <cstdint>

#include "flowmag/digraph.hpp"

namespace flowmag {

/**
 * G(n, q) digraph: every ordered pair (u, v), u != v, is an edge
 * independently with probability q. Pure function of (n, q, seed).
 */
Digraph erdos_renyi(VertexId n, double q, std::uint64_t seed);

/**
 * Keeps each edge independently with probability 1 - p_remove; the vertex set
 * is unchanged, so isolated vertices may remain. Pure function of its inputs.
 */
Digraph bernoulli_edge_subsample(const Digraph& g, double p_remove, std::uint64_t seed);

/// Random polytree: a uniform-ish random tree with every edge oriented by a
/// fair coin. Fixture generator for magnitude oracles.
Digraph random_polytree(VertexId n, std::uint64_t seed);

} // namespace flowmag
