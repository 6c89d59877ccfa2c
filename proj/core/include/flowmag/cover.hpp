#pragma once

#include <vector>

#include "flowmag/digraph.hpp"

namespace flowmag {

enum class BallDirection { Forward, Reverse };

/// Input whose shape rules out the requested magnitude formula.
class ShapeError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

/**
 * Depth-L ball around a basepoint in the universal cover: the arborescence of
 * all walks of length <= L leaving the basepoint (or entering it, for the
 * Reverse direction). Node identity is the whole walk, so distinct walks to
 * the same base vertex are distinct nodes; the walk is recovered by parent
 * links.
 */
struct CoverBall {
    struct Node {
        VertexId base;
        int parent; // index into nodes, -1 for the root
        int depth;
    };

    VertexId root = 0;
    int radius = 0;
    BallDirection direction = BallDirection::Forward;
    std::vector<Node> nodes;               // breadth-first, root first
    std::vector<std::size_t> depth_counts; // radius + 1 entries

    std::size_t size() const { return nodes.size(); }
};

/// Breadth-first unfolding; requires a loopless base digraph.
CoverBall build_ball(const Digraph& g, VertexId v0, int radius,
                     BallDirection direction = BallDirection::Forward);

/// |V(B_v0(L))| = sum_{l=0}^{L} (row-v0 sum of A^l), exactly.
BigInt ball_size_power_formula(const Digraph& g, VertexId v0, int radius);

/// Per-depth node counts of the ball (row-v0 sums of A^l for l = 0..radius),
/// computed by the walk recursion rather than an explicit tree.
std::vector<BigInt> ball_depth_counts(const Digraph& g, VertexId v0, int radius);

/// Ball sizes for every basepoint at once (one pass over A per level).
std::vector<BigInt> ball_sizes_all(const Digraph& g, int radius);

/// Acyclic digraph whose underlying undirected graph is a forest.
bool is_polyforest(const Digraph& g);

/// Magnitude function of a polyforest: |V| - |E| e^{-t}.
double polyforest_magnitude(const Digraph& g, double t);

/**
 * Magnitude of the depth-L cover ball: n - (n-1) e^{-t} with n the ball's
 * vertex count from the power formula.
 */
double ball_magnitude(const Digraph& g, VertexId v0, int radius, double t,
                      BallDirection direction = BallDirection::Forward);

/// log of n - (n-1) e^{-t} evaluated in the log domain; exact 0 at t = 0.
double log_ball_magnitude_from_count(const BigInt& n_vertices, double t);

/**
 * Volume-entropy estimates s_L = L^{-1} log Mag(B_v0(L), t) for L = 1..l_max.
 * Requires a strong loopless digraph; counts use exact integers so l_max in
 * the hundreds is fine.
 */
std::vector<double> volume_entropy_sequence(const Digraph& g, VertexId v0, double t, int l_max,
                                            BallDirection direction = BallDirection::Forward);

} // namespace flowmag
