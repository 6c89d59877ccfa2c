#include "flowmag/cover.hpp"

#include <cmath>
#include <string>

namespace flowmag {

namespace {

void require_loopless(const Digraph& g, const char* op) {
    if (!g.has_loops()) {
        return;
    }
    std::string verts;
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        if (g.has_edge(v, v)) {
            verts += verts.empty() ? "" : ", ";
            verts += g.label(v);
        }
    }
    throw PreconditionError(std::string(op) + " requires a loopless digraph; loops at " + verts);
}

void require_vertex(const Digraph& g, VertexId v0) {
    if (v0 < 0 || v0 >= g.num_vertices()) {
        throw PreconditionError("basepoint out of range");
    }
}

} // namespace

CoverBall build_ball(const Digraph& g, VertexId v0, int radius, BallDirection direction) {
    require_loopless(g, "build_ball");
    require_vertex(g, v0);
    if (radius < 0) {
        throw PreconditionError("ball radius must be nonnegative");
    }
    const Digraph base = direction == BallDirection::Reverse ? reverse(g) : g;

    CoverBall ball;
    ball.root = v0;
    ball.radius = radius;
    ball.direction = direction;
    ball.nodes.push_back({v0, -1, 0});
    ball.depth_counts.assign(static_cast<std::size_t>(radius) + 1, 0);
    ball.depth_counts[0] = 1;

    std::size_t level_begin = 0;
    std::size_t level_end = 1;
    for (int depth = 1; depth <= radius; ++depth) {
        for (std::size_t i = level_begin; i < level_end; ++i) {
            const VertexId v = ball.nodes[i].base;
            for (VertexId w : base.out_neighbors(v)) {
                ball.nodes.push_back({w, static_cast<int>(i), depth});
            }
        }
        level_begin = level_end;
        level_end = ball.nodes.size();
        ball.depth_counts[depth] = level_end - level_begin;
    }
    return ball;
}

BigInt ball_size_power_formula(const Digraph& g, VertexId v0, int radius) {
    require_loopless(g, "ball_size_power_formula");
    require_vertex(g, v0);
    if (radius < 0) {
        throw PreconditionError("ball radius must be nonnegative");
    }
    // walks[v] = number of walks of the current length starting at v.
    std::vector<BigInt> walks(g.num_vertices(), 1);
    std::vector<BigInt> next(g.num_vertices());
    BigInt total = 1; // the root path
    for (int level = 1; level <= radius; ++level) {
        for (VertexId v = 0; v < g.num_vertices(); ++v) {
            BigInt acc = 0;
            for (VertexId w : g.out_neighbors(v)) {
                acc += walks[w];
            }
            next[v] = std::move(acc);
        }
        walks.swap(next);
        total += walks[v0];
    }
    return total;
}

std::vector<BigInt> ball_depth_counts(const Digraph& g, VertexId v0, int radius) {
    require_loopless(g, "ball_depth_counts");
    require_vertex(g, v0);
    if (radius < 0) {
        throw PreconditionError("ball radius must be nonnegative");
    }
    std::vector<BigInt> walks(g.num_vertices(), 1);
    std::vector<BigInt> next(g.num_vertices());
    std::vector<BigInt> counts{1};
    counts.reserve(static_cast<std::size_t>(radius) + 1);
    for (int level = 1; level <= radius; ++level) {
        for (VertexId v = 0; v < g.num_vertices(); ++v) {
            BigInt acc = 0;
            for (VertexId w : g.out_neighbors(v)) {
                acc += walks[w];
            }
            next[v] = std::move(acc);
        }
        walks.swap(next);
        counts.push_back(walks[v0]);
    }
    return counts;
}

std::vector<BigInt> ball_sizes_all(const Digraph& g, int radius) {
    require_loopless(g, "ball_sizes_all");
    std::vector<BigInt> walks(g.num_vertices(), 1);
    std::vector<BigInt> next(g.num_vertices());
    std::vector<BigInt> totals(g.num_vertices(), 1);
    for (int level = 1; level <= radius; ++level) {
        for (VertexId v = 0; v < g.num_vertices(); ++v) {
            BigInt acc = 0;
            for (VertexId w : g.out_neighbors(v)) {
                acc += walks[w];
            }
            next[v] = std::move(acc);
        }
        walks.swap(next);
        for (VertexId v = 0; v < g.num_vertices(); ++v) {
            totals[v] += walks[v];
        }
    }
    return totals;
}

bool is_polyforest(const Digraph& g) {
    if (!is_acyclic(g)) {
        return false;
    }
    // Underlying undirected graph must be a forest: union-find over edges.
    std::vector<VertexId> parent(g.num_vertices());
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        parent[v] = v;
    }
    auto find = [&](VertexId v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    };
    for (const auto& [u, v] : g.edges()) {
        VertexId ru = find(u), rv = find(v);
        if (ru == rv) {
            return false;
        }
        parent[ru] = rv;
    }
    return true;
}

double polyforest_magnitude(const Digraph& g, double t) {
    if (!is_polyforest(g)) {
        throw ShapeError("polyforest magnitude requires an acyclic digraph whose "
                         "underlying undirected graph is a forest");
    }
    return static_cast<double>(g.num_vertices()) -
           static_cast<double>(g.num_edges()) * std::exp(-t);
}

double log_ball_magnitude_from_count(const BigInt& n_vertices, double t) {
    if (n_vertices < 1) {
        throw PreconditionError("ball vertex count must be positive");
    }
    if (n_vertices == 1) {
        return 0.0;
    }
    const double u = std::exp(-t);
    if (u == 1.0) {
        return 0.0; // Mag(., 0) = 1 identically
    }
    // Mag / n = (1 - u) + u/n; the expm1 form keeps small-t values accurate.
    const double frac = -std::expm1(-t) + u * inverse_as_double(n_vertices);
    return log_big(n_vertices) + std::log(frac);
}

double ball_magnitude(const Digraph& g, VertexId v0, int radius, double t,
                      BallDirection direction) {
    const Digraph base = direction == BallDirection::Reverse ? reverse(g) : g;
    const BigInt n = ball_size_power_formula(base, v0, radius);
    return std::exp(log_ball_magnitude_from_count(n, t));
}

std::vector<double> volume_entropy_sequence(const Digraph& g, VertexId v0, double t, int l_max,
                                            BallDirection direction) {
    require_loopless(g, "volume_entropy_sequence");
    require_vertex(g, v0);
    if (l_max < 1) {
        throw PreconditionError("l_max must be at least 1");
    }
    if (!classify(g).is_strong) {
        throw PreconditionError("volume entropy requires a strong digraph");
    }
    const Digraph base = direction == BallDirection::Reverse ? reverse(g) : g;

    std::vector<double> s;
    s.reserve(l_max);
    std::vector<BigInt> walks(base.num_vertices(), 1);
    std::vector<BigInt> next(base.num_vertices());
    BigInt total = 1;
    for (int level = 1; level <= l_max; ++level) {
        for (VertexId v = 0; v < base.num_vertices(); ++v) {
            BigInt acc = 0;
            for (VertexId w : base.out_neighbors(v)) {
                acc += walks[w];
            }
            next[v] = std::move(acc);
        }
        walks.swap(next);
        total += walks[v0];
        s.push_back(log_ball_magnitude_from_count(total, t) / static_cast<double>(level));
    }
    return s;
}

} // namespace flowmag
