#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "flowmag/bigint.hpp"

namespace flowmag {

using VertexId = std::int32_t;
using Edge = std::pair<VertexId, VertexId>;

/// Thrown when an operation's input violates its stated preconditions.
class PreconditionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * Finite simple digraph with dense vertex ids 0..n-1 and an optional
 * injective label per vertex. Immutable after construction; safe to share
 * across threads.
 */
class Digraph {
public:
    Digraph() = default;

    /// Edges are sorted and deduplicated; ids must lie in [0, n).
    Digraph(VertexId n, std::vector<Edge> edges, std::vector<std::string> labels = {});

    VertexId num_vertices() const { return n_; }
    std::size_t num_edges() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }
    bool has_edge(VertexId u, VertexId v) const;

    const std::vector<VertexId>& out_neighbors(VertexId v) const { return out_[v]; }
    const std::vector<VertexId>& in_neighbors(VertexId v) const { return in_[v]; }
    int out_degree(VertexId v) const { return static_cast<int>(out_[v].size()); }
    int in_degree(VertexId v) const { return static_cast<int>(in_[v].size()); }

    bool has_loops() const { return has_loops_; }

    bool has_labels() const { return !labels_.empty(); }
    const std::vector<std::string>& labels() const { return labels_; }
    /// Label of a vertex; falls back to the decimal id when unlabeled.
    std::string label(VertexId v) const;
    std::optional<VertexId> find_label(const std::string& name) const;

private:
    VertexId n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<VertexId>> out_;
    std::vector<std::vector<VertexId>> in_;
    std::vector<std::string> labels_;
    std::unordered_map<std::string, VertexId> label_index_;
    bool has_loops_ = false;
};

/// Edge-reversed copy; vertex ids and labels unchanged.
Digraph reverse(const Digraph& g);

/// Copy without self-loop edges.
Digraph strip_loops(const Digraph& g);

/// Subgraph induced by `keep` (ids re-indexed densely in the given order,
/// labels carried over from the parent).
Digraph induced_subgraph(const Digraph& g, const std::vector<VertexId>& keep);

struct Classification {
    bool is_strong = false;
    bool has_loops = false;
    int weak_component_count = 0;
};

Classification classify(const Digraph& g);

/// Component id per vertex, ids assigned in order of first appearance.
std::vector<int> strongly_connected_components(const Digraph& g, int* count = nullptr);
std::vector<int> weak_components(const Digraph& g, int* count = nullptr);

/// True iff the digraph has no directed cycle (equivalently A^n = 0).
bool is_acyclic(const Digraph& g);

/**
 * Induced subgraph on the largest weakly connected vertex set. Ties go to the
 * component containing the smallest vertex id.
 */
Digraph largest_weak_component(const Digraph& g);

/// Hop-count distances; asymmetric, with unreachable pairs marked infinite.
class DistanceMatrix {
public:
    static constexpr int kUnreachable = -1;

    explicit DistanceMatrix(VertexId n) : n_(n), d_(static_cast<std::size_t>(n) * n, kUnreachable) {}

    VertexId size() const { return n_; }
    int at(VertexId i, VertexId j) const { return d_[static_cast<std::size_t>(i) * n_ + j]; }
    int& at(VertexId i, VertexId j) { return d_[static_cast<std::size_t>(i) * n_ + j]; }
    bool reachable(VertexId i, VertexId j) const { return at(i, j) != kUnreachable; }

private:
    VertexId n_;
    std::vector<int> d_;
};

/// All-pairs hop counts by one BFS sweep per source.
DistanceMatrix shortest_path_matrix(const Digraph& g);

/// Number of directed walks with `length` edges, summed over all start and
/// end vertices; exact integer arithmetic (sum of the entries of A^length).
BigInt count_walks(const Digraph& g, int length);

} // namespace flowmag
