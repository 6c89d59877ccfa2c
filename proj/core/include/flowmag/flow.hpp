#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "flowmag/digraph.hpp"

namespace flowmag {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kPosInf = std::numeric_limits<double>::infinity();

enum class FlowErrorKind {
    NoSourceOrTarget,
    NoSource,
    MultipleSources,
    NoTarget,
    MultipleTargets,
    EntryNotUnique,
    ExitNotUnique,
    ClosureNotStrong,
    LoopsPresent,
};

class FlowError : public std::runtime_error {
public:
    FlowError(FlowErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    FlowErrorKind kind() const { return kind_; }

private:
    FlowErrorKind kind_;
};

/**
 * Digraph with exactly one source and one target, a unique entry edge out of
 * the source and a unique exit edge into the target, no loops, and a strong
 * digraph after identifying source with target. Models single-procedure
 * control flow.
 */
struct FlowGraph {
    Digraph graph;
    VertexId source = 0;
    VertexId target = 0;
    Edge entry{0, 0};
    Edge exit{0, 0};
};

/// Checks all flow-graph clauses; throws FlowError naming the first violated one.
FlowGraph validate_flow(const Digraph& g);

/// Non-throwing variant; optionally reports why validation failed.
std::optional<FlowGraph> try_validate_flow(const Digraph& g, FlowErrorKind* why = nullptr);

using VertexMap = std::vector<VertexId>;

struct ComposedFlow {
    FlowGraph graph;
    /// Per input, old vertex id -> id in the composed graph.
    std::vector<VertexMap> maps;
};

/**
 * Series product: left fold that identifies the exit edge of the accumulator
 * with the entry edge of the next factor (tail with tail, head with head).
 * Deterministic re-indexing makes the fold literally associative.
 */
ComposedFlow series_compose_mapped(const std::vector<FlowGraph>& fs);
FlowGraph series_compose(const std::vector<FlowGraph>& fs);

/**
 * Parallel (conditional) product: identifies all sources and all targets, then
 * prepends a fresh global entry edge and appends a fresh global exit edge so
 * that entry/exit uniqueness holds (one entry stub, K branches, one exit stub).
 */
ComposedFlow parallel_compose_mapped(const std::vector<FlowGraph>& fs);
FlowGraph parallel_compose(const std::vector<FlowGraph>& fs);

/**
 * Hom-object of the sub-flow-graph category: the induced sub-flow graph of F
 * with entry edge e_s and exit edge e_t, or nullopt when no such single-entry
 * single-exit region exists. e_s == e_t yields the one-edge flow graph.
 */
std::optional<FlowGraph> subflow_hom(const FlowGraph& f, Edge e_s, Edge e_t);

/// Edge-indexed matrix over the max-plus semiring ([-inf, inf), max, +).
struct TropicalMatrix {
    std::vector<Edge> edges; // canonical (sorted) edge order of the flow graph
    std::vector<double> z;   // row-major, edges.size() squared

    std::size_t size() const { return edges.size(); }
    double at(std::size_t s, std::size_t t) const { return z[s * edges.size() + t]; }
    double& at(std::size_t s, std::size_t t) { return z[s * edges.size() + t]; }
};

struct SimilarityOptions {
    /// Entropy assigned to the one-edge hom-object (the unit). The default
    /// takes log of its zero spectral radius literally; setting 0 instead
    /// makes the unit carry multiplicative weight.
    double unit_entropy = kNegInf;
};

/// Z[s][t] = topological entropy of the hom-object from e_s to e_t, with
/// empty hom-objects contributing -infinity.
TropicalMatrix tropical_similarity_matrix(const FlowGraph& f, SimilarityOptions opts = {});

struct PrincipalSolutions {
    std::vector<double> v_hat; // -row maxima
    std::vector<double> w_hat; // -column maxima
};

/// v_hat[s] = -max_t Z[s][t], w_hat[t] = -max_s Z[s][t], with -(-inf) = +inf.
PrincipalSolutions principal_solutions(const TropicalMatrix& z);

struct TropicalMagnitude {
    /// Common value of the two sides when they agree; nullopt otherwise.
    std::optional<double> value;
    double lhs = kNegInf; // max_s [-max_t Z_st]
    double rhs = kNegInf; // max_t [-max_s Z_st]
};

/// Max-plus magnitude: defined iff the two principal sums agree (exactly for
/// infinite values, to 1e-9 for finite ones).
TropicalMagnitude tropical_magnitude(const TropicalMatrix& z);

// --- fixture builders -------------------------------------------------------

/**
 * Minimal flow-graph block: entry stub -> hub, a bouquet of `cycles` directed
 * 2-cycles at the hub, hub -> exit stub. Topological entropy log(sqrt(cycles)),
 * exactly 0.5*log(cycles); `cycles` = 0 gives the trivial 3-vertex path block.
 */
FlowGraph bouquet_block(int cycles);

/// Stub-wrapped directed k-cycle (entropy 0 for any k >= 2).
FlowGraph cycle_block(int k);

/**
 * Random valid-by-construction flow graph: series/parallel compositions of a
 * small library of strong blocks, bounded by `max_vertices`.
 */
FlowGraph random_flow_graph(std::uint64_t seed, int max_vertices = 20);

/**
 * Bundle fixture: K backbones of bouquet blocks composed in series, joined in
 * parallel. Tracks where each backbone edge e_(j,k) lands in the final graph
 * and the exact block entropies.
 */
struct Bundle {
    FlowGraph graph;
    /// backbone[k][j] = edge e_(j,k); j = 0..J_k, with 0 the branch entry.
    std::vector<std::vector<Edge>> backbone;
    /// block_entropy[k][j] = entropy of block j+1 of branch k (0.5*log cycles).
    std::vector<std::vector<double>> block_entropy;
};

Bundle make_bundle(const std::vector<std::vector<int>>& bouquet_sizes);

} // namespace flowmag
