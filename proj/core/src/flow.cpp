#include "flowmag/flow.hpp"

#include <algorithm>
#include <cmath>

#include "flowmag/rng.hpp"
#include "flowmag/spectral.hpp"

namespace flowmag {

namespace {

std::vector<VertexId> find_sources(const Digraph& g) {
    std::vector<VertexId> s;
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        if (g.in_degree(v) == 0) {
            s.push_back(v);
        }
    }
    return s;
}

std::vector<VertexId> find_targets(const Digraph& g) {
    std::vector<VertexId> t;
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        if (g.out_degree(v) == 0) {
            t.push_back(v);
        }
    }
    return t;
}

/// Digraph with `target` identified onto `source` (vertex ids re-densified).
Digraph identify_source_target(const Digraph& g, VertexId source, VertexId target) {
    const VertexId n = g.num_vertices();
    std::vector<VertexId> dense(n);
    VertexId next = 0;
    for (VertexId v = 0; v < n; ++v) {
        dense[v] = (v == target) ? -1 : next++;
    }
    dense[target] = dense[source];
    std::vector<Edge> edges;
    edges.reserve(g.num_edges());
    for (const auto& [u, v] : g.edges()) {
        edges.emplace_back(dense[u], dense[v]);
    }
    return Digraph(n - 1, std::move(edges));
}

} // namespace

FlowGraph validate_flow(const Digraph& g) {
    if (g.has_loops()) {
        throw FlowError(FlowErrorKind::LoopsPresent, "flow graphs are loopless");
    }
    auto sources = find_sources(g);
    auto targets = find_targets(g);
    if (sources.empty() && targets.empty()) {
        throw FlowError(FlowErrorKind::NoSourceOrTarget, "no source/target vertex");
    }
    if (sources.empty()) {
        throw FlowError(FlowErrorKind::NoSource, "no source vertex (every vertex has an in-edge)");
    }
    if (sources.size() > 1) {
        throw FlowError(FlowErrorKind::MultipleSources,
                        "flow graph must have exactly one source, found " +
                            std::to_string(sources.size()));
    }
    if (targets.empty()) {
        throw FlowError(FlowErrorKind::NoTarget, "no target vertex (every vertex has an out-edge)");
    }
    if (targets.size() > 1) {
        throw FlowError(FlowErrorKind::MultipleTargets,
                        "flow graph must have exactly one target, found " +
                            std::to_string(targets.size()));
    }
    const VertexId source = sources.front();
    const VertexId target = targets.front();
    if (g.out_degree(source) != 1) {
        throw FlowError(FlowErrorKind::EntryNotUnique,
                        "entry edge not unique: source has out-degree " +
                            std::to_string(g.out_degree(source)));
    }
    if (g.in_degree(target) != 1) {
        throw FlowError(FlowErrorKind::ExitNotUnique,
                        "exit edge not unique: target has in-degree " +
                            std::to_string(g.in_degree(target)));
    }
    if (!classify(identify_source_target(g, source, target)).is_strong) {
        throw FlowError(FlowErrorKind::ClosureNotStrong,
                        "identifying source with target does not yield a strong digraph");
    }
    FlowGraph f;
    f.graph = g;
    f.source = source;
    f.target = target;
    f.entry = Edge{source, g.out_neighbors(source).front()};
    f.exit = Edge{g.in_neighbors(target).front(), target};
    return f;
}

std::optional<FlowGraph> try_validate_flow(const Digraph& g, FlowErrorKind* why) {
    try {
        return validate_flow(g);
    } catch (const FlowError& e) {
        if (why != nullptr) {
            *why = e.kind();
        }
        return std::nullopt;
    }
}

namespace {

FlowGraph revalidate_composed(const Digraph& g, VertexId source, VertexId target, Edge entry,
                              Edge exit, const char* op) {
    // Valid factors always glue into a valid flow graph, so a failure here is
    // an internal invariant breach rather than a caller error.
    FlowGraph f;
    try {
        f = validate_flow(g);
    } catch (const FlowError& e) {
        throw std::logic_error(std::string(op) + " broke the flow-graph invariants: " + e.what());
    }
    if (f.source != source || f.target != target || f.entry != entry || f.exit != exit) {
        throw std::logic_error(std::string(op) + " broke the flow-graph invariants");
    }
    return f;
}

} // namespace

ComposedFlow series_compose_mapped(const std::vector<FlowGraph>& fs) {
    if (fs.empty()) {
        throw PreconditionError("series composition needs at least one factor");
    }
    ComposedFlow acc;
    acc.graph = fs.front();
    acc.maps.emplace_back(fs.front().graph.num_vertices());
    for (VertexId v = 0; v < fs.front().graph.num_vertices(); ++v) {
        acc.maps.back()[v] = v;
    }

    for (std::size_t i = 1; i < fs.size(); ++i) {
        const FlowGraph& next = fs[i];
        const VertexId n_acc = acc.graph.graph.num_vertices();
        // Identify the accumulator's exit edge with the factor's entry edge:
        // tail with tail, head with head.
        const VertexId glue_tail = acc.graph.exit.first;
        const VertexId glue_head = acc.graph.exit.second;

        VertexMap map(next.graph.num_vertices(), -1);
        map[next.source] = glue_tail;
        map[next.entry.second] = glue_head;
        VertexId fresh = n_acc;
        for (VertexId v = 0; v < next.graph.num_vertices(); ++v) {
            if (map[v] == -1) {
                map[v] = fresh++;
            }
        }

        std::vector<Edge> edges = acc.graph.graph.edges();
        for (const auto& [u, v] : next.graph.edges()) {
            edges.emplace_back(map[u], map[v]); // glue edge dedupes in the ctor
        }
        Digraph composed(fresh, std::move(edges));
        Edge exit{map[next.exit.first], map[next.exit.second]};
        acc.graph = revalidate_composed(composed, acc.graph.source, map[next.target],
                                        acc.graph.entry, exit, "series composition");
        acc.maps.push_back(std::move(map));
    }
    return acc;
}

FlowGraph series_compose(const std::vector<FlowGraph>& fs) {
    return series_compose_mapped(fs).graph;
}

ComposedFlow parallel_compose_mapped(const std::vector<FlowGraph>& fs) {
    if (fs.empty()) {
        throw PreconditionError("parallel composition needs at least one branch");
    }
    // Layout: 0 entry stub, 1 merged sources, 2 merged targets, 3 exit stub,
    // then branch interiors in branch order.
    ComposedFlow out;
    VertexId fresh = 4;
    std::vector<Edge> edges{{0, 1}, {2, 3}};
    for (const FlowGraph& f : fs) {
        VertexMap map(f.graph.num_vertices(), -1);
        map[f.source] = 1;
        map[f.target] = 2;
        for (VertexId v = 0; v < f.graph.num_vertices(); ++v) {
            if (map[v] == -1) {
                map[v] = fresh++;
            }
        }
        for (const auto& [u, v] : f.graph.edges()) {
            edges.emplace_back(map[u], map[v]);
        }
        out.maps.push_back(std::move(map));
    }
    Digraph composed(fresh, std::move(edges));
    out.graph = revalidate_composed(composed, 0, 3, Edge{0, 1}, Edge{2, 3},
                                    "parallel composition");
    return out;
}

FlowGraph parallel_compose(const std::vector<FlowGraph>& fs) {
    return parallel_compose_mapped(fs).graph;
}

namespace {

std::vector<char> reach_from(const Digraph& g, VertexId start, bool backward) {
    std::vector<char> seen(g.num_vertices(), 0);
    std::vector<VertexId> stack{start};
    seen[start] = 1;
    while (!stack.empty()) {
        VertexId v = stack.back();
        stack.pop_back();
        const auto& nb = backward ? g.in_neighbors(v) : g.out_neighbors(v);
        for (VertexId w : nb) {
            if (!seen[w]) {
                seen[w] = 1;
                stack.push_back(w);
            }
        }
    }
    return seen;
}

FlowGraph one_edge_flow_graph() {
    FlowGraph f;
    f.graph = Digraph(2, {{0, 1}});
    f.source = 0;
    f.target = 1;
    f.entry = f.exit = Edge{0, 1};
    return f;
}

} // namespace

std::optional<FlowGraph> subflow_hom(const FlowGraph& f, Edge e_s, Edge e_t) {
    const Digraph& g = f.graph;
    if (!g.has_edge(e_s.first, e_s.second) || !g.has_edge(e_t.first, e_t.second)) {
        throw std::invalid_argument("hom-object endpoints must be edges of the flow graph");
    }
    if (e_s == e_t) {
        return one_edge_flow_graph();
    }

    // Core region: vertices on some directed path from head(e_s) to tail(e_t).
    const VertexId h = e_s.second;
    const VertexId t = e_t.first;
    auto forward = reach_from(g, h, /*backward=*/false);
    auto backward = reach_from(g, t, /*backward=*/true);
    std::vector<char> core(g.num_vertices(), 0);
    bool any = false;
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        core[v] = forward[v] && backward[v];
        any = any || core[v];
    }
    if (!any) {
        return std::nullopt;
    }

    // Single-entry/single-exit test: no edge other than e_s, e_t may join the
    // region to its complement.
    for (const auto& e : g.edges()) {
        if (e == e_s || e == e_t) {
            continue;
        }
        if (core[e.first] != core[e.second]) {
            return std::nullopt;
        }
    }

    // Candidate: the region, its induced edges, and the two boundary edges
    // with their outer endpoints. Kept ids stay in ascending order so the
    // whole-graph hom-object comes back as the flow graph itself.
    std::vector<char> kept = core;
    kept[e_s.first] = 1;
    kept[e_t.second] = 1;
    std::vector<VertexId> keep;
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        if (kept[v]) {
            keep.push_back(v);
        }
    }

    std::vector<VertexId> local(g.num_vertices(), -1);
    for (std::size_t i = 0; i < keep.size(); ++i) {
        local[keep[i]] = static_cast<VertexId>(i);
    }
    std::vector<Edge> edges;
    for (const auto& e : g.edges()) {
        const bool induced = core[e.first] && core[e.second];
        if (induced || e == e_s || e == e_t) {
            edges.emplace_back(local[e.first], local[e.second]);
        }
    }
    Digraph candidate(static_cast<VertexId>(keep.size()), std::move(edges));

    auto validated = try_validate_flow(candidate);
    if (!validated) {
        return std::nullopt;
    }
    const Edge entry{local[e_s.first], local[e_s.second]};
    const Edge exit{local[e_t.first], local[e_t.second]};
    if (validated->entry != entry || validated->exit != exit) {
        return std::nullopt;
    }
    return validated;
}

TropicalMatrix tropical_similarity_matrix(const FlowGraph& f, SimilarityOptions opts) {
    TropicalMatrix m;
    m.edges = f.graph.edges();
    const std::size_t e = m.edges.size();
    m.z.assign(e * e, kNegInf);
    for (std::size_t s = 0; s < e; ++s) {
        for (std::size_t t = 0; t < e; ++t) {
            if (s == t) {
                m.at(s, t) = opts.unit_entropy;
                continue;
            }
            auto hom = subflow_hom(f, m.edges[s], m.edges[t]);
            if (hom) {
                m.at(s, t) = topological_entropy(hom->graph);
            }
        }
    }
    return m;
}

PrincipalSolutions principal_solutions(const TropicalMatrix& z) {
    const std::size_t e = z.size();
    PrincipalSolutions p;
    p.v_hat.assign(e, kPosInf);
    p.w_hat.assign(e, kPosInf);
    for (std::size_t s = 0; s < e; ++s) {
        double row_max = kNegInf;
        for (std::size_t t = 0; t < e; ++t) {
            row_max = std::max(row_max, z.at(s, t));
        }
        p.v_hat[s] = -row_max; // -(-inf) = +inf
    }
    for (std::size_t t = 0; t < e; ++t) {
        double col_max = kNegInf;
        for (std::size_t s = 0; s < e; ++s) {
            col_max = std::max(col_max, z.at(s, t));
        }
        p.w_hat[t] = -col_max;
    }
    return p;
}

TropicalMagnitude tropical_magnitude(const TropicalMatrix& z) {
    PrincipalSolutions p = principal_solutions(z);
    TropicalMagnitude m;
    for (double v : p.v_hat) {
        m.lhs = std::max(m.lhs, v);
    }
    for (double w : p.w_hat) {
        m.rhs = std::max(m.rhs, w);
    }
    const bool both_infinite = std::isinf(m.lhs) && std::isinf(m.rhs);
    if (both_infinite ? (m.lhs == m.rhs) : std::abs(m.lhs - m.rhs) <= 1e-9) {
        m.value = m.lhs;
    }
    return m;
}

// --- fixture builders -------------------------------------------------------

FlowGraph bouquet_block(int cycles) {
    if (cycles < 0) {
        throw PreconditionError("bouquet size must be nonnegative");
    }
    if (cycles == 0) {
        FlowGraph f;
        f.graph = Digraph(3, {{0, 1}, {1, 2}});
        f.source = 0;
        f.target = 2;
        f.entry = Edge{0, 1};
        f.exit = Edge{1, 2};
        return f;
    }
    const VertexId hub = 1;
    const VertexId exit_stub = static_cast<VertexId>(cycles) + 2;
    std::vector<Edge> edges{{0, hub}, {hub, exit_stub}};
    for (int i = 0; i < cycles; ++i) {
        const VertexId leaf = static_cast<VertexId>(2 + i);
        edges.emplace_back(hub, leaf);
        edges.emplace_back(leaf, hub);
    }
    return validate_flow(Digraph(exit_stub + 1, std::move(edges)));
}

FlowGraph cycle_block(int k) {
    if (k < 2) {
        throw PreconditionError("cycle block needs k >= 2");
    }
    std::vector<Edge> edges{{0, 1}, {static_cast<VertexId>(k), static_cast<VertexId>(k) + 1}};
    for (int i = 1; i < k; ++i) {
        edges.emplace_back(i, i + 1);
    }
    edges.emplace_back(k, 1);
    return validate_flow(Digraph(static_cast<VertexId>(k) + 2, std::move(edges)));
}

namespace {

FlowGraph library_block(CounterRng& rng) {
    switch (rng.uniform_int(0, 3)) {
    case 0: return bouquet_block(0); // trivial interior
    case 1: return bouquet_block(1); // single 2-cycle
    case 2: return bouquet_block(2); // two 2-cycles sharing the hub
    default: return cycle_block(3);  // directed 3-cycle
    }
}

} // namespace

FlowGraph random_flow_graph(std::uint64_t seed, int max_vertices) {
    CounterRng rng(seed);
    FlowGraph f = library_block(rng);
    const int steps = rng.uniform_int(1, 6);
    for (int i = 0; i < steps; ++i) {
        FlowGraph block = library_block(rng);
        const double pick = rng.uniform01();
        if (pick < 0.6) {
            const int grown = f.graph.num_vertices() + block.graph.num_vertices() - 2;
            if (grown > max_vertices) {
                break;
            }
            f = rng.uniform01() < 0.5 ? series_compose({f, block}) : series_compose({block, f});
        } else {
            const int grown = f.graph.num_vertices() + block.graph.num_vertices();
            if (grown > max_vertices) {
                break;
            }
            f = parallel_compose({f, block});
        }
    }
    return f;
}

Bundle make_bundle(const std::vector<std::vector<int>>& bouquet_sizes) {
    if (bouquet_sizes.empty()) {
        throw PreconditionError("bundle needs at least one branch");
    }
    Bundle bundle;
    std::vector<FlowGraph> branches;
    std::vector<std::vector<Edge>> branch_backbone; // in branch-local ids

    for (const auto& sizes : bouquet_sizes) {
        if (sizes.empty()) {
            throw PreconditionError("every branch needs at least one block");
        }
        std::vector<FlowGraph> blocks;
        std::vector<double> entropies;
        for (int cycles : sizes) {
            if (cycles < 1) {
                throw PreconditionError("bundle blocks need at least one 2-cycle");
            }
            blocks.push_back(bouquet_block(cycles));
            entropies.push_back(0.5 * std::log(static_cast<double>(cycles)));
        }
        ComposedFlow branch = series_compose_mapped(blocks);
        std::vector<Edge> backbone;
        backbone.push_back(branch.graph.entry);
        for (std::size_t j = 1; j < blocks.size(); ++j) {
            const Edge& e = blocks[j].entry;
            backbone.emplace_back(branch.maps[j][e.first], branch.maps[j][e.second]);
        }
        backbone.push_back(branch.graph.exit);
        branches.push_back(std::move(branch.graph));
        branch_backbone.push_back(std::move(backbone));
        bundle.block_entropy.push_back(std::move(entropies));
    }

    ComposedFlow joined = parallel_compose_mapped(branches);
    for (std::size_t k = 0; k < branches.size(); ++k) {
        std::vector<Edge> mapped;
        for (const Edge& e : branch_backbone[k]) {
            mapped.emplace_back(joined.maps[k][e.first], joined.maps[k][e.second]);
        }
        bundle.backbone.push_back(std::move(mapped));
    }
    bundle.graph = std::move(joined.graph);
    return bundle;
}

} // namespace flowmag
