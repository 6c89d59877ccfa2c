#include "flowmag/digraph.hpp"

#include <algorithm>
#include <queue>

namespace flowmag {

Digraph::Digraph(VertexId n, std::vector<Edge> edges, std::vector<std::string> labels)
    : n_(n), edges_(std::move(edges)), labels_(std::move(labels)) {
    if (n_ < 0) {
        throw std::invalid_argument("vertex count must be nonnegative");
    }
    for (const auto& [u, v] : edges_) {
        if (u < 0 || u >= n_ || v < 0 || v >= n_) {
            throw std::invalid_argument("edge endpoint out of range");
        }
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

    out_.assign(n_, {});
    in_.assign(n_, {});
    for (const auto& [u, v] : edges_) {
        out_[u].push_back(v);
        in_[v].push_back(u);
        if (u == v) {
            has_loops_ = true;
        }
    }
    for (auto& nb : in_) {
        std::sort(nb.begin(), nb.end());
    }

    if (!labels_.empty()) {
        if (static_cast<VertexId>(labels_.size()) != n_) {
            throw std::invalid_argument("label list size must match vertex count");
        }
        for (VertexId v = 0; v < n_; ++v) {
            if (!label_index_.emplace(labels_[v], v).second) {
                throw std::invalid_argument("duplicate vertex label: " + labels_[v]);
            }
        }
    }
}

bool Digraph::has_edge(VertexId u, VertexId v) const {
    return std::binary_search(edges_.begin(), edges_.end(), Edge{u, v});
}

std::string Digraph::label(VertexId v) const {
    if (has_labels()) {
        return labels_[v];
    }
    return std::to_string(v);
}

std::optional<VertexId> Digraph::find_label(const std::string& name) const {
    auto it = label_index_.find(name);
    if (it == label_index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

Digraph reverse(const Digraph& g) {
    std::vector<Edge> rev;
    rev.reserve(g.num_edges());
    for (const auto& [u, v] : g.edges()) {
        rev.emplace_back(v, u);
    }
    return Digraph(g.num_vertices(), std::move(rev),
                   g.has_labels() ? g.labels() : std::vector<std::string>{});
}

Digraph strip_loops(const Digraph& g) {
    std::vector<Edge> kept;
    kept.reserve(g.num_edges());
    for (const auto& e : g.edges()) {
        if (e.first != e.second) {
            kept.push_back(e);
        }
    }
    return Digraph(g.num_vertices(), std::move(kept),
                   g.has_labels() ? g.labels() : std::vector<std::string>{});
}

Digraph induced_subgraph(const Digraph& g, const std::vector<VertexId>& keep) {
    std::vector<VertexId> dense(g.num_vertices(), -1);
    for (std::size_t i = 0; i < keep.size(); ++i) {
        dense[keep[i]] = static_cast<VertexId>(i);
    }
    std::vector<Edge> edges;
    for (const auto& [u, v] : g.edges()) {
        if (dense[u] >= 0 && dense[v] >= 0) {
            edges.emplace_back(dense[u], dense[v]);
        }
    }
    std::vector<std::string> labels;
    labels.reserve(keep.size());
    for (VertexId v : keep) {
        labels.push_back(g.label(v));
    }
    return Digraph(static_cast<VertexId>(keep.size()), std::move(edges), std::move(labels));
}

namespace {

// Iterative Tarjan; recursion depth is unbounded on path graphs otherwise.
std::vector<int> tarjan_scc(const Digraph& g, int& count) {
    const VertexId n = g.num_vertices();
    std::vector<int> comp(n, -1), low(n, 0), index(n, -1);
    std::vector<VertexId> stack;
    std::vector<char> on_stack(n, 0);
    int next_index = 0;
    count = 0;

    struct Frame {
        VertexId v;
        std::size_t child;
    };
    std::vector<Frame> call;

    for (VertexId root = 0; root < n; ++root) {
        if (index[root] != -1) {
            continue;
        }
        call.push_back({root, 0});
        index[root] = low[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = 1;

        while (!call.empty()) {
            auto& [v, child] = call.back();
            const auto& out = g.out_neighbors(v);
            if (child < out.size()) {
                VertexId w = out[child++];
                if (index[w] == -1) {
                    index[w] = low[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
            } else {
                const VertexId finished = v;
                if (low[finished] == index[finished]) {
                    while (true) {
                        VertexId w = stack.back();
                        stack.pop_back();
                        on_stack[w] = 0;
                        comp[w] = count;
                        if (w == finished) {
                            break;
                        }
                    }
                    ++count;
                }
                call.pop_back();
                if (!call.empty()) {
                    low[call.back().v] = std::min(low[call.back().v], low[finished]);
                }
            }
        }
    }
    return comp;
}

} // namespace

std::vector<int> strongly_connected_components(const Digraph& g, int* count) {
    int c = 0;
    auto comp = tarjan_scc(g, c);
    // Tarjan emits components in reverse topological order; renumber them by
    // first appearance so ids are stable under the documented convention.
    std::vector<int> remap(c, -1);
    int next = 0;
    for (int id : comp) {
        if (remap[id] == -1) {
            remap[id] = next++;
        }
    }
    for (int& id : comp) {
        id = remap[id];
    }
    if (count != nullptr) {
        *count = c;
    }
    return comp;
}

std::vector<int> weak_components(const Digraph& g, int* count) {
    const VertexId n = g.num_vertices();
    std::vector<int> comp(n, -1);
    int c = 0;
    std::queue<VertexId> q;
    for (VertexId s = 0; s < n; ++s) {
        if (comp[s] != -1) {
            continue;
        }
        comp[s] = c;
        q.push(s);
        while (!q.empty()) {
            VertexId v = q.front();
            q.pop();
            for (VertexId w : g.out_neighbors(v)) {
                if (comp[w] == -1) {
                    comp[w] = c;
                    q.push(w);
                }
            }
            for (VertexId w : g.in_neighbors(v)) {
                if (comp[w] == -1) {
                    comp[w] = c;
                    q.push(w);
                }
            }
        }
        ++c;
    }
    if (count != nullptr) {
        *count = c;
    }
    return comp;
}

bool is_acyclic(const Digraph& g) {
    if (g.has_loops()) {
        return false;
    }
    int count = 0;
    strongly_connected_components(g, &count);
    return count == g.num_vertices();
}

Classification classify(const Digraph& g) {
    Classification c;
    c.has_loops = g.has_loops();
    int scc_count = 0;
    strongly_connected_components(g, &scc_count);
    c.is_strong = g.num_vertices() <= 1 || scc_count == 1;
    weak_components(g, &c.weak_component_count);
    return c;
}

Digraph largest_weak_component(const Digraph& g) {
    if (g.num_vertices() == 0) {
        throw PreconditionError("largest_weak_component requires a nonempty graph");
    }
    int count = 0;
    auto comp = weak_components(g, &count);
    std::vector<int> size(count, 0);
    for (int id : comp) {
        ++size[id];
    }
    // Component ids are assigned by smallest contained vertex, so the first
    // maximal component realizes the smallest-minimum-id tie rule.
    int best = 0;
    for (int id = 1; id < count; ++id) {
        if (size[id] > size[best]) {
            best = id;
        }
    }
    std::vector<VertexId> keep;
    keep.reserve(size[best]);
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        if (comp[v] == best) {
            keep.push_back(v);
        }
    }
    return induced_subgraph(g, keep);
}

DistanceMatrix shortest_path_matrix(const Digraph& g) {
    const VertexId n = g.num_vertices();
    DistanceMatrix d(n);
    std::vector<VertexId> queue;
    queue.reserve(n);
    for (VertexId s = 0; s < n; ++s) {
        queue.clear();
        queue.push_back(s);
        d.at(s, s) = 0;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            VertexId v = queue[head];
            for (VertexId w : g.out_neighbors(v)) {
                if (!d.reachable(s, w)) {
                    d.at(s, w) = d.at(s, v) + 1;
                    queue.push_back(w);
                }
            }
        }
    }
    return d;
}

BigInt count_walks(const Digraph& g, int length) {
    if (length < 0) {
        throw PreconditionError("walk length must be nonnegative");
    }
    const VertexId n = g.num_vertices();
    std::vector<BigInt> walks(n, 1);
    std::vector<BigInt> next(n);
    for (int step = 0; step < length; ++step) {
        for (VertexId v = 0; v < n; ++v) {
            BigInt acc = 0;
            for (VertexId w : g.out_neighbors(v)) {
                acc += walks[w];
            }
            next[v] = std::move(acc);
        }
        walks.swap(next);
    }
    BigInt total = 0;
    for (const BigInt& x : walks) {
        total += x;
    }
    return total;
}

} // namespace flowmag
