#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "fixtures.hpp"
#include "flowmag/graph_io.hpp"
#include "flowmag/random_graphs.hpp"
#include "flowmag/rng.hpp"

using namespace flowmag;
using flowmag::testing::chain_fixture;
using flowmag::testing::complete_loopless;
using flowmag::testing::directed_cycle;
using flowmag::testing::fixture;
using flowmag::testing::plastic_digraph;

namespace {

std::set<Edge> edge_set(const Digraph& g) {
    return {g.edges().begin(), g.edges().end()};
}

/// Brute-force walk counter: depth-first enumeration of every walk.
BigInt enumerate_walks(const Digraph& g, int length) {
    BigInt total = 0;
    std::vector<std::pair<VertexId, int>> stack;
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        stack.push_back({v, 0});
    }
    while (!stack.empty()) {
        auto [v, depth] = stack.back();
        stack.pop_back();
        if (depth == length) {
            ++total;
            continue;
        }
        for (VertexId w : g.out_neighbors(v)) {
            stack.push_back({w, depth + 1});
        }
    }
    return total;
}

} // namespace

TEST_CASE("edge list loading") {
    std::istringstream two_lines("a b\nb a\n");
    auto loaded = load_digraph(two_lines, GraphFormat::EdgeList);
    CHECK(loaded.graph.num_vertices() == 2);
    CHECK(edge_set(loaded.graph) == std::set<Edge>{{0, 1}, {1, 0}});
    CHECK(loaded.duplicate_edges == 0);

    std::istringstream repeated("a b\na b\n");
    auto dup = load_digraph(repeated, GraphFormat::EdgeList);
    CHECK(dup.graph.num_vertices() == 2);
    CHECK(edge_set(dup.graph) == std::set<Edge>{{0, 1}});
    CHECK(dup.duplicate_edges == 1);

    std::istringstream blank("a b\n\nb c\n");
    CHECK(load_digraph(blank, GraphFormat::EdgeList).graph.num_edges() == 2);

    std::istringstream bad("a b\nc\n");
    CHECK_THROWS_AS(load_digraph(bad, GraphFormat::EdgeList), ParseError);
    try {
        std::istringstream again("a b\nc\n");
        load_digraph(again, GraphFormat::EdgeList);
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
}

TEST_CASE("labels intern in first-appearance order") {
    std::istringstream in("z y\ny x\n");
    auto g = load_digraph(in, GraphFormat::EdgeList).graph;
    CHECK(g.label(0) == "z");
    CHECK(g.label(1) == "y");
    CHECK(g.label(2) == "x");
    CHECK(g.find_label("x") == VertexId{2});
    CHECK_FALSE(g.find_label("w").has_value());
}

TEST_CASE("flare json loading") {
    auto loaded = load_digraph_file(fixture("flare_small.json"), GraphFormat::FlareJson);
    CHECK(loaded.graph.num_vertices() == 3);
    CHECK(edge_set(loaded.graph) == std::set<Edge>{{0, 1}, {1, 2}});
    CHECK(loaded.graph.label(0) == "flare.A");

    std::istringstream undeclared(R"([{"name": "a", "imports": ["ghost"]}])");
    CHECK_THROWS_AS(load_digraph(undeclared, GraphFormat::FlareJson), SchemaError);

    std::istringstream duplicate(R"([{"name": "a"}, {"name": "a"}])");
    CHECK_THROWS_AS(load_digraph(duplicate, GraphFormat::FlareJson), SchemaError);

    std::istringstream malformed("[{\"name\": ");
    CHECK_THROWS_AS(load_digraph(malformed, GraphFormat::FlareJson), ParseError);
}

TEST_CASE("dot subset loading") {
    auto loaded = load_digraph_file(fixture("sample.dot"), GraphFormat::Dot);
    const Digraph& g = loaded.graph;
    CHECK(g.num_vertices() == 4);
    REQUIRE(g.find_label("entry").has_value());
    REQUIRE(g.find_label("exit").has_value());
    CHECK(g.num_edges() == 4); // entry->a, a->b, b->a, b->exit

    std::istringstream chain("digraph { a -> b -> c; }");
    CHECK(load_digraph(chain, GraphFormat::Dot).graph.num_edges() == 2);

    std::istringstream attributed(
        "strict digraph g { a -> b [label=\"x\", weight=2]; \"two words\" -> a; }");
    const Digraph with_attrs = load_digraph(attributed, GraphFormat::Dot).graph;
    CHECK(with_attrs.num_edges() == 2);
    CHECK(with_attrs.find_label("two words").has_value());

    std::istringstream undirected("graph { a -- b; }");
    CHECK_THROWS_AS(load_digraph(undirected, GraphFormat::Dot), ParseError);
}

TEST_CASE("reverse is an involution") {
    CHECK(edge_set(reverse(Digraph(2, {{0, 1}}))) == std::set<Edge>{{1, 0}});
    CHECK(edge_set(reverse(directed_cycle(3))) == std::set<Edge>{{1, 0}, {2, 1}, {0, 2}});

    const Digraph p = plastic_digraph();
    CHECK(edge_set(reverse(reverse(p))) == edge_set(p));
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Digraph g = erdos_renyi(8, 0.3, seed);
        CHECK(edge_set(reverse(reverse(g))) == edge_set(g));
    }
}

TEST_CASE("classify") {
    auto cycle = classify(directed_cycle(3));
    CHECK(cycle.is_strong);
    CHECK_FALSE(cycle.has_loops);
    CHECK(cycle.weak_component_count == 1);

    auto sparse = classify(Digraph(3, {{0, 1}}));
    CHECK_FALSE(sparse.is_strong);
    CHECK(sparse.weak_component_count == 2);

    CHECK(classify(Digraph(1, {{0, 0}})).has_loops);
}

TEST_CASE("largest weak component") {
    // size-3 component beats size-2
    const Digraph g(5, {{0, 1}, {2, 3}, {3, 4}});
    const Digraph comp = largest_weak_component(g);
    CHECK(comp.num_vertices() == 3);
    CHECK(comp.label(0) == "2");
    CHECK(edge_set(comp) == std::set<Edge>{{0, 1}, {1, 2}});

    // weakly connected graph comes back whole
    const Digraph whole = largest_weak_component(plastic_digraph());
    CHECK(whole.num_vertices() == 3);
    CHECK(edge_set(whole) == edge_set(plastic_digraph()));

    // equal sizes: the component containing vertex 0 wins
    const Digraph tie(8, {{0, 1}, {1, 2}, {5, 6}, {6, 7}});
    CHECK(largest_weak_component(tie).label(0) == "0");

    // output is weakly connected and no other component is larger
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Digraph r = erdos_renyi(12, 0.08, seed);
        const Digraph c = largest_weak_component(r);
        CHECK(classify(c).weak_component_count == 1);
        int count = 0;
        auto comp = weak_components(r, &count);
        std::vector<int> sizes(count, 0);
        for (int id : comp) {
            ++sizes[id];
        }
        CHECK(*std::max_element(sizes.begin(), sizes.end()) ==
              static_cast<int>(c.num_vertices()));
    }
}

TEST_CASE("shortest path matrix") {
    const DistanceMatrix single = shortest_path_matrix(Digraph(2, {{0, 1}}));
    CHECK(single.at(0, 1) == 1);
    CHECK(single.at(0, 0) == 0);
    CHECK_FALSE(single.reachable(1, 0));

    const DistanceMatrix cyc = shortest_path_matrix(directed_cycle(3));
    CHECK(cyc.at(0, 2) == 2);
    CHECK(cyc.at(2, 0) == 1);

    const DistanceMatrix p = shortest_path_matrix(plastic_digraph());
    CHECK(p.at(0, 2) == 2);
    CHECK(p.at(2, 1) == 2);

    // d[j][j] = 0 and the infinity-absorbing triangle inequality
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Digraph g = erdos_renyi(7, 0.25, seed);
        const DistanceMatrix d = shortest_path_matrix(g);
        for (VertexId i = 0; i < 7; ++i) {
            CHECK(d.at(i, i) == 0);
            for (VertexId j = 0; j < 7; ++j) {
                for (VertexId k = 0; k < 7; ++k) {
                    if (d.reachable(i, j) && d.reachable(j, k)) {
                        REQUIRE(d.reachable(i, k));
                        REQUIRE(d.at(i, k) <= d.at(i, j) + d.at(j, k));
                    }
                }
            }
        }
    }
}

TEST_CASE("count walks") {
    CHECK(count_walks(directed_cycle(3), 5) == 3);
    CHECK(count_walks(complete_loopless(3), 4) == 48); // 3 * 2^4
    // brute-force enumeration of all length-3 walks (see the oracle above)
    CHECK(enumerate_walks(plastic_digraph(), 3) == 7);
    CHECK(count_walks(plastic_digraph(), 3) == 7);
    CHECK(count_walks(plastic_digraph(), 0) == 3);

    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        const Digraph g = erdos_renyi(6, 0.35, seed);
        for (int n = 0; n <= 8; ++n) {
            REQUIRE(count_walks(g, n) == enumerate_walks(g, n));
        }
    }
}

TEST_CASE("erdos renyi generator") {
    CHECK(erdos_renyi(6, 0.0, 1).num_edges() == 0);
    CHECK(erdos_renyi(6, 1.0, 1).num_edges() == 30); // n(n-1)
    CHECK_FALSE(erdos_renyi(20, 0.5, 3).has_loops());
    CHECK(edge_set(erdos_renyi(10, 0.3, 42)) == edge_set(erdos_renyi(10, 0.3, 42)));
    CHECK(edge_set(erdos_renyi(10, 0.3, 42)) != edge_set(erdos_renyi(10, 0.3, 43)));
    CHECK_THROWS_AS(erdos_renyi(5, 1.5, 0), PreconditionError);
}

TEST_CASE("bernoulli edge subsample") {
    const Digraph g = erdos_renyi(10, 0.4, 9);
    CHECK(edge_set(bernoulli_edge_subsample(g, 0.0, 5)) == edge_set(g));
    CHECK(bernoulli_edge_subsample(g, 1.0, 5).num_edges() == 0);
    CHECK(bernoulli_edge_subsample(g, 1.0, 5).num_vertices() == g.num_vertices());
    CHECK(edge_set(bernoulli_edge_subsample(g, 0.5, 5)) ==
          edge_set(bernoulli_edge_subsample(g, 0.5, 5)));
}

TEST_CASE("splitmix64 streams are order independent") {
    SplitMix64 rng(123);
    const double later = rng.uniform01(10);
    const double earlier = rng.uniform01(2);
    CHECK(rng.uniform01(10) == later);
    CHECK(rng.uniform01(2) == earlier);
    CHECK(SplitMix64::derive(1, 2) != SplitMix64::derive(2, 1));
}

TEST_CASE("digraph constructor validates") {
    CHECK_THROWS_AS(Digraph(2, {{0, 5}}), std::invalid_argument);
    CHECK_THROWS_AS(Digraph(2, {}, {"a", "a"}), std::invalid_argument);
    // duplicate edges collapse silently at the type level
    CHECK(Digraph(2, {{0, 1}, {0, 1}}).num_edges() == 1);
}
