#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "flowmag/random_graphs.hpp"
#include "flowmag/spectral.hpp"

using namespace flowmag;
using flowmag::testing::complete_loopless;
using flowmag::testing::directed_cycle;
using flowmag::testing::plastic_digraph;

namespace {

IntPolynomial poly(std::vector<long long> coeffs) {
    std::vector<BigInt> big(coeffs.begin(), coeffs.end());
    IntPolynomial p;
    p.coeffs = std::move(big);
    return p;
}

/// A^n over exact integers; the nilpotency oracle.
bool nilpotent_by_matrix_power(const Digraph& g) {
    const VertexId n = g.num_vertices();
    std::vector<BigInt> a(static_cast<std::size_t>(n) * n, 0);
    for (const auto& [u, v] : g.edges()) {
        a[static_cast<std::size_t>(u) * n + v] = 1;
    }
    std::vector<BigInt> power = a, next(a.size());
    for (int step = 1; step < n; ++step) {
        for (VertexId i = 0; i < n; ++i) {
            for (VertexId j = 0; j < n; ++j) {
                BigInt acc = 0;
                for (VertexId k = 0; k < n; ++k) {
                    acc += power[static_cast<std::size_t>(i) * n + k] *
                           a[static_cast<std::size_t>(k) * n + j];
                }
                next[static_cast<std::size_t>(i) * n + j] = std::move(acc);
            }
        }
        power.swap(next);
    }
    for (const BigInt& x : power) {
        if (x != 0) {
            return false;
        }
    }
    return n > 0;
}

} // namespace

TEST_CASE("spectral radius on anchors") {
    CHECK(spectral_radius(directed_cycle(3)).value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(spectral_radius(complete_loopless(4)).value == doctest::Approx(3.0).epsilon(1e-10));
    // real root of x^3 - x - 1
    CHECK(std::abs(spectral_radius(plastic_digraph()).value - 1.3247179572447460) < 1e-9);
    CHECK(spectral_radius(Digraph(2, {{0, 1}})).value == 0.0);
    CHECK(spectral_radius(Digraph(1, {{0, 0}})).value == doctest::Approx(1.0));
}

TEST_CASE("spectral radius bracket and row-sum bounds") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Digraph g = erdos_renyi(12, 0.3, seed);
        const SpectralRadius r = spectral_radius(g);
        CHECK(r.lower <= r.value + 1e-12);
        CHECK(r.value <= r.upper + 1e-12);
        CHECK(r.upper - r.lower <= 1e-10);
        int min_deg = 12, max_deg = 0;
        for (VertexId v = 0; v < 12; ++v) {
            min_deg = std::min(min_deg, g.out_degree(v));
            max_deg = std::max(max_deg, g.out_degree(v));
        }
        CHECK(r.value >= static_cast<double>(min_deg) - 1e-9);
        CHECK(r.value <= static_cast<double>(max_deg) + 1e-9);
    }
}

TEST_CASE("nilpotency agrees with the integer matrix-power oracle") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const Digraph g = erdos_renyi(6, 0.25, seed);
        CHECK(is_acyclic(g) == nilpotent_by_matrix_power(g));
        CHECK((spectral_radius(g).value == 0.0) == nilpotent_by_matrix_power(g));
    }
}

TEST_CASE("topological entropy") {
    CHECK(topological_entropy(directed_cycle(3)) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(std::abs(topological_entropy(plastic_digraph()) - 0.28119) < 1e-4);
    CHECK(std::isinf(topological_entropy(Digraph(2, {{0, 1}}))));
    CHECK(topological_entropy(Digraph(2, {{0, 1}})) < 0);
}

TEST_CASE("characteristic polynomial") {
    CHECK(char_poly(Digraph(2, {})) == poly({0, 0, 1}));               // x^2
    CHECK(char_poly(plastic_digraph()) == poly({-1, -1, 0, 1}));       // x^3 - x - 1
    CHECK(char_poly(directed_cycle(3)) == poly({-1, 0, 0, 1}));        // x^3 - 1
    CHECK(char_poly(plastic_digraph()).to_string() == "x^3 - x - 1");
    CHECK_THROWS_AS(char_poly(erdos_renyi(70, 0.1, 1)), SizeError);
    CHECK(char_poly(erdos_renyi(70, 0.1, 1), 128).degree() == 70);
}

TEST_CASE("characteristic polynomial evaluated at rho is near zero") {
    const double rho = spectral_radius(directed_cycle(3)).value;
    CHECK(std::abs(char_poly(directed_cycle(3)).eval(rho)) < 1e-8);
    const double plastic = spectral_radius(plastic_digraph()).value;
    CHECK(std::abs(char_poly(plastic_digraph()).eval(plastic)) < 1e-8);
}

TEST_CASE("zeta denominator") {
    CHECK(zeta_denominator(plastic_digraph()) == poly({1, 0, -1, -1})); // 1 - t^2 - t^3
    CHECK(zeta_denominator(Digraph(2, {{0, 1}})) == poly({1}));
    CHECK(zeta_denominator(directed_cycle(3)) == poly({1, 0, 0, -1})); // 1 - t^3

    // exact reversal identity against char_poly, coefficientwise
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Digraph g = erdos_renyi(9, 0.3, seed);
        const IntPolynomial p = char_poly(g);
        const IntPolynomial q = zeta_denominator(g);
        const int n = g.num_vertices();
        for (int j = 0; j <= n; ++j) {
            const BigInt expected = p.coeffs[static_cast<std::size_t>(n - j)];
            const BigInt actual =
                j < static_cast<int>(q.coeffs.size()) ? q.coeffs[j] : BigInt(0);
            REQUIRE(actual == expected);
        }
        REQUIRE(q.coeffs.at(0) == 1);
    }
}

TEST_CASE("walk growth approaches the entropy from above") {
    const Digraph p = plastic_digraph();
    const double h = topological_entropy(p);
    double previous = 1e9;
    for (int n : {10, 20, 40}) {
        const double estimate = log_big(count_walks(p, n)) / static_cast<double>(n);
        const double gap = std::abs(estimate - h);
        CHECK(gap < previous);
        previous = gap;
        if (n == 40) {
            CHECK(gap < 0.05);
        }
    }
}

TEST_CASE("katz centrality") {
    const auto cyc_in = katz_centrality(directed_cycle(3), 0.5, KatzDirection::In);
    const auto cyc_out = katz_centrality(directed_cycle(3), 0.5, KatzDirection::Out);
    for (int v = 0; v < 3; ++v) {
        CHECK(cyc_in[v] == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(cyc_out[v] == doctest::Approx(1.0).epsilon(1e-10));
    }

    const Digraph single(2, {{0, 1}});
    const auto in = katz_centrality(single, 0.5, KatzDirection::In);
    CHECK(in[0] == doctest::Approx(0.0));
    CHECK(in[1] == doctest::Approx(0.5));
    const auto out = katz_centrality(single, 0.5, KatzDirection::Out);
    CHECK(out[0] == doctest::Approx(0.5));
    CHECK(out[1] == doctest::Approx(0.0));
}

TEST_CASE("katz against direct series summation") {
    // truncated series oracle: sum_{l=1}^{60} alpha^l row sums of A^l
    const Digraph p = plastic_digraph();
    const double alpha = 0.5;
    std::vector<double> series(3, 0.0), walks{1.0, 1.0, 1.0}, next(3);
    double factor = 1.0;
    for (int l = 1; l <= 60; ++l) {
        for (VertexId v = 0; v < 3; ++v) {
            double acc = 0;
            for (VertexId w : p.out_neighbors(v)) {
                acc += walks[w];
            }
            next[v] = acc;
        }
        walks = next;
        factor *= alpha;
        for (VertexId v = 0; v < 3; ++v) {
            series[v] += factor * walks[v];
        }
    }
    const auto out = katz_centrality(p, alpha, KatzDirection::Out);
    for (VertexId v = 0; v < 3; ++v) {
        CHECK(out[v] == doctest::Approx(series[v]).epsilon(1e-9));
    }
    CHECK(out[1] > out[2]);
}

TEST_CASE("katz out equals katz in of the reversed digraph") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Digraph g = erdos_renyi(8, 0.3, seed);
        const double rho = spectral_radius(g).value;
        const double alpha = rho > 0 ? 0.5 / rho : 0.5;
        const auto out = katz_centrality(g, alpha, KatzDirection::Out);
        const auto rev_in = katz_centrality(reverse(g), alpha, KatzDirection::In);
        for (VertexId v = 0; v < 8; ++v) {
            REQUIRE(out[v] == rev_in[v]);
        }
    }
}

TEST_CASE("katz divergence carries rho") {
    try {
        katz_centrality(directed_cycle(3), 1.0, KatzDirection::In);
        FAIL("expected divergence");
    } catch (const DivergenceError& e) {
        CHECK(e.rho() == doctest::Approx(1.0).epsilon(1e-9));
    }
    CHECK_THROWS_AS(katz_centrality(directed_cycle(3), -0.1, KatzDirection::In),
                    PreconditionError);
    // nilpotent adjacency admits any positive alpha
    CHECK_NOTHROW(katz_centrality(Digraph(2, {{0, 1}}), 5.0, KatzDirection::In));
}
