#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "fixtures.hpp"
#include "flowmag/cover.hpp"
#include "flowmag/features.hpp"
#include "flowmag/random_graphs.hpp"

using namespace flowmag;
using flowmag::testing::directed_cycle;
using flowmag::testing::plastic_digraph;

TEST_CASE("feature table columns") {
    SUBCASE("3-cycle ball columns are log(3 - 2e^{-100}) everywhere") {
        const FeatureTable table = feature_table(directed_cycle(3));
        const auto* ball = table.find("logmag-ball-L2");
        REQUIRE(ball != nullptr);
        const double expected = std::log(3.0 - 2.0 * std::exp(-100.0));
        for (double value : *ball) {
            CHECK(value == doctest::Approx(expected).epsilon(1e-12));
        }
        const auto* rev = table.find("logmag-ball*-L2");
        REQUIRE(rev != nullptr);
        for (double value : *rev) {
            CHECK(value == doctest::Approx(expected).epsilon(1e-12));
        }
    }

    SUBCASE("single edge weighting at scale zero") {
        const FeatureTable table = feature_table(Digraph(2, {{0, 1}}));
        const auto* w = table.find("weighting-t0");
        REQUIRE(w != nullptr);
        CHECK((*w)[0] == doctest::Approx(0.0));
        CHECK((*w)[1] == doctest::Approx(1.0));
    }

    SUBCASE("plastic digraph: every column present and finite") {
        const FeatureTable table = feature_table(plastic_digraph());
        CHECK(table.absent.empty());
        CHECK(table.columns.size() == feature_names().size());
        for (const auto& col : table.columns) {
            REQUIRE(col.values.size() == 3);
            for (double value : col.values) {
                REQUIRE(std::isfinite(value));
            }
        }
        const auto* out_deg = table.find("out-degree");
        REQUIRE(out_deg != nullptr);
        CHECK(*out_deg == std::vector<double>{1.0, 2.0, 1.0});
        // log-ball columns are nonnegative: counts >= 1 force magnitude >= 1
        for (const char* name : {"logmag-ball-L1", "logmag-ball-L2", "logmag-ball-L3",
                                 "logmag-ball*-L1", "logmag-ball*-L2", "logmag-ball*-L3"}) {
            for (double value : *table.find(name)) {
                REQUIRE(value >= 0.0);
            }
        }
    }

    SUBCASE("loops knock out the ball columns with a reason") {
        const FeatureTable table = feature_table(Digraph(2, {{0, 0}, {0, 1}, {1, 0}}));
        CHECK(table.find("logmag-ball-L1") == nullptr);
        bool found = false;
        for (const auto& absent : table.absent) {
            if (absent.name == "logmag-ball-L1") {
                found = true;
                CHECK(absent.reason.find("loops") != std::string::npos);
            }
        }
        CHECK(found);
        // degree and weighting columns survive
        CHECK(table.find("in-degree") != nullptr);
        CHECK(table.find("weighting-t0") != nullptr);
    }
}

TEST_CASE("pearson correlation") {
    const std::vector<double> x{1.0, 2.0, 3.0};
    const std::vector<double> y{1.0, 2.0, 4.0};
    CHECK(*pearson(x, x) == doctest::Approx(1.0).epsilon(1e-15));
    const std::vector<double> neg{-1.0, -2.0, -3.0};
    CHECK(*pearson(x, neg) == doctest::Approx(-1.0).epsilon(1e-15));
    // hand computation: 3 / sqrt(2 * 14/3)
    CHECK(*pearson(x, y) == doctest::Approx(0.9819805060619657).epsilon(1e-12));

    SUBCASE("affine invariance") {
        std::vector<double> scaled(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
            scaled[i] = 2.5 * x[i] + 7.0;
        }
        CHECK(std::abs(*pearson(scaled, y) - *pearson(x, y)) < 1e-12);
    }

    SUBCASE("zero variance is undefined") {
        const std::vector<double> flat{2.0, 2.0, 2.0};
        CHECK_FALSE(pearson(flat, y).has_value());
    }

    SUBCASE("argument errors") {
        const std::vector<double> shorter{1.0, 2.0};
        CHECK_THROWS_AS(pearson(x, shorter), std::invalid_argument);
        const std::vector<double> one{1.0};
        CHECK_THROWS_AS(pearson(one, one), std::invalid_argument);
    }
}

TEST_CASE("trial") {
    SUBCASE("p_remove = 0 leaves both subgraphs equal to the ambient graph") {
        const Digraph ambient = largest_weak_component(erdos_renyi(20, 0.2, 3));
        const TrialOutcome outcome = trial(ambient, 0.0, 77);
        CHECK_FALSE(outcome.degenerate);
        CHECK(outcome.shared_vertices == static_cast<std::size_t>(ambient.num_vertices()));
        for (const auto& [name, coeff] : outcome.coefficients) {
            if (coeff) {
                REQUIRE(*coeff == doctest::Approx(1.0).epsilon(1e-9));
            }
        }
    }

    SUBCASE("same seed gives identical coefficients") {
        const Digraph ambient = largest_weak_component(erdos_renyi(25, 0.15, 4));
        const TrialOutcome a = trial(ambient, 0.5, 123);
        const TrialOutcome b = trial(ambient, 0.5, 123);
        REQUIRE(a.coefficients.size() == b.coefficients.size());
        for (std::size_t i = 0; i < a.coefficients.size(); ++i) {
            REQUIRE(a.coefficients[i].second == b.coefficients[i].second);
        }
    }

    SUBCASE("plastic ambient at p = 1/2 is mostly degenerate (exhaustive oracle)") {
        // enumerate all 16 edge subsets as subsample outcomes and all 256
        // outcome pairs; shared vertices below 3 means a degenerate trial
        const Digraph ambient = plastic_digraph();
        const auto& edges = ambient.edges();
        std::vector<std::set<std::string>> component_labels;
        for (unsigned mask = 0; mask < 16; ++mask) {
            std::vector<Edge> kept;
            for (std::size_t i = 0; i < edges.size(); ++i) {
                if (mask & (1u << i)) {
                    kept.push_back(edges[i]);
                }
            }
            const Digraph comp = largest_weak_component(Digraph(3, kept));
            std::set<std::string> labels;
            for (VertexId v = 0; v < comp.num_vertices(); ++v) {
                labels.insert(comp.label(v));
            }
            component_labels.push_back(std::move(labels));
        }
        int degenerate_pairs = 0;
        for (unsigned a = 0; a < 16; ++a) {
            for (unsigned b = 0; b < 16; ++b) {
                std::vector<std::string> shared;
                std::set_intersection(component_labels[a].begin(), component_labels[a].end(),
                                      component_labels[b].begin(), component_labels[b].end(),
                                      std::back_inserter(shared));
                if (shared.size() < 3) {
                    ++degenerate_pairs;
                }
            }
        }
        CHECK(degenerate_pairs == 156); // 256 - 10^2 spanning pairs
        CHECK(degenerate_pairs > 128);  // most trials degenerate

        int observed_degenerate = 0;
        for (std::uint64_t seed = 0; seed < 32; ++seed) {
            const TrialOutcome outcome = trial(ambient, 0.5, seed);
            if (outcome.degenerate) {
                ++observed_degenerate;
                for (const auto& [name, coeff] : outcome.coefficients) {
                    REQUIRE_FALSE(coeff.has_value());
                }
            }
        }
        CHECK(observed_degenerate > 0);
    }
}

TEST_CASE("run_experiment") {
    SUBCASE("single trial without removal pins every defined coefficient at 1") {
        ExperimentConfig cfg;
        cfg.source = ExperimentConfig::Source::ErdosRenyi;
        cfg.er_n = 24;
        cfg.er_q = 0.18;
        cfg.trials = 1;
        cfg.p_remove = 0.0;
        cfg.seed = 6;
        const CorrelationReport report = run_experiment(cfg);
        CHECK(report.degenerate_trials == 0);
        for (std::size_t f = 0; f < report.features.size(); ++f) {
            for (const auto& coeff : report.coefficients[f]) {
                if (coeff) {
                    REQUIRE(*coeff == doctest::Approx(1.0).epsilon(1e-9));
                }
            }
        }
        // the report echoes its configuration
        CHECK(report.config.er_n == 24);
        CHECK(report.config.seed == 6);
        CHECK(report.config.p_remove == 0.0);
    }

    SUBCASE("bit-identical across runs and thread counts") {
        ExperimentConfig cfg;
        cfg.er_n = 30;
        cfg.er_q = 0.15;
        cfg.trials = 6;
        cfg.p_remove = 0.5;
        cfg.seed = 99;
        cfg.threads = 1;
        const CorrelationReport serial = run_experiment(cfg);
        cfg.threads = 2;
        const CorrelationReport threaded = run_experiment(cfg);
        cfg.threads = 4;
        const CorrelationReport wide = run_experiment(cfg);
        REQUIRE(serial.coefficients == threaded.coefficients);
        REQUIRE(serial.coefficients == wide.coefficients);
        REQUIRE(serial.degenerate_trials == threaded.degenerate_trials);
    }

    SUBCASE("coefficients stay inside [-1, 1] and degenerates are counted") {
        ExperimentConfig cfg;
        cfg.er_n = 16;
        cfg.er_q = 0.12;
        cfg.trials = 12;
        cfg.p_remove = 0.7;
        cfg.seed = 1234;
        const CorrelationReport report = run_experiment(cfg);
        std::size_t undefined_total = 0;
        for (std::size_t f = 0; f < report.features.size(); ++f) {
            for (const auto& coeff : report.coefficients[f]) {
                if (coeff) {
                    REQUIRE(*coeff >= -1.0 - 1e-12);
                    REQUIRE(*coeff <= 1.0 + 1e-12);
                } else {
                    ++undefined_total;
                }
            }
            REQUIRE(report.coefficients[f].size() == static_cast<std::size_t>(cfg.trials));
        }
        std::size_t counted = 0;
        for (std::size_t c : report.undefined_counts) {
            counted += c;
        }
        CHECK(counted == undefined_total);
        CHECK(report.degenerate_trials * report.features.size() <= undefined_total);
    }
}

TEST_CASE("ball magnitude correlations reduce to count correlations") {
    const Digraph g = largest_weak_component(erdos_renyi(14, 0.25, 8));
    const auto counts = ball_sizes_all(g, 3);
    std::vector<double> count_col, mag_a, mag_b;
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        count_col.push_back(counts[v].convert_to<double>());
        mag_a.push_back(ball_magnitude(g, v, 3, 0.7));
        mag_b.push_back(ball_magnitude(g, v, 3, 3.0));
    }
    const auto r_counts = pearson(count_col, mag_b);
    const auto r_mags = pearson(mag_a, mag_b);
    REQUIRE(r_counts.has_value());
    REQUIRE(r_mags.has_value());
    CHECK(std::abs(*r_counts - *r_mags) < 1e-10);
}
