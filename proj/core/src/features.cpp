#include "flowmag/features.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>
#include <unordered_map>

#include "flowmag/cover.hpp"
#include "flowmag/graph_io.hpp"
#include "flowmag/random_graphs.hpp"
#include "flowmag/rng.hpp"
#include "flowmag/spectral.hpp"

namespace flowmag {

std::vector<std::string> feature_names(const FeatureConfig& cfg) {
    std::vector<std::string> names{"in-degree", "out-degree", "katz-in", "katz-out",
                                   "weighting-t0", "coweighting-t0"};
    for (int l = 1; l <= cfg.ball_radius_max; ++l) {
        names.push_back("logmag-ball-L" + std::to_string(l));
    }
    for (int l = 1; l <= cfg.ball_radius_max; ++l) {
        names.push_back("logmag-ball*-L" + std::to_string(l));
    }
    return names;
}

const std::vector<double>* FeatureTable::find(const std::string& name) const {
    for (const auto& col : columns) {
        if (col.name == name) {
            return &col.values;
        }
    }
    return nullptr;
}

FeatureTable feature_table(const Digraph& g, const FeatureConfig& cfg) {
    const VertexId n = g.num_vertices();
    FeatureTable table;
    table.vertices.reserve(n);
    for (VertexId v = 0; v < n; ++v) {
        table.vertices.push_back(g.label(v));
    }
    table.meta.weighting_scale = cfg.weighting_scale;
    table.meta.ball_scale = cfg.ball_scale;

    std::vector<double> in_deg(n), out_deg(n);
    for (VertexId v = 0; v < n; ++v) {
        in_deg[v] = g.in_degree(v);
        out_deg[v] = g.out_degree(v);
    }
    table.columns.push_back({"in-degree", std::move(in_deg)});
    table.columns.push_back({"out-degree", std::move(out_deg)});

    // Katz with alpha tied to this graph's spectral radius (the reverse graph
    // has the same spectrum, so one radius serves both directions).
    try {
        const double rho = spectral_radius(g).value;
        const double alpha = rho > 0.0 ? cfg.katz_alpha_factor / rho : cfg.katz_alpha_factor;
        table.meta.rho = rho;
        table.meta.alpha = alpha;
        table.columns.push_back({"katz-in", katz_centrality(g, alpha, KatzDirection::In)});
        table.columns.push_back({"katz-out", katz_centrality(g, alpha, KatzDirection::Out)});
    } catch (const std::exception& e) {
        table.absent.push_back({"katz-in", e.what()});
        table.absent.push_back({"katz-out", e.what()});
    }

    {
        const SimilarityMatrix z = similarity_matrix(shortest_path_matrix(g), cfg.weighting_scale);
        WeightingResult row = weighting(z, WeightingSide::Row);
        WeightingResult col = weighting(z, WeightingSide::Column);
        table.meta.weighting_method = row.method;
        table.meta.coweighting_method = col.method;
        table.columns.push_back({"weighting-t0", std::move(row.w)});
        table.columns.push_back({"coweighting-t0", std::move(col.w)});
    }

    if (g.has_loops()) {
        for (int l = 1; l <= cfg.ball_radius_max; ++l) {
            table.absent.push_back({"logmag-ball-L" + std::to_string(l), "graph has loops"});
            table.absent.push_back({"logmag-ball*-L" + std::to_string(l), "graph has loops"});
        }
    } else {
        const Digraph rev = reverse(g);
        for (int l = 1; l <= cfg.ball_radius_max; ++l) {
            auto counts = ball_sizes_all(g, l);
            std::vector<double> column(n);
            for (VertexId v = 0; v < n; ++v) {
                column[v] = log_ball_magnitude_from_count(counts[v], cfg.ball_scale);
            }
            table.columns.push_back({"logmag-ball-L" + std::to_string(l), std::move(column)});
        }
        for (int l = 1; l <= cfg.ball_radius_max; ++l) {
            auto counts = ball_sizes_all(rev, l);
            std::vector<double> column(n);
            for (VertexId v = 0; v < n; ++v) {
                column[v] = log_ball_magnitude_from_count(counts[v], cfg.ball_scale);
            }
            table.columns.push_back({"logmag-ball*-L" + std::to_string(l), std::move(column)});
        }
    }
    return table;
}

std::optional<double> pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("pearson needs vectors of equal length");
    }
    const std::size_t n = x.size();
    if (n < 2) {
        throw std::invalid_argument("pearson needs at least two samples");
    }
    double mean_x = 0.0, mean_y = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mean_x += x[i];
        mean_y += y[i];
    }
    mean_x /= static_cast<double>(n);
    mean_y /= static_cast<double>(n);
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mean_x;
        const double dy = y[i] - mean_y;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx <= 0.0 || syy <= 0.0) {
        return std::nullopt;
    }
    return sxy / std::sqrt(sxx * syy);
}

TrialOutcome trial(const Digraph& ambient, double p_remove, std::uint64_t seed,
                   const FeatureConfig& cfg) {
    const Digraph sub_a = largest_weak_component(bernoulli_edge_subsample(ambient, p_remove, seed ^ 1));
    const Digraph sub_b = largest_weak_component(bernoulli_edge_subsample(ambient, p_remove, seed ^ 2));

    // Shared vertices are matched by their original ambient labels.
    std::unordered_map<std::string, VertexId> index_b;
    for (VertexId v = 0; v < sub_b.num_vertices(); ++v) {
        index_b.emplace(sub_b.label(v), v);
    }
    std::vector<std::pair<VertexId, VertexId>> shared;
    for (VertexId v = 0; v < sub_a.num_vertices(); ++v) {
        auto it = index_b.find(sub_a.label(v));
        if (it != index_b.end()) {
            shared.emplace_back(v, it->second);
        }
    }

    TrialOutcome outcome;
    outcome.shared_vertices = shared.size();
    const auto names = feature_names(cfg);
    if (shared.size() < 3) {
        outcome.degenerate = true;
        for (const auto& name : names) {
            outcome.coefficients.emplace_back(name, std::nullopt);
        }
        return outcome;
    }

    const FeatureTable table_a = feature_table(sub_a, cfg);
    const FeatureTable table_b = feature_table(sub_b, cfg);
    std::vector<double> xs(shared.size()), ys(shared.size());
    for (const auto& name : names) {
        const auto* col_a = table_a.find(name);
        const auto* col_b = table_b.find(name);
        if (col_a == nullptr || col_b == nullptr) {
            outcome.coefficients.emplace_back(name, std::nullopt);
            continue;
        }
        for (std::size_t i = 0; i < shared.size(); ++i) {
            xs[i] = (*col_a)[shared[i].first];
            ys[i] = (*col_b)[shared[i].second];
        }
        outcome.coefficients.emplace_back(name, pearson(xs, ys));
    }
    return outcome;
}

namespace {

Quartiles quartiles_of(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    auto quantile = [&](double p) {
        // Linear interpolation between order statistics (R type 7).
        const double pos = p * static_cast<double>(values.size() - 1);
        const std::size_t lo = static_cast<std::size_t>(pos);
        const std::size_t hi = std::min(lo + 1, values.size() - 1);
        const double frac = pos - static_cast<double>(lo);
        return values[lo] * (1.0 - frac) + values[hi] * frac;
    };
    Quartiles q;
    q.min = values.front();
    q.q1 = quantile(0.25);
    q.median = quantile(0.5);
    q.q3 = quantile(0.75);
    q.max = values.back();
    return q;
}

} // namespace

std::optional<Quartiles> CorrelationReport::quartiles_for(const std::string& feature) const {
    for (std::size_t f = 0; f < features.size(); ++f) {
        if (features[f] == feature) {
            return quartiles[f];
        }
    }
    return std::nullopt;
}

CorrelationReport run_experiment(const ExperimentConfig& cfg) {
    if (cfg.trials < 1) {
        throw PreconditionError("experiment needs at least one trial");
    }
    CorrelationReport report;
    report.config = cfg;
    report.features = feature_names(cfg.features);

    std::optional<Digraph> fixed_ambient;
    if (cfg.source == ExperimentConfig::Source::Flare) {
        Digraph loaded = load_digraph_file(cfg.flare_path, GraphFormat::FlareJson).graph;
        if (cfg.strip_loops) {
            loaded = strip_loops(loaded);
        }
        fixed_ambient = largest_weak_component(loaded);
    }

    std::vector<TrialOutcome> outcomes(cfg.trials);
    auto run_one = [&](int index) {
        const std::uint64_t trial_seed =
            SplitMix64::derive(cfg.seed, static_cast<std::uint64_t>(index));
        if (fixed_ambient) {
            outcomes[index] = trial(*fixed_ambient, cfg.p_remove, trial_seed, cfg.features);
        } else {
            Digraph ambient = erdos_renyi(static_cast<VertexId>(cfg.er_n), cfg.er_q,
                                          trial_seed ^ 3);
            if (cfg.strip_loops) {
                ambient = strip_loops(ambient);
            }
            outcomes[index] = trial(largest_weak_component(ambient), cfg.p_remove, trial_seed,
                                    cfg.features);
        }
    };

    int threads = cfg.threads > 0 ? cfg.threads
                                  : static_cast<int>(std::thread::hardware_concurrency());
    threads = std::max(1, std::min(threads, cfg.trials));
    if (threads == 1) {
        for (int i = 0; i < cfg.trials; ++i) {
            run_one(i);
        }
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int t = 0; t < threads; ++t) {
            pool.emplace_back([&] {
                while (true) {
                    const int index = next.fetch_add(1);
                    if (index >= cfg.trials) {
                        return;
                    }
                    run_one(index);
                }
            });
        }
        for (auto& th : pool) {
            th.join();
        }
    }

    const std::size_t f_count = report.features.size();
    report.coefficients.assign(f_count, {});
    report.undefined_counts.assign(f_count, 0);
    for (auto& per_feature : report.coefficients) {
        per_feature.resize(cfg.trials);
    }
    for (int i = 0; i < cfg.trials; ++i) {
        const TrialOutcome& outcome = outcomes[i];
        if (outcome.degenerate) {
            ++report.degenerate_trials;
        }
        for (std::size_t f = 0; f < f_count; ++f) {
            report.coefficients[f][i] = outcome.coefficients[f].second;
            if (!outcome.coefficients[f].second) {
                ++report.undefined_counts[f];
            }
        }
    }
    report.quartiles.assign(f_count, std::nullopt);
    for (std::size_t f = 0; f < f_count; ++f) {
        std::vector<double> defined;
        for (const auto& c : report.coefficients[f]) {
            if (c) {
                defined.push_back(*c);
            }
        }
        if (!defined.empty()) {
            report.quartiles[f] = quartiles_of(std::move(defined));
        }
    }
    return report;
}

} // namespace flowmag
