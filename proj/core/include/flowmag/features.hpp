#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "flowmag/digraph.hpp"
#include "flowmag/metric.hpp"

namespace flowmag {

struct FeatureConfig {
    double weighting_scale = 0.0; // scale for the (co)weighting columns
    double ball_scale = 100.0;    // scale for log-ball-magnitude columns
    int ball_radius_max = 3;      // columns L = 1..ball_radius_max
    double katz_alpha_factor = 0.9; // alpha = factor / rho (factor itself when rho = 0)
};

/// Canonical column names in report order ("*" marks reversed-edge balls).
std::vector<std::string> feature_names(const FeatureConfig& cfg = {});

struct FeatureTable {
    std::vector<std::string> vertices; // original labels
    struct Column {
        std::string name;
        std::vector<double> values;
    };
    std::vector<Column> columns;
    struct AbsentColumn {
        std::string name;
        std::string reason;
    };
    std::vector<AbsentColumn> absent;

    struct Meta {
        double rho = 0.0;
        double alpha = 0.0;
        double weighting_scale = 0.0;
        double ball_scale = 0.0;
        SolveMethod weighting_method = SolveMethod::ExactSolve;
        SolveMethod coweighting_method = SolveMethod::ExactSolve;
    } meta;

    const std::vector<double>* find(const std::string& name) const;
};

/**
 * Per-vertex features: in/out degree, Katz centralities in both directions,
 * (co)weighting at the weighting scale, and log-magnitudes of cover balls of
 * radius 1..L in both edge directions. Column failures (Katz divergence,
 * loops blocking ball counts) are recorded as absent columns with a reason.
 */
FeatureTable feature_table(const Digraph& g, const FeatureConfig& cfg = {});

/// Sample Pearson correlation; nullopt when either variance vanishes.
std::optional<double> pearson(std::span<const double> x, std::span<const double> y);

struct TrialOutcome {
    bool degenerate = false;        // fewer than 3 shared vertices
    std::size_t shared_vertices = 0;
    /// Per canonical feature: correlation over shared vertices, or nullopt.
    std::vector<std::pair<std::string, std::optional<double>>> coefficients;
};

/**
 * One matching trial: two independent Bernoulli edge subsamples of the
 * ambient graph (streams seed^1 and seed^2), reduced to their largest weak
 * components, compared feature-by-feature on the vertices they share.
 */
TrialOutcome trial(const Digraph& ambient, double p_remove, std::uint64_t seed,
                   const FeatureConfig& cfg = {});

struct ExperimentConfig {
    enum class Source { Flare, ErdosRenyi };

    Source source = Source::ErdosRenyi;
    std::string flare_path; // Flare mode: fixed ambient graph loaded from file
    int er_n = 100;
    double er_q = 0.04;
    int trials = 100;
    double p_remove = 0.5;
    std::uint64_t seed = 0;
    bool strip_loops = false; // strip ambient loops so ball columns are defined
    int threads = 0;          // 0 = hardware concurrency
    FeatureConfig features;
};

struct Quartiles {
    double min = 0.0, q1 = 0.0, median = 0.0, q3 = 0.0, max = 0.0;
};

struct CorrelationReport {
    ExperimentConfig config;
    std::vector<std::string> features;
    /// coefficients[f][trial]; nullopt for degenerate or zero-variance trials.
    std::vector<std::vector<std::optional<double>>> coefficients;
    std::vector<std::optional<Quartiles>> quartiles; // over defined coefficients
    std::vector<std::size_t> undefined_counts;
    std::size_t degenerate_trials = 0;

    std::optional<Quartiles> quartiles_for(const std::string& feature) const;
};

/**
 * Runs the correlation experiment. Flare mode fixes the ambient graph across
 * trials; Erdos-Renyi mode draws a fresh ambient graph per trial. Trials run
 * concurrently but land in indexed slots, so the report is a pure function of
 * the config, independent of thread count.
 */
CorrelationReport run_experiment(const ExperimentConfig& cfg);

} // namespace flowmag
