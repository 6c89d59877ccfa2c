#include "commands.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "flowmag/cover.hpp"
#include "flowmag/features.hpp"
#include "flowmag/flow.hpp"
#include "flowmag/graph_io.hpp"
#include "flowmag/metric.hpp"
#include "flowmag/random_graphs.hpp"
#include "flowmag/spectral.hpp"
#include "report.hpp"

namespace flowmag::cli {

namespace {

std::optional<GraphFormat> parse_format(const std::string& name) {
    if (name.empty()) {
        return std::nullopt;
    }
    if (name == "edges" || name == "edge-list") {
        return GraphFormat::EdgeList;
    }
    if (name == "dot") {
        return GraphFormat::Dot;
    }
    if (name == "flare" || name == "json") {
        return GraphFormat::FlareJson;
    }
    throw CLI::ValidationError("--input-format", "unknown format '" + name + "'");
}

Json edge_json(const Digraph& g, const Edge& e) {
    return Json::array({g.label(e.first), g.label(e.second)});
}

Json graph_edges_json(const Digraph& g) {
    Json edges = Json::array();
    for (const auto& e : g.edges()) {
        edges.push_back(edge_json(g, e));
    }
    return edges;
}

struct CommonInput {
    std::string path;
    std::string format;
    bool strip = false;

    Digraph load(std::ostream& err) const {
        LoadResult loaded = load_digraph_file(path, parse_format(format));
        if (loaded.duplicate_edges > 0) {
            err << "warning: collapsed " << loaded.duplicate_edges << " duplicate edge"
                << (loaded.duplicate_edges == 1 ? "" : "s") << "\n";
        }
        return strip ? strip_loops(loaded.graph) : loaded.graph;
    }
};

void add_input_options(CLI::App* cmd, CommonInput& input, bool with_strip = true) {
    cmd->add_option("input", input.path, "input graph file, or - for stdin")->required();
    cmd->add_option("--input-format", input.format, "edges | dot | flare (default: by extension)");
    if (with_strip) {
        cmd->add_flag("--strip-loops", input.strip, "drop self-loops after loading");
    }
}

// --- correlate config files --------------------------------------------------

ExperimentConfig parse_experiment_json(const Json& doc) {
    ExperimentConfig cfg;
    const std::string source = doc.value("source", "er");
    if (source == "flare") {
        cfg.source = ExperimentConfig::Source::Flare;
        cfg.flare_path = doc.at("flare_path").get<std::string>();
    } else if (source == "er") {
        cfg.source = ExperimentConfig::Source::ErdosRenyi;
        cfg.er_n = doc.value("n", cfg.er_n);
        cfg.er_q = doc.value("q", cfg.er_q);
    } else {
        throw SchemaError("config source must be 'er' or 'flare'");
    }
    cfg.trials = doc.value("trials", cfg.trials);
    cfg.p_remove = doc.value("p_remove", cfg.p_remove);
    if (!doc.contains("seed")) {
        throw SchemaError("experiment config must pin an explicit seed");
    }
    cfg.seed = doc.at("seed").get<std::uint64_t>();
    cfg.strip_loops = doc.value("strip_loops", cfg.strip_loops);
    cfg.threads = doc.value("threads", cfg.threads);
    if (doc.contains("features")) {
        const Json& f = doc.at("features");
        cfg.features.weighting_scale = f.value("weighting_scale", cfg.features.weighting_scale);
        cfg.features.ball_scale = f.value("ball_scale", cfg.features.ball_scale);
        cfg.features.ball_radius_max = f.value("ball_radius_max", cfg.features.ball_radius_max);
        cfg.features.katz_alpha_factor =
            f.value("katz_alpha_factor", cfg.features.katz_alpha_factor);
    }
    return cfg;
}

/// Flat TOML subset: `key = value` lines with strings, numbers, booleans and
/// # comments; enough for the declarative experiment files.
Json parse_flat_toml(std::istream& in) {
    Json doc = Json::object();
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.resize(hash);
        }
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ParseError("expected 'key = value'", line_no);
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw ParseError("expected 'key = value'", line_no);
        }
        if (value.front() == '"') {
            if (value.size() < 2 || value.back() != '"') {
                throw ParseError("unterminated string", line_no);
            }
            doc[key] = value.substr(1, value.size() - 2);
        } else if (value == "true" || value == "false") {
            doc[key] = (value == "true");
        } else {
            try {
                if (value.find_first_of(".eE") != std::string::npos) {
                    doc[key] = std::stod(value);
                } else {
                    doc[key] = static_cast<std::uint64_t>(std::stoull(value));
                }
            } catch (const std::exception&) {
                throw ParseError("cannot parse value '" + value + "'", line_no);
            }
        }
    }
    return doc;
}

ExperimentConfig load_experiment_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::ios_base::failure("cannot open " + path);
    }
    const bool toml = path.size() >= 5 && path.compare(path.size() - 5, 5, ".toml") == 0;
    if (toml) {
        return parse_experiment_json(parse_flat_toml(in));
    }
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    try {
        return parse_experiment_json(Json::parse(text));
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(e.what(), 1);
    }
}

// --- subcommand bodies -------------------------------------------------------

int cmd_entropy(const CommonInput& input, std::ostream& out, std::ostream& err) {
    const Digraph g = input.load(err);
    Json doc;
    doc["rho"] = json_number(spectral_radius(g).value);
    doc["h"] = json_number(topological_entropy(g));
    doc["charpoly"] = poly_json(char_poly(g));
    write_json(out, doc);
    return 0;
}

int cmd_validate_flow(const CommonInput& input, std::ostream& out, std::ostream& err) {
    const Digraph g = input.load(err);
    const FlowGraph f = validate_flow(g); // FlowError -> exit 1 in the dispatcher
    Json doc;
    doc["valid"] = true;
    doc["n"] = f.graph.num_vertices();
    doc["source"] = f.graph.label(f.source);
    doc["target"] = f.graph.label(f.target);
    doc["entry"] = edge_json(f.graph, f.entry);
    doc["exit"] = edge_json(f.graph, f.exit);
    write_json(out, doc);
    return 0;
}

int cmd_compose(const std::vector<std::string>& paths, const std::string& format,
                const std::string& out_format, std::ostream& out, std::ostream& err) {
    std::vector<FlowGraph> factors;
    for (const auto& path : paths) {
        CommonInput input{path, format, false};
        factors.push_back(validate_flow(input.load(err)));
    }
    const FlowGraph composed = series_compose(factors);
    if (out_format == "edges") {
        write_edge_list(out, composed.graph);
        return 0;
    }
    Json doc;
    doc["n"] = composed.graph.num_vertices();
    doc["source"] = composed.graph.label(composed.source);
    doc["target"] = composed.graph.label(composed.target);
    doc["entry"] = edge_json(composed.graph, composed.entry);
    doc["exit"] = edge_json(composed.graph, composed.exit);
    doc["edges"] = graph_edges_json(composed.graph);
    doc["h"] = json_number(topological_entropy(composed.graph));
    doc["zeta_denominator"] = poly_json(zeta_denominator(composed.graph));
    Json factor_info = Json::array();
    for (std::size_t i = 0; i < factors.size(); ++i) {
        Json entry;
        entry["file"] = paths[i];
        entry["n"] = factors[i].graph.num_vertices();
        entry["h"] = json_number(topological_entropy(factors[i].graph));
        entry["zeta_denominator"] = poly_json(zeta_denominator(factors[i].graph));
        factor_info.push_back(std::move(entry));
    }
    doc["factors"] = std::move(factor_info);
    write_json(out, doc);
    return 0;
}

int cmd_flow_magnitude(const CommonInput& input, bool unit_entropy_zero, std::ostream& out,
                       std::ostream& err) {
    const FlowGraph f = validate_flow(input.load(err));
    SimilarityOptions opts;
    if (unit_entropy_zero) {
        opts.unit_entropy = 0.0;
    }
    const TropicalMatrix z = tropical_similarity_matrix(f, opts);
    const PrincipalSolutions p = principal_solutions(z);
    const TropicalMagnitude m = tropical_magnitude(z);

    Json doc;
    Json edges = Json::array();
    for (const auto& e : z.edges) {
        edges.push_back(edge_json(f.graph, e));
    }
    doc["edges"] = std::move(edges);
    Json rows = Json::array();
    for (std::size_t s = 0; s < z.size(); ++s) {
        Json row = Json::array();
        for (std::size_t t = 0; t < z.size(); ++t) {
            row.push_back(json_number(z.at(s, t)));
        }
        rows.push_back(std::move(row));
    }
    doc["Z"] = std::move(rows);
    Json v_hat = Json::array();
    Json w_hat = Json::array();
    for (std::size_t i = 0; i < z.size(); ++i) {
        v_hat.push_back(json_number(p.v_hat[i]));
        w_hat.push_back(json_number(p.w_hat[i]));
    }
    doc["v_hat"] = std::move(v_hat);
    doc["w_hat"] = std::move(w_hat);
    doc["magnitude"] = m.value ? json_number(*m.value) : Json("undefined");
    write_json(out, doc);
    return 0;
}

int cmd_cover_ball(const CommonInput& input, const std::string& base, int radius, double t,
                   bool reverse_dir, int sequence_lmax, std::ostream& out, std::ostream& err) {
    const Digraph g = input.load(err);
    VertexId v0 = 0;
    if (auto found = g.find_label(base)) {
        v0 = *found;
    } else {
        throw PreconditionError("no vertex labeled '" + base + "'");
    }
    const BallDirection direction =
        reverse_dir ? BallDirection::Reverse : BallDirection::Forward;

    if (sequence_lmax > 0) {
        const auto s = volume_entropy_sequence(g, v0, t, sequence_lmax, direction);
        out << "L,s_L\n";
        for (std::size_t i = 0; i < s.size(); ++i) {
            out << (i + 1) << ',' << csv_number(s[i]) << '\n';
        }
        return 0;
    }

    const Digraph base_graph = direction == BallDirection::Reverse ? reverse(g) : g;
    const auto depth_counts = ball_depth_counts(base_graph, v0, radius);
    Json doc;
    doc["base"] = g.label(v0);
    doc["radius"] = radius;
    doc["t"] = json_number(t);
    doc["direction"] = reverse_dir ? "reverse" : "forward";
    Json per_depth = Json::array();
    Json cumulative = Json::array();
    BigInt running = 0;
    for (const BigInt& c : depth_counts) {
        running += c;
        per_depth.push_back(json_integer(c));
        cumulative.push_back(json_integer(running));
    }
    doc["depth_counts"] = std::move(per_depth);
    doc["cumulative_counts"] = std::move(cumulative);
    doc["size"] = json_integer(running);
    const double log_mag = log_ball_magnitude_from_count(running, t);
    doc["log_magnitude"] = json_number(log_mag);
    doc["magnitude"] = json_number(std::exp(log_mag));
    write_json(out, doc);
    return 0;
}

int cmd_metric_magnitude(const CommonInput& input, const std::string& t_list, bool weights,
                         std::ostream& out, std::ostream& err) {
    const Digraph g = input.load(err);
    std::vector<double> ts;
    std::stringstream ss(t_list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) {
            continue;
        }
        try {
            ts.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw PreconditionError("cannot parse scale '" + item + "'");
        }
    }
    if (ts.empty()) {
        throw PreconditionError("--t needs at least one scale");
    }

    if (weights) {
        out << "t,vertex,w,v\n";
        const DistanceMatrix d = shortest_path_matrix(g);
        for (double t : ts) {
            const SimilarityMatrix z = similarity_matrix(d, t);
            const WeightingResult row = weighting(z, WeightingSide::Row);
            const WeightingResult col = weighting(z, WeightingSide::Column);
            for (VertexId v = 0; v < g.num_vertices(); ++v) {
                out << csv_number(t) << ',' << g.label(v) << ',' << csv_number(row.w[v]) << ','
                    << csv_number(col.w[v]) << '\n';
            }
        }
        return 0;
    }

    out << "t,magnitude,method,residual\n";
    for (const MagnitudePoint& p : magnitude_function(g, ts)) {
        out << csv_number(p.t) << ',' << csv_number(p.magnitude) << ',' << to_string(p.method)
            << ',' << csv_number(p.residual) << '\n';
    }
    return 0;
}

int cmd_features(const CommonInput& input, const FeatureConfig& cfg, std::ostream& out,
                 std::ostream& err) {
    const Digraph g = input.load(err);
    write_feature_csv(out, feature_table(largest_weak_component(g), cfg));
    return 0;
}

int cmd_correlate(const std::string& config_path, const std::string& csv_path, int threads,
                  std::ostream& out, std::ostream& err) {
    ExperimentConfig cfg = load_experiment_config(config_path);
    if (threads > 0) {
        cfg.threads = threads;
    }
    const CorrelationReport report = run_experiment(cfg);
    write_json(out, experiment_report_json(report));
    if (!csv_path.empty()) {
        std::ofstream csv(csv_path);
        if (!csv) {
            throw std::ios_base::failure("cannot write " + csv_path);
        }
        write_experiment_csv(csv, report);
        err << "wrote " << csv_path << "\n";
    }
    return 0;
}

int cmd_gen_er(int n, double q, std::uint64_t seed, std::ostream& out) {
    write_edge_list(out, erdos_renyi(static_cast<VertexId>(n), q, seed));
    return 0;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"entropy and magnitude invariants of digraphs and flow graphs", "flowmag"};
    app.require_subcommand(1);

    CommonInput entropy_in;
    auto* entropy_cmd = app.add_subcommand("entropy",
                                           "spectral radius, topological entropy, charpoly");
    add_input_options(entropy_cmd, entropy_in);

    CommonInput validate_in;
    auto* validate_cmd = app.add_subcommand("validate-flow", "check the flow-graph clauses");
    add_input_options(validate_cmd, validate_in);

    std::vector<std::string> compose_paths;
    std::string compose_format, compose_out_format = "json";
    auto* compose_cmd = app.add_subcommand("compose", "series-compose flow graphs left to right");
    compose_cmd->add_option("inputs", compose_paths, "flow graph files")->required();
    compose_cmd->add_option("--input-format", compose_format, "edges | dot | flare");
    compose_cmd->add_option("--format", compose_out_format, "json | edges (default json)");

    CommonInput flowmag_in;
    bool unit_entropy_zero = false;
    auto* flowmag_cmd = app.add_subcommand(
        "flow-magnitude", "tropical similarity matrix and principal (co)weightings");
    add_input_options(flowmag_cmd, flowmag_in);
    flowmag_cmd->add_flag("--unit-entropy-zero", unit_entropy_zero,
                          "assign entropy 0 (instead of -inf) to the one-edge hom-object");

    CommonInput cover_in;
    std::string cover_base;
    int cover_radius = 3;
    double cover_t = 100.0;
    bool cover_reverse = false;
    int cover_sequence = 0;
    auto* cover_cmd = app.add_subcommand("cover-ball",
                                         "universal-cover ball counts and magnitudes");
    add_input_options(cover_cmd, cover_in);
    cover_cmd->add_option("--base", cover_base, "basepoint label")->required();
    cover_cmd->add_option("--radius", cover_radius, "ball radius L (default 3)");
    cover_cmd->add_option("--t", cover_t, "magnitude scale (default 100)");
    cover_cmd->add_flag("--reverse", cover_reverse, "use the edge-reversed digraph");
    cover_cmd->add_option("--sequence", cover_sequence,
                          "emit CSV of L^{-1} log Mag(B(L), t) for L = 1..Lmax");

    CommonInput metric_in;
    std::string metric_ts = "0,1";
    bool metric_weights = false;
    auto* metric_cmd = app.add_subcommand("metric-magnitude",
                                          "Lawvere-metric magnitude function");
    add_input_options(metric_cmd, metric_in);
    metric_cmd->add_option("--t", metric_ts, "comma-separated scales (default 0,1)");
    metric_cmd->add_flag("--weights", metric_weights, "emit per-vertex (co)weightings instead");

    CommonInput features_in;
    FeatureConfig feature_cfg;
    auto* features_cmd = app.add_subcommand("features",
                                            "per-vertex feature table as CSV");
    add_input_options(features_cmd, features_in);
    features_cmd->add_option("--ball-scale", feature_cfg.ball_scale,
                             "scale for ball magnitudes (default 100)");
    features_cmd->add_option("--weighting-scale", feature_cfg.weighting_scale,
                             "scale for (co)weightings (default 0)");
    features_cmd->add_option("--ball-radius", feature_cfg.ball_radius_max,
                             "largest ball radius (default 3)");

    std::string correlate_config, correlate_csv;
    int correlate_threads = 0;
    auto* correlate_cmd = app.add_subcommand("correlate",
                                             "feature correlation experiment over subgraph pairs");
    correlate_cmd->add_option("--config", correlate_config, "experiment config (.json or .toml)")
        ->required();
    correlate_cmd->add_option("--csv", correlate_csv, "also write long-format CSV here");
    correlate_cmd->add_option("--threads", correlate_threads,
                              "worker threads (default: available cores)");

    int er_n = 0;
    double er_q = 0.0;
    std::uint64_t er_seed = 0;
    auto* gen_cmd = app.add_subcommand("gen-er", "seeded Erdos-Renyi digraph as an edge list");
    gen_cmd->add_option("--n", er_n, "vertex count")->required();
    gen_cmd->add_option("--q", er_q, "edge probability")->required();
    gen_cmd->add_option("--seed", er_seed, "RNG seed (required: no wall-clock default)")
        ->required();

    try {
        std::vector<std::string> argv(args);
        std::reverse(argv.begin(), argv.end());
        app.parse(argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) { // --help
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n" << app.help();
        return 2;
    }

    try {
        if (entropy_cmd->parsed()) {
            return cmd_entropy(entropy_in, out, err);
        }
        if (validate_cmd->parsed()) {
            return cmd_validate_flow(validate_in, out, err);
        }
        if (compose_cmd->parsed()) {
            return cmd_compose(compose_paths, compose_format, compose_out_format, out, err);
        }
        if (flowmag_cmd->parsed()) {
            return cmd_flow_magnitude(flowmag_in, unit_entropy_zero, out, err);
        }
        if (cover_cmd->parsed()) {
            return cmd_cover_ball(cover_in, cover_base, cover_radius, cover_t, cover_reverse,
                                  cover_sequence, out, err);
        }
        if (metric_cmd->parsed()) {
            return cmd_metric_magnitude(metric_in, metric_ts, metric_weights, out, err);
        }
        if (features_cmd->parsed()) {
            return cmd_features(features_in, feature_cfg, out, err);
        }
        if (correlate_cmd->parsed()) {
            return cmd_correlate(correlate_config, correlate_csv, correlate_threads, out, err);
        }
        if (gen_cmd->parsed()) {
            return cmd_gen_er(er_n, er_q, er_seed, out);
        }
        err << "error: no subcommand\n" << app.help();
        return 2;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const SchemaError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::ios_base::failure& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace flowmag::cli
