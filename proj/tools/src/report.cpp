#include "report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace flowmag::cli {

Json json_number(double v) {
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    if (std::isnan(v)) {
        return nullptr;
    }
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return std::strtod(buf, nullptr);
}

Json json_integer(const BigInt& v) {
    if (v >= std::numeric_limits<std::int64_t>::min() &&
        v <= std::numeric_limits<std::int64_t>::max()) {
        return v.convert_to<std::int64_t>();
    }
    return v.str();
}

Json poly_json(const IntPolynomial& p) {
    Json arr = Json::array();
    for (const BigInt& c : p.coeffs) {
        arr.push_back(json_integer(c));
    }
    return arr;
}

std::string csv_number(double v) {
    if (!std::isfinite(v)) {
        return "";
    }
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void write_json(std::ostream& out, const Json& doc) {
    out << doc.dump(2) << '\n';
}

Json experiment_report_json(const CorrelationReport& report) {
    const ExperimentConfig& cfg = report.config;
    Json config;
    config["source"] = cfg.source == ExperimentConfig::Source::Flare ? "flare" : "er";
    if (cfg.source == ExperimentConfig::Source::Flare) {
        config["flare_path"] = cfg.flare_path;
    } else {
        config["n"] = cfg.er_n;
        config["q"] = json_number(cfg.er_q);
    }
    config["trials"] = cfg.trials;
    config["p_remove"] = json_number(cfg.p_remove);
    config["seed"] = cfg.seed;
    config["strip_loops"] = cfg.strip_loops;
    // threads is an execution detail, deliberately not echoed: the report is
    // a pure function of the experiment, identical across thread counts.
    Json fcfg;
    fcfg["weighting_scale"] = json_number(cfg.features.weighting_scale);
    fcfg["ball_scale"] = json_number(cfg.features.ball_scale);
    fcfg["ball_radius_max"] = cfg.features.ball_radius_max;
    fcfg["katz_alpha_factor"] = json_number(cfg.features.katz_alpha_factor);
    config["features"] = std::move(fcfg);

    Json features;
    for (std::size_t f = 0; f < report.features.size(); ++f) {
        Json entry;
        entry["undefined"] = report.undefined_counts[f];
        if (report.quartiles[f]) {
            const Quartiles& q = *report.quartiles[f];
            entry["quartiles"] = Json{{"min", json_number(q.min)},
                                      {"q1", json_number(q.q1)},
                                      {"median", json_number(q.median)},
                                      {"q3", json_number(q.q3)},
                                      {"max", json_number(q.max)}};
        } else {
            entry["quartiles"] = nullptr;
        }
        Json coeffs = Json::array();
        for (const auto& c : report.coefficients[f]) {
            coeffs.push_back(c ? json_number(*c) : Json(nullptr));
        }
        entry["coefficients"] = std::move(coeffs);
        features[report.features[f]] = std::move(entry);
    }

    Json doc;
    doc["config"] = std::move(config);
    doc["trials"] = report.config.trials;
    doc["degenerate_trials"] = report.degenerate_trials;
    doc["features"] = std::move(features);
    return doc;
}

void write_experiment_csv(std::ostream& out, const CorrelationReport& report) {
    out << "trial,feature,coefficient,note\n";
    const std::size_t trials =
        report.coefficients.empty() ? 0 : report.coefficients.front().size();
    for (std::size_t trial = 0; trial < trials; ++trial) {
        for (std::size_t f = 0; f < report.features.size(); ++f) {
            const auto& c = report.coefficients[f][trial];
            out << trial << ',' << report.features[f] << ',';
            if (c) {
                out << csv_number(*c) << ",\n";
            } else {
                out << ",undefined\n";
            }
        }
    }
}

void write_feature_csv(std::ostream& out, const FeatureTable& table) {
    out << "vertex";
    for (const auto& col : table.columns) {
        out << ',' << col.name;
    }
    out << ",note\n";
    std::string first_note;
    for (const auto& absent : table.absent) {
        if (!first_note.empty()) {
            first_note += "; ";
        }
        first_note += "absent " + absent.name + ": " + absent.reason;
    }
    for (std::size_t v = 0; v < table.vertices.size(); ++v) {
        out << table.vertices[v];
        for (const auto& col : table.columns) {
            out << ',' << csv_number(col.values[v]);
        }
        out << ',' << (v == 0 ? first_note : "") << '\n';
    }
}

} // namespace flowmag::cli
