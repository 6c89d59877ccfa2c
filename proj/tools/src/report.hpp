#pragma once

#include <nlohmann/json.hpp>

#include <iosfwd>
#include <string>

#include "flowmag/features.hpp"
#include "flowmag/polynomial.hpp"

namespace flowmag::cli {

using Json = nlohmann::ordered_json;

/// Doubles rounded to 12 significant digits; +-infinity as "inf"/"-inf".
Json json_number(double v);

/// Exact integer as a JSON integer, or a decimal string past 64 bits.
Json json_integer(const BigInt& v);

Json poly_json(const IntPolynomial& p);

/// 12-significant-digit text for CSV cells; empty for non-finite values.
std::string csv_number(double v);

void write_json(std::ostream& out, const Json& doc);

Json experiment_report_json(const CorrelationReport& report);

/// Long-format rows (trial, feature, coefficient, note) for box plots.
void write_experiment_csv(std::ostream& out, const CorrelationReport& report);

/// One row per vertex; absent columns are dropped from the header and
/// explained in the first row's note cell.
void write_feature_csv(std::ostream& out, const FeatureTable& table);

} // namespace flowmag::cli
