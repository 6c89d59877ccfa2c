#pragma once

#include <optional>
#include <string>
#include <vector>

#include "flowmag/digraph.hpp"

namespace flowmag {

/// Z[j][k] = exp(-t * d[j][k]) with unreachable pairs contributing 0.
struct SimilarityMatrix {
    VertexId n = 0;
    double t = 0.0;
    std::vector<double> z; // row-major

    double at(VertexId i, VertexId j) const { return z[static_cast<std::size_t>(i) * n + j]; }
    double& at(VertexId i, VertexId j) { return z[static_cast<std::size_t>(i) * n + j]; }
};

SimilarityMatrix similarity_matrix(const DistanceMatrix& d, double t);

enum class SolveMethod { ExactSolve, LeastSquares };

std::string to_string(SolveMethod m);

enum class WeightingSide { Row, Column };

struct WeightingResult {
    std::vector<double> w;
    double residual = 0.0; // max-norm of Zw - 1 under the reported method
    SolveMethod method = SolveMethod::ExactSolve;
    double magnitude = 0.0; // sum of the components
};

/**
 * Solves Zw = 1 (Column side solves the transposed system) by full-pivot
 * elimination. When the pivot ratio signals numerical singularity (relative
 * threshold 1e-12) the solve falls back to minimum-norm least squares and
 * says so; degeneracy is reported, never thrown.
 */
WeightingResult weighting(const SimilarityMatrix& z, WeightingSide side = WeightingSide::Row);

struct MagnitudePoint {
    double t = 0.0;
    double magnitude = 0.0;
    SolveMethod method = SolveMethod::ExactSolve;
    double residual = 0.0;
    /// |sum w - sum v| when both sides solved exactly.
    std::optional<double> cross_check;
};

/// Magnitude function of the digraph's Lawvere metric at the given scales;
/// the distance matrix is computed once.
std::vector<MagnitudePoint> magnitude_function(const Digraph& g, const std::vector<double>& ts);

} // namespace flowmag
