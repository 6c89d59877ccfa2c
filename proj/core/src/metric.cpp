#include "flowmag/metric.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>

namespace flowmag {

SimilarityMatrix similarity_matrix(const DistanceMatrix& d, double t) {
    if (t < 0.0) {
        throw PreconditionError("similarity scale must be nonnegative");
    }
    SimilarityMatrix z;
    z.n = d.size();
    z.t = t;
    z.z.assign(static_cast<std::size_t>(z.n) * z.n, 0.0);
    for (VertexId i = 0; i < z.n; ++i) {
        for (VertexId j = 0; j < z.n; ++j) {
            if (d.reachable(i, j)) {
                z.at(i, j) = std::exp(-t * static_cast<double>(d.at(i, j)));
            }
        }
    }
    return z;
}

std::string to_string(SolveMethod m) {
    return m == SolveMethod::ExactSolve ? "exact-solve" : "least-squares";
}

WeightingResult weighting(const SimilarityMatrix& z, WeightingSide side) {
    const VertexId n = z.n;
    Eigen::MatrixXd m(n, n);
    for (VertexId i = 0; i < n; ++i) {
        for (VertexId j = 0; j < n; ++j) {
            m(i, j) = side == WeightingSide::Row ? z.at(i, j) : z.at(j, i);
        }
    }
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);

    WeightingResult result;
    Eigen::VectorXd w;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
    const Eigen::VectorXd pivots = lu.matrixLU().diagonal().cwiseAbs();
    const double pivot_max = n > 0 ? pivots.maxCoeff() : 0.0;
    const double pivot_min = n > 0 ? pivots.minCoeff() : 0.0;
    if (pivot_max > 0.0 && pivot_min > 1e-12 * pivot_max) {
        result.method = SolveMethod::ExactSolve;
        w = lu.solve(ones);
    } else {
        // Minimum-norm least squares via SVD; Z(0) on a reachable component
        // is rank deficient, so this path is routine, not exceptional.
        result.method = SolveMethod::LeastSquares;
        w = m.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(ones);
    }
    result.w.assign(w.data(), w.data() + n);
    result.residual = n > 0 ? (m * w - ones).lpNorm<Eigen::Infinity>() : 0.0;
    result.magnitude = w.sum();
    return result;
}

std::vector<MagnitudePoint> magnitude_function(const Digraph& g, const std::vector<double>& ts) {
    const DistanceMatrix d = shortest_path_matrix(g);
    std::vector<MagnitudePoint> points;
    points.reserve(ts.size());
    for (double t : ts) {
        const SimilarityMatrix z = similarity_matrix(d, t);
        WeightingResult row = weighting(z, WeightingSide::Row);
        WeightingResult col = weighting(z, WeightingSide::Column);
        MagnitudePoint p;
        p.t = t;
        p.magnitude = row.magnitude;
        p.method = row.method;
        p.residual = row.residual;
        if (row.method == SolveMethod::ExactSolve && col.method == SolveMethod::ExactSolve &&
            row.residual < 1e-9 && col.residual < 1e-9) {
            p.cross_check = std::abs(row.magnitude - col.magnitude);
        }
        points.push_back(p);
    }
    return points;
}

} // namespace flowmag
