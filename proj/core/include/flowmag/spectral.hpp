#pragma once

#include <stdexcept>
#include <vector>

#include "flowmag/digraph.hpp"
#include "flowmag/polynomial.hpp"

namespace flowmag {

/// Power iteration failed to certify the spectral radius within the iteration
/// cap; carries the last Collatz-Wielandt bracket.
class CertificationError : public std::runtime_error {
public:
    CertificationError(double lower, double upper)
        : std::runtime_error("spectral radius not certified: bracket [" +
                             std::to_string(lower) + ", " + std::to_string(upper) + "]"),
          lower_(lower), upper_(upper) {}

    double lower() const { return lower_; }
    double upper() const { return upper_; }

private:
    double lower_, upper_;
};

/// Exact characteristic polynomial requested beyond the configured size cap.
class SizeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Katz parameter at or beyond the radius of convergence; carries rho.
class DivergenceError : public std::runtime_error {
public:
    explicit DivergenceError(double rho)
        : std::runtime_error("alpha must be below 1/rho = " + std::to_string(1.0 / rho)),
          rho_(rho) {}

    double rho() const { return rho_; }

private:
    double rho_;
};

struct SpectralRadius {
    double value = 0.0;
    /// Certified bracket: lower <= rho <= upper.
    double lower = 0.0;
    double upper = 0.0;
    int iterations = 0;
};

/**
 * Spectral radius of the adjacency matrix to absolute tolerance 1e-10.
 *
 * Acyclic digraphs (nilpotent adjacency) are detected exactly and return 0.
 * Otherwise rho is the maximum over nontrivial strongly connected components
 * of a power iteration on A+I, certified by Collatz-Wielandt row ratios; the
 * +I shift keeps periodic components (plain cycles) from stalling.
 */
SpectralRadius spectral_radius(const Digraph& g);

/// log rho in nats, with log 0 := -infinity.
double topological_entropy(const Digraph& g);

/// det(lambda*I - A) with exact integer coefficients (Faddeev-LeVerrier).
IntPolynomial char_poly(const Digraph& g, int exact_cap = 64);

/// det(I - t*A), the reciprocal of the digraph zeta function; constant term 1.
IntPolynomial zeta_denominator(const Digraph& g, int exact_cap = 64);

enum class KatzDirection { In, Out };

/**
 * Katz centrality: sum over walk lengths l >= 1 of alpha^l times the number
 * of length-l walks ending at (In) or starting from (Out) each vertex. The
 * Out direction is computed as the In direction of the reversed digraph.
 * Requires 0 < alpha < 1/rho (any positive alpha when rho = 0).
 */
std::vector<double> katz_centrality(const Digraph& g, double alpha,
                                    KatzDirection direction = KatzDirection::In);

} // namespace flowmag
