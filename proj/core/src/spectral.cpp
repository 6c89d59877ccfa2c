#include "flowmag/spectral.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

namespace flowmag {

namespace {

constexpr double kBracketTol = 1e-11;
constexpr int kIterationCap = 500000;

/// Certified power iteration on B = A_sub + I for one strongly connected
/// component given by `vertices`. Returns the bracket for rho(A_sub).
SpectralRadius component_radius(const Digraph& g, const std::vector<VertexId>& vertices) {
    const int m = static_cast<int>(vertices.size());
    std::vector<int> local(g.num_vertices(), -1);
    for (int i = 0; i < m; ++i) {
        local[vertices[i]] = i;
    }
    std::vector<std::vector<int>> out(m);
    for (int i = 0; i < m; ++i) {
        for (VertexId w : g.out_neighbors(vertices[i])) {
            if (local[w] >= 0) {
                out[i].push_back(local[w]);
            }
        }
    }

    std::vector<double> x(m, 1.0), y(m);
    SpectralRadius result;
    for (int iter = 1; iter <= kIterationCap; ++iter) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = 0.0;
        double ymax = 0.0;
        for (int i = 0; i < m; ++i) {
            double acc = x[i]; // the +I shift
            for (int w : out[i]) {
                acc += x[w];
            }
            y[i] = acc;
            const double ratio = acc / x[i];
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
            ymax = std::max(ymax, acc);
        }
        result.lower = lo - 1.0;
        result.upper = hi - 1.0;
        result.value = 0.5 * (result.lower + result.upper);
        result.iterations = iter;
        if (hi - lo <= kBracketTol) {
            return result;
        }
        for (int i = 0; i < m; ++i) {
            x[i] = y[i] / ymax;
        }
    }
    throw CertificationError(result.lower, result.upper);
}

} // namespace

SpectralRadius spectral_radius(const Digraph& g) {
    int scc_count = 0;
    auto comp = strongly_connected_components(g, &scc_count);
    std::vector<std::vector<VertexId>> members(scc_count);
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        members[comp[v]].push_back(v);
    }

    SpectralRadius best; // nilpotent case: exact zero with a tight bracket
    bool any_cycle = false;
    for (const auto& vertices : members) {
        const bool nontrivial =
            vertices.size() > 1 || g.has_edge(vertices.front(), vertices.front());
        if (!nontrivial) {
            continue;
        }
        any_cycle = true;
        SpectralRadius r = component_radius(g, vertices);
        if (r.value > best.value) {
            best.value = r.value;
            best.lower = r.lower;
            best.upper = r.upper;
        }
        best.iterations += r.iterations;
    }
    if (!any_cycle) {
        return SpectralRadius{}; // A^n = 0 exactly
    }

    // Perron bounds: min row sum <= rho <= max row sum.
    int min_deg = std::numeric_limits<int>::max();
    int max_deg = 0;
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        min_deg = std::min(min_deg, g.out_degree(v));
        max_deg = std::max(max_deg, g.out_degree(v));
    }
    if (best.value < static_cast<double>(min_deg) - 1e-9 ||
        best.value > static_cast<double>(max_deg) + 1e-9) {
        throw std::logic_error("spectral radius outside its row-sum bounds");
    }
    return best;
}

double topological_entropy(const Digraph& g) {
    const double rho = spectral_radius(g).value;
    if (rho <= 0.0) {
        return -std::numeric_limits<double>::infinity();
    }
    return std::log(rho);
}

namespace {

struct Int64Overflow {};

/// int64 wrapper whose arithmetic throws on overflow so the caller can retry
/// the recurrence with big integers.
struct CheckedInt64 {
    std::int64_t v = 0;

    CheckedInt64() = default;
    CheckedInt64(std::int64_t x) : v(x) {}

    CheckedInt64 operator+(CheckedInt64 o) const {
        std::int64_t r;
        if (__builtin_add_overflow(v, o.v, &r)) {
            throw Int64Overflow{};
        }
        return r;
    }
    CheckedInt64 operator-() const {
        if (v == std::numeric_limits<std::int64_t>::min()) {
            throw Int64Overflow{};
        }
        return -v;
    }
    CheckedInt64 operator*(CheckedInt64 o) const {
        std::int64_t r;
        if (__builtin_mul_overflow(v, o.v, &r)) {
            throw Int64Overflow{};
        }
        return r;
    }
    CheckedInt64 operator/(std::int64_t d) const { return v / d; }
    CheckedInt64& operator+=(CheckedInt64 o) { return *this = *this + o; }
    bool operator==(const CheckedInt64&) const = default;
};

BigInt to_bigint(const CheckedInt64& x) { return BigInt(x.v); }
BigInt to_bigint(const BigInt& x) { return x; }

/**
 * Faddeev-LeVerrier recurrence: M_1 = A, a_k = -tr(M_k)/k,
 * M_{k+1} = A (M_k + a_k I). The trace division is exact over the integers.
 * Returns coefficients of det(lambda I - A) in ascending degree.
 */
template <typename Scalar>
std::vector<BigInt> faddeev_leverrier(const Digraph& g) {
    const int n = g.num_vertices();
    std::vector<Scalar> m(static_cast<std::size_t>(n) * n, Scalar(0));
    auto at = [&](std::vector<Scalar>& mat, int i, int j) -> Scalar& {
        return mat[static_cast<std::size_t>(i) * n + j];
    };
    for (const auto& [u, v] : g.edges()) {
        at(m, u, v) = Scalar(1);
    }

    std::vector<BigInt> ascending(static_cast<std::size_t>(n) + 1, 0);
    ascending[n] = 1;

    std::vector<Scalar> next(static_cast<std::size_t>(n) * n, Scalar(0));
    for (int k = 1; k <= n; ++k) {
        Scalar trace(0);
        for (int i = 0; i < n; ++i) {
            trace += at(m, i, i);
        }
        Scalar a_k = (-trace) / k;
        ascending[n - k] = to_bigint(a_k);
        if (k == n) {
            break;
        }
        // next = A * (m + a_k I); rows of A are sparse adjacency lists.
        std::fill(next.begin(), next.end(), Scalar(0));
        for (int i = 0; i < n; ++i) {
            for (VertexId w : g.out_neighbors(static_cast<VertexId>(i))) {
                for (int j = 0; j < n; ++j) {
                    Scalar term = at(m, w, j);
                    if (w == j) {
                        term += a_k;
                    }
                    at(next, i, j) += term;
                }
            }
        }
        m.swap(next);
    }
    return ascending;
}

} // namespace

IntPolynomial char_poly(const Digraph& g, int exact_cap) {
    const int n = g.num_vertices();
    if (n > exact_cap) {
        throw SizeError("exact characteristic polynomial capped at " +
                        std::to_string(exact_cap) +
                        " vertices; use the numeric spectrum instead");
    }
    std::vector<BigInt> coeffs;
    try {
        coeffs = faddeev_leverrier<CheckedInt64>(g);
    } catch (const Int64Overflow&) {
        coeffs = faddeev_leverrier<BigInt>(g);
    }
    IntPolynomial p;
    p.coeffs = std::move(coeffs); // do not trim: degree is exactly n
    return p;
}

IntPolynomial zeta_denominator(const Digraph& g, int exact_cap) {
    IntPolynomial p = char_poly(g, exact_cap);
    const std::size_t n = p.coeffs.size();
    // det(I - tA) = t^n p(1/t): the coefficient of t^j is the lambda^{n-j}
    // coefficient of the characteristic polynomial.
    std::vector<BigInt> reversed(n);
    for (std::size_t j = 0; j < n; ++j) {
        reversed[j] = p.coeffs[n - 1 - j];
    }
    return IntPolynomial(std::move(reversed));
}

std::vector<double> katz_centrality(const Digraph& g, double alpha, KatzDirection direction) {
    if (direction == KatzDirection::Out) {
        return katz_centrality(reverse(g), alpha, KatzDirection::In);
    }
    if (alpha <= 0.0) {
        throw PreconditionError("katz alpha must be positive");
    }
    const double rho = spectral_radius(g).value;
    if (rho > 0.0 && alpha >= 1.0 / rho) {
        throw DivergenceError(rho);
    }

    const int n = g.num_vertices();
    // x = sum_{l>=1} alpha^l (A^T)^l 1 solves (I - alpha A^T) x = alpha A^T 1.
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
    for (const auto& [u, v] : g.edges()) {
        m(v, u) -= alpha;
        b(v) += alpha;
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
    Eigen::VectorXd x = lu.solve(b);
    // Iterative refinement keeps the residual at the contract level.
    for (int pass = 0; pass < 3; ++pass) {
        Eigen::VectorXd r = b - m * x;
        if (r.lpNorm<Eigen::Infinity>() <= 1e-10) {
            break;
        }
        x += lu.solve(r);
    }
    if ((b - m * x).lpNorm<Eigen::Infinity>() > 1e-10) {
        throw std::runtime_error("katz solve residual above 1e-10");
    }
    return std::vector<double>(x.data(), x.data() + n);
}

} // namespace flowmag
