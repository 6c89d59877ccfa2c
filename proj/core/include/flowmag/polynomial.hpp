#pragma once

#include <string>
#include <vector>

#include "flowmag/bigint.hpp"

namespace flowmag {

/// Polynomial with exact integer coefficients, stored in ascending degree.
struct IntPolynomial {
    std::vector<BigInt> coeffs;

    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<BigInt> c) : coeffs(std::move(c)) { trim(); }

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    bool is_zero() const { return coeffs.empty(); }

    const BigInt& operator[](std::size_t i) const { return coeffs[i]; }

    void trim() {
        while (!coeffs.empty() && coeffs.back() == 0) {
            coeffs.pop_back();
        }
    }

    bool operator==(const IntPolynomial& other) const { return coeffs == other.coeffs; }

    double eval(double x) const {
        double acc = 0.0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
            acc = acc * x + it->convert_to<double>();
        }
        return acc;
    }

    std::string to_string(const std::string& var = "x") const;
};

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);

} // namespace flowmag
