#include "flowmag/polynomial.hpp"

#include <sstream>

namespace flowmag {

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero() || b.is_zero()) {
        return IntPolynomial{};
    }
    std::vector<BigInt> c(a.coeffs.size() + b.coeffs.size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
        if (a.coeffs[i] == 0) {
            continue;
        }
        for (std::size_t j = 0; j < b.coeffs.size(); ++j) {
            c[i + j] += a.coeffs[i] * b.coeffs[j];
        }
    }
    return IntPolynomial(std::move(c));
}

std::string IntPolynomial::to_string(const std::string& var) const {
    if (coeffs.empty()) {
        return "0";
    }
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = coeffs.size(); i-- > 0;) {
        const BigInt& c = coeffs[i];
        if (c == 0) {
            continue;
        }
        BigInt mag = c < 0 ? BigInt(-c) : c;
        if (first) {
            if (c < 0) {
                out << "-";
            }
            first = false;
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        if (mag != 1 || i == 0) {
            out << mag.str();
        }
        if (i >= 1) {
            out << var;
            if (i > 1) {
                out << "^" << i;
            }
        }
    }
    return first ? "0" : out.str();
}

} // namespace flowmag
