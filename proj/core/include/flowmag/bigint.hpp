#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>

namespace flowmag {

using BigInt = boost::multiprecision::cpp_int;

/// Natural log of a positive big integer, accurate to double precision.
inline double log_big(const BigInt& x) {
    if (x <= 0) {
        return -std::numeric_limits<double>::infinity();
    }
    const unsigned bits = boost::multiprecision::msb(x);
    if (bits <= 62) {
        return std::log(x.convert_to<double>());
    }
    // Keep the top 63 bits and account for the shift: log(x) = log(top) + s*log 2.
    const unsigned shift = bits - 62;
    const BigInt top = x >> shift;
    return std::log(top.convert_to<double>()) + static_cast<double>(shift) * M_LN2;
}

/// 1/x as a double; 0 when x is too large to represent.
inline double inverse_as_double(const BigInt& x) {
    if (x <= 0) {
        return 0.0;
    }
    if (boost::multiprecision::msb(x) >= 1020) {
        return 0.0;
    }
    return 1.0 / x.convert_to<double>();
}

} // namespace flowmag
