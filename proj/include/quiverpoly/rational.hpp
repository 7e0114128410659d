#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace quiverpoly {

/// Exact rational scalar. All weight/LP arithmetic in this library is exact;
/// there are no floating-point tolerances anywhere.
using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

inline int sign(const Rational& r) { return r.sign(); }

inline std::string to_string(const Rational& r) { return r.str(); }

/// "3/4", "-2", "5" -> Rational. GMP accepts the same syntax.
inline Rational parse_rational(const std::string& s) { return Rational(s); }

/// Least common multiple of the denominators of `values` (always positive).
inline BigInt common_denominator(const std::vector<Rational>& values) {
    BigInt lcm_value = 1;
    for (const Rational& v : values) {
        BigInt den = denominator(v);
        lcm_value = boost::multiprecision::lcm(lcm_value, den);
    }
    return lcm_value;
}

}  // namespace quiverpoly
