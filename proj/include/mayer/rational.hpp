#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace mayer {

/// Exact rational with arbitrary-precision integer numerator/denominator.
/// All formal-series arithmetic runs on this type; floating point is
/// confined to the numerical bounds modules.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rat(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Integer factorial(unsigned n) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

/// Binomial coefficient for non-negative integer arguments.
inline Integer binomial_uint(unsigned long n, unsigned long k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline double to_double(const Rational& q) { return q.get_d(); }

inline std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace mayer
