#pragma once

#include <gmpxx.h>

#include <string>

#include "coxcat/errors.hpp"

namespace coxcat {

// Exact arithmetic backing for the whole library.
//
// Int is an arbitrary-precision integer; Rational an arbitrary-precision
// fraction kept in canonical form (lowest terms, positive denominator).
// GMP maintains canonical form through arithmetic; the only care point is
// the raw two-argument constructor, wrapped below.
using Int = mpz_class;
using Rational = mpq_class;

// Construct num/den in canonical form.  den == 0 is rejected.
inline Rational make_rational(const Int& num, const Int& den) {
    if (den == 0) throw singular_error("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Rational make_rational(long num, long den) {
    return make_rational(Int(num), Int(den));
}

// Exact integer quotient; throws if the division leaves a remainder.
inline Int exact_div(const Int& num, const Int& den, const char* what) {
    if (den == 0) throw singular_error("exact_div by zero");
    Int q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (r != 0) throw non_integral_error(std::string("non-integral division in ") + what);
    return q;
}

inline std::string to_string(const Int& z) { return z.get_str(); }
inline std::string to_string(const Rational& q) { return q.get_str(); }

// True iff q is an integer.
inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

}  // namespace coxcat
