#pragma once

// Exact rational arithmetic and p-adic valuations.
//
// Everything downstream (Plancherel masses, orbital integrals, slice counts)
// is a ratio of integers built from powers of a fixed odd prime q = p, so we
// keep all arithmetic in arbitrary-precision rationals and only ever convert
// to floating point for display or for explicitly numeric checks.

#include <boost/multiprecision/cpp_int.hpp>

#include <cassert>
#include <compare>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace gl2 {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer num(const Rational& x) { return boost::multiprecision::numerator(x); }
inline Integer den(const Rational& x) { return boost::multiprecision::denominator(x); }

/** p-adic valuation value: an integer or +infinity (the valuation of 0). */
struct Valuation {
    bool infinite = false;
    long v = 0;

    static Valuation infinity() { return Valuation{true, 0}; }
    static Valuation of(long value) { return Valuation{false, value}; }

    bool is_infinite() const { return infinite; }

    /** Finite value; throws on +infinity so callers cannot silently misuse 0. */
    long finite() const {
        if (infinite) throw std::domain_error("valuation is +infinity");
        return v;
    }

    friend bool operator==(const Valuation& a, const Valuation& b) {
        return a.infinite == b.infinite && (a.infinite || a.v == b.v);
    }
    /** Order with +infinity greater than every integer. */
    friend bool operator<(const Valuation& a, const Valuation& b) {
        if (a.infinite) return false;
        if (b.infinite) return true;
        return a.v < b.v;
    }
    friend bool operator<=(const Valuation& a, const Valuation& b) { return a < b || a == b; }
    friend bool operator>(const Valuation& a, const Valuation& b) { return b < a; }
    friend bool operator>=(const Valuation& a, const Valuation& b) { return b <= a; }

    Valuation operator+(const Valuation& o) const {
        if (infinite || o.infinite) return infinity();
        return of(v + o.v);
    }
};

/** Exact power of the valuation of a nonzero integer at p. */
inline long vp_integer(Integer n, long p) {
    assert(n != 0 && p >= 2);
    long v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

/** vp(x): the p-adic valuation of a rational, with vp(0) = +infinity. */
inline Valuation vp(const Rational& x, long p) {
    if (x == 0) return Valuation::infinity();
    return Valuation::of(vp_integer(num(x), p) - vp_integer(den(x), p));
}

/** p^e as an exact rational, e of either sign. */
inline Rational rational_pow(long p, long e) {
    Integer t = 1;
    for (long i = 0; i < (e >= 0 ? e : -e); ++i) t *= p;
    return e >= 0 ? Rational(t) : Rational(1, t);
}

inline Integer integer_pow(Integer b, unsigned long e) {
    Integer r = 1;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

/** |x|_p = p^{-vp(x)}; |0|_p = 0. */
inline Rational abs_p(const Rational& x, long p) {
    if (x == 0) return 0;
    return rational_pow(p, -vp(x, p).finite());
}

inline std::string to_string(const Rational& x) {
    return x.str();
}

/** Best-effort double conversion, for display and numeric-only checks. */
inline double to_double(const Rational& x) {
    return x.convert_to<double>();
}

/** Exact int64 conversion; throws if out of range (report fields use this). */
inline long long to_int64(const Integer& n) {
    if (n > std::numeric_limits<long long>::max() || n < std::numeric_limits<long long>::min())
        throw std::overflow_error("integer exceeds int64 range: " + n.str());
    return n.convert_to<long long>();
}

}  // namespace gl2
