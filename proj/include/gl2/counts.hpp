#pragma once

#include <gl2/numtheory.hpp>
#include <gl2/rational.hpp>

#include <complex>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace gl2 {

/** Index of the level-p^r upper-triangular-mod-p^r subgroup in GL2(Z_p). */
inline long gamma0_index(long p, int r) {
    if (!is_prime(p)) throw std::invalid_argument("p must be prime");
    if (r < 0) throw std::invalid_argument("level exponent must be nonnegative");
    if (r == 0) return 1;
    return to_int64(integer_pow(p, static_cast<unsigned long>(r - 1)) * (p + 1));
}

/** Dimension of the depth-r old space of a local representation of conductor c. */
inline long oldvector_trace(int c, int r) {
    if (c < 0 || r < 0) throw std::invalid_argument("conductor and level must be nonnegative");
    return c <= r ? r - c + 1 : 0;
}

/**
 * Trace of the exact-level sieve against a representation of conductor c,
 * assembled from old-vector dimensions.  The combination depends on how far
 * the level exponent r sits above the central-character exponent f_ord, and
 * collapses to the indicator of c = r.
 */
inline long newform_trace(int c, int r, int f_ord) {
    if (f_ord < 0 || f_ord > r) throw std::invalid_argument("need 0 <= f_ord <= r");
    int room = r - f_ord;
    if (room == 0) return oldvector_trace(c, r);
    if (room == 1) return oldvector_trace(c, r) - 2 * oldvector_trace(c, r - 1);
    return oldvector_trace(c, r) - 2 * oldvector_trace(c, r - 1) + oldvector_trace(c, r - 2);
}

namespace detail {

inline std::vector<long> prime_divisors(long N) {
    std::vector<long> out;
    for (long p = 2; p * p <= N; ++p)
        if (N % p == 0) {
            out.push_back(p);
            while (N % p == 0) N /= p;
        }
    if (N > 1) out.push_back(N);
    return out;
}

}  // namespace detail

/** Index of the level-N congruence subgroup in SL2(Z). */
inline long gamma0_global_index(long N) {
    if (N < 1) throw std::invalid_argument("level must be positive");
    long mu = N;
    for (long p : detail::prime_divisors(N)) mu += mu / p;
    return mu;
}

/** Number of order-2 elliptic points on the level-N modular curve. */
inline long elliptic_count_order2(long N) {
    if (N % 4 == 0) return 0;
    long count = 1;
    for (long p : detail::prime_divisors(N)) {
        if (p == 2) continue;
        count *= 1 + legendre(-1, p);
    }
    return count;
}

/** Number of order-3 elliptic points on the level-N modular curve. */
inline long elliptic_count_order3(long N) {
    if (N % 9 == 0) return 0;
    long count = 1;
    for (long p : detail::prime_divisors(N)) {
        if (p == 3) continue;
        count *= p % 3 == 1 ? 2 : 0;
    }
    return count;
}

/** Number of cusps of the level-N modular curve. */
inline long cusp_count(long N) {
    long total = 0;
    for (long d : divisors(N)) total += euler_phi(std::gcd(d, N / d));
    return total;
}

/** Genus of the level-N modular curve. */
inline long genus_x0(long N) {
    Rational g = Rational(1) + Rational(gamma0_global_index(N), 12) -
                 Rational(elliptic_count_order2(N), 4) - Rational(elliptic_count_order3(N), 3) -
                 Rational(cusp_count(N), 2);
    if (den(g) != 1 || g < 0) throw std::logic_error("genus formula must give a nonnegative integer");
    return to_int64(num(g));
}

/** Leading term of the weight-k level-N cusp form count: (k-1)/12 times the index. */
inline Rational dim_main_term(long N, long k) {
    if (N < 1) throw std::invalid_argument("level must be positive");
    if (k < 2 || k % 2 != 0) throw std::invalid_argument("weight must be even and at least 2");
    return Rational(k - 1) * Rational(gamma0_global_index(N), 12);
}

/** Exact dimension of the weight-k level-N cusp form space, trivial character. */
inline long classical_dim_oracle(long N, long k) {
    if (N < 1) throw std::invalid_argument("level must be positive");
    if (k < 2 || k % 2 != 0) throw std::invalid_argument("weight must be even and at least 2");
    long g = genus_x0(N);
    if (k == 2) return g;
    long dim = (k - 1) * (g - 1) + (k / 2 - 1) * cusp_count(N) +
               (k / 4) * elliptic_count_order2(N) + (k / 3) * elliptic_count_order3(N);
    if (dim < 0) throw std::logic_error("dimension formula must be nonnegative");
    return dim;
}

/**
 * Checks that the exact dimensions across the divisors of N decompose into
 * nonnegative new-space dimensions that reassemble under divisor-count
 * multiplicities.
 */
inline bool atkin_lehner_consistency(long N, long k) {
    std::vector<long> divs = divisors(N);
    std::map<long, long> fresh;
    for (long d : divs) {
        long total = classical_dim_oracle(d, k);
        for (long e : divisors(d))
            if (e != d) total -= fresh.at(e) * sigma0(d / e);
        if (total < 0) return false;
        fresh[d] = total;
    }
    long reassembled = 0;
    for (long d : divs) reassembled += fresh.at(d) * sigma0(N / d);
    return reassembled == classical_dim_oracle(N, k);
}

/** Coefficients of the n-th cyclotomic polynomial, ascending, exact. */
inline std::vector<Integer> cyclotomic_polynomial(long n) {
    if (n < 1) throw std::invalid_argument("index must be positive");
    std::vector<Integer> poly(static_cast<std::size_t>(n) + 1, Integer(0));
    poly.front() = -1;
    poly.back() = 1;
    for (long d : divisors(n)) {
        if (d == n) continue;
        std::vector<Integer> divisor_poly = cyclotomic_polynomial(d);
        std::vector<Integer> quotient(poly.size() - divisor_poly.size() + 1, Integer(0));
        for (std::size_t i = quotient.size(); i-- > 0;) {
            Integer lead = poly[i + divisor_poly.size() - 1];
            quotient[i] = lead;
            for (std::size_t j = 0; j < divisor_poly.size(); ++j)
                poly[i + j] -= lead * divisor_poly[j];
        }
        poly = std::move(quotient);
    }
    return poly;
}

struct FejerMode {
    bool ramified = false;
    long num = 0;
    long den = 1;

    static FejerMode ramified_twist() { return {true, 0, 1}; }
    static FejerMode unramified(long a, long b) {
        if (b < 1) throw std::invalid_argument("root of unity needs a positive denominator");
        return {false, a, b};
    }
};

/**
 * Mean of the two-sided triangular weights (M - |i|)/M^2 against powers z^i
 * of a root of unity, evaluated exactly.  Ramified twist directions give 0;
 * z = 1 gives 1; other roots give the squared partial geometric sum, which
 * is returned when it is rational and rejected otherwise.
 */
inline Rational fejer_hat(long M, const FejerMode& mode) {
    if (M < 1) throw std::invalid_argument("window length must be positive");
    if (mode.ramified) return 0;
    long a = mode.num % mode.den;
    if (a < 0) a += mode.den;
    long ord = mode.den / std::gcd(a, mode.den);
    if (ord == 1) return 1;
    long s = M % ord;
    if (s == 0) return 0;

    std::vector<Integer> coeff(static_cast<std::size_t>(ord), Integer(0));
    coeff[0] = s;
    for (long d = 1; d < s; ++d) {
        coeff[static_cast<std::size_t>(d)] += s - d;
        coeff[static_cast<std::size_t>(ord - d)] += s - d;
    }
    std::vector<Integer> phi = cyclotomic_polynomial(ord);
    for (std::size_t i = coeff.size(); i-- >= phi.size();) {
        Integer lead = coeff[i];
        if (lead == 0) continue;
        for (std::size_t j = 0; j < phi.size(); ++j) coeff[i + j + 1 - phi.size()] -= lead * phi[j];
        coeff[i] = 0;
    }
    for (std::size_t i = 1; i < phi.size() - 1 && i < coeff.size(); ++i)
        if (coeff[i] != 0)
            throw std::domain_error("value is irrational; compare magnitudes instead");
    return Rational(coeff[0], Integer(M) * M);
}

/** Numeric magnitude of the same mean, for trend reports on irrational values. */
inline double fejer_magnitude(long M, long a, long b) {
    if (M < 1 || b < 1) throw std::invalid_argument("window and denominator must be positive");
    std::complex<double> z = std::polar(1.0, 2.0 * 3.141592653589793238462643 * a / b);
    std::complex<double> sum = 0.0;
    std::complex<double> zj = 1.0;
    for (long j = 0; j < M; ++j) {
        sum += zj;
        zj *= z;
    }
    return std::norm(sum) / (static_cast<double>(M) * M);
}

}  // namespace gl2
