#pragma once

// Small elementary number theory over machine integers: primality, Euler phi,
// divisors, Legendre symbols, primitive roots and quadratic nonresidues modulo
// odd prime powers.  All arguments stay far below 2^31 (prime powers p^m with
// p <= 31 and m <= 4, cyclotomic orders up to a few thousand), so 64-bit
// arithmetic with __int128 products is exact throughout.

#include <cassert>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace gl2 {

inline bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline long euler_phi(long n) {
    assert(n >= 1);
    long result = n;
    for (long d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            result -= result / d;
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

inline std::vector<long> divisors(long n) {
    assert(n >= 1);
    std::vector<long> small, large;
    for (long d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            small.push_back(d);
            if (d != n / d) large.push_back(n / d);
        }
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

inline long mod_pow(long base, long exp, long mod) {
    assert(mod >= 1 && exp >= 0);
    long r = 1 % mod;
    base %= mod;
    if (base < 0) base += mod;
    while (exp) {
        if (exp & 1) r = static_cast<long>(static_cast<__int128>(r) * base % mod);
        base = static_cast<long>(static_cast<__int128>(base) * base % mod);
        exp >>= 1;
    }
    return r;
}

inline long mod_inverse(long a, long mod) {
    a %= mod;
    if (a < 0) a += mod;
    long g = std::gcd(a, mod);
    if (g != 1) throw std::domain_error("not invertible");
    // Extended Euclid.
    long r0 = mod, r1 = a, s0 = 0, s1 = 1;
    while (r1) {
        long q = r0 / r1;
        r0 -= q * r1;
        std::swap(r0, r1);
        s0 -= q * s1;
        std::swap(s0, s1);
    }
    long inv = s0 % mod;
    return inv < 0 ? inv + mod : inv;
}

/** Legendre symbol (a/p) for odd prime p, in {-1, 0, 1}. */
inline int legendre(long a, long p) {
    assert(is_prime(p) && p % 2 == 1);
    a %= p;
    if (a < 0) a += p;
    if (a == 0) return 0;
    long e = mod_pow(a, (p - 1) / 2, p);
    return e == 1 ? 1 : -1;
}

/** Smallest quadratic nonresidue modulo an odd prime. */
inline long smallest_nonresidue(long p) {
    for (long n = 2; n < p; ++n)
        if (legendre(n, p) == -1) return n;
    throw std::logic_error("no nonresidue found");
}

/** Multiplicative order of a modulo m, gcd(a, m) = 1. */
inline long multiplicative_order(long a, long m) {
    assert(std::gcd(((a % m) + m) % m, m) == 1);
    long group = euler_phi(m);
    long order = group;
    // Strip each prime factor of phi(m) as far as the element allows.
    long n = group;
    for (long d = 2; d * d <= n; ++d) {
        while (n % d == 0) n /= d;
        while (order % d == 0 && mod_pow(a, order / d, m) == 1) order /= d;
    }
    if (n > 1)
        while (order % n == 0 && mod_pow(a, order / n, m) == 1) order /= n;
    return order;
}

/**
 * Smallest primitive root modulo p^m, p an odd prime, m >= 1.  The unit group
 * (Z/p^m)^x is cyclic of order p^{m-1}(p-1).
 */
inline long primitive_root(long p, int m) {
    assert(is_prime(p) && p % 2 == 1 && m >= 1);
    long mod = 1;
    for (int i = 0; i < m; ++i) mod *= p;
    long target = euler_phi(mod);
    for (long g = 2; g < mod; ++g) {
        if (g % p == 0) continue;
        if (multiplicative_order(g, mod) == target) return g;
    }
    throw std::logic_error("no primitive root found");
}

/** Largest n with phi(n) <= bound (phi(n) >= sqrt(n/2) keeps the scan finite). */
inline long largest_with_phi_at_most(long bound) {
    assert(bound >= 1);
    long best = 1;
    for (long n = 1; n <= 2 * bound * bound + 4; ++n)
        if (euler_phi(n) <= bound) best = n;
    return best;
}

/** Number of divisors. */
inline long sigma0(long n) {
    return static_cast<long>(divisors(n).size());
}

}  // namespace gl2
