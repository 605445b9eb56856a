#pragma once

#include <gl2/numtheory.hpp>
#include <gl2/spectrum.hpp>

#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace gl2 {

/** Degree of the n-th cyclotomic field. */
inline long cyclotomic_degree(long n) {
    if (n < 1) throw std::invalid_argument("order must be positive");
    return euler_phi(n);
}

/** Certified lower bound on the degree of the rationality field of a class. */
struct DegreeBound {
    TemperedOrbit orbit;
    long lower_bound = 1;
};

namespace detail {

inline void collect_value_orders(const FiniteCharacter& c, std::vector<long>& out) {
    const auto& n = c.group()->generator_orders();
    const auto& k = c.exponents();
    for (size_t i = 0; i < k.size(); ++i) out.push_back(n[i] / std::gcd(n[i], k[i]));
}

}  // namespace detail

/**
 * Lower bound from the roots of unity the defining characters generate:
 * each generator value of order n certifies ceil(phi(n)/2), or phi(n) in
 * the Steinberg case; the bound is the maximum certificate.
 */
inline DegreeBound orbit_rationality_bound(const TemperedOrbit& o) {
    std::vector<long> orders;
    if (o.chi0) detail::collect_value_orders(*o.chi0, orders);
    if (o.chi0_prime) detail::collect_value_orders(*o.chi0_prime, orders);
    if (o.eta0) detail::collect_value_orders(*o.eta0, orders);
    bool full_degree = o.kind == OrbitKind::SteinbergTwist;
    long best = 1;
    for (long n : orders) {
        long phi = cyclotomic_degree(n);
        best = std::max(best, full_degree ? phi : (phi + 1) / 2);
    }
    return {o, best};
}

struct ThresholdScan {
    bool all_exceed = false;
    long orbit_count = 0;
    long min_bound = 0;
};

/**
 * Exhaustively checks that every twist class with conductor in the given
 * range has certified rationality degree exceeding A.  Requires p > 2A + 1.
 */
inline ThresholdScan verify_degree_threshold(long p, long A, int min_conductor = 3,
                                             int max_conductor = 4) {
    if (A < 1) throw std::invalid_argument("threshold must be positive");
    if (p <= 2 * A + 1) throw std::invalid_argument("requires p > 2A + 1");
    ThresholdScan r;
    r.min_bound = std::numeric_limits<long>::max();
    for (const auto& o : enumerate_orbits(p, min_conductor, max_conductor)) {
        ++r.orbit_count;
        r.min_bound = std::min(r.min_bound, orbit_rationality_bound(o).lower_bound);
    }
    if (r.orbit_count == 0) r.min_bound = 0;
    r.all_exceed = r.min_bound > A;
    return r;
}

/**
 * Fraction of the depth-two test function's spectral mass carried by slices
 * of conductor at most 2 whose certified degree exceeds A, relative to the
 * plancherel total q(q+1).  Exact rational in [0, 1].
 */
inline Rational high_degree_mass_ratio(long p, long A, const CentralCharacter& omega) {
    if (A < 1) throw std::invalid_argument("threshold must be positive");
    if (p <= 2 * A + 1) throw std::invalid_argument("requires p > 2A + 1");
    if (omega.conductor() != 0)
        throw std::invalid_argument("central character must be unramified");
    Rational qualifying = 0;
    for (const auto& s : enumerate_slices(p, omega, 2))
        if (orbit_rationality_bound(s.orbit).lower_bound > A) qualifying += s.total_mass();
    return qualifying / (Rational(p) * (p + 1));
}

/** Largest n whose primitive roots of unity have degree at most 2A. */
inline long largest_small_degree_order(long A) {
    if (A < 1) throw std::invalid_argument("threshold must be positive");
    return largest_with_phi_at_most(2 * A);
}

struct OldformBound {
    bool holds = false;
    Rational decay;  ///< (B - 1) N^{2 - B}, the tail factor at norm N
};

/**
 * The counting inequality (B - b + 1) <= (B - 1)(3 - b) behind the old-vector
 * tail estimate, with its decay factor at the given prime norm.
 */
inline OldformBound oldform_bound_check(long B, long b, long N = 3) {
    if (B < 3) throw std::invalid_argument("requires B >= 3");
    if (b < 0 || b > 2) throw std::invalid_argument("requires b in {0, 1, 2}");
    if (N < 2) throw std::invalid_argument("requires a prime norm N >= 2");
    OldformBound r;
    r.holds = B - b + 1 <= (B - 1) * (3 - b);
    r.decay = Rational(B - 1) * rational_pow(N, 2 - B);
    return r;
}

}  // namespace gl2
