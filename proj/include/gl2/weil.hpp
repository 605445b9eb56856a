#pragma once

#include <gl2/numtheory.hpp>
#include <gl2/rational.hpp>

#include <algorithm>
#include <complex>
#include <cstdlib>
#include <set>
#include <stdexcept>
#include <vector>

namespace gl2 {

/**
 * Minimal polynomial of an algebraic integer all of whose conjugates have
 * absolute value q^{weight/2}.  Coefficients ascending, monic.
 */
struct WeilInteger {
    std::vector<Integer> min_poly;
    long weight = 1;
    long q = 2;

    int degree() const { return static_cast<int>(min_poly.size()) - 1; }
};

/** All complex roots of a monic integer polynomial (Durand-Kerner). */
inline std::vector<std::complex<double>> polynomial_roots(const std::vector<Integer>& monic) {
    int d = static_cast<int>(monic.size()) - 1;
    if (d < 1 || monic.back() != 1) throw std::invalid_argument("need a monic polynomial");
    std::vector<std::complex<double>> a(monic.size());
    for (size_t i = 0; i < monic.size(); ++i) a[i] = monic[i].convert_to<double>();
    auto eval = [&](std::complex<double> z) {
        std::complex<double> v = 0;
        for (int i = d; i >= 0; --i) v = v * z + a[i];
        return v;
    };
    std::vector<std::complex<double>> r(d);
    std::complex<double> seed(0.4, 0.9);
    std::complex<double> pw = 1.0;
    for (int i = 0; i < d; ++i) {
        pw *= seed;
        r[i] = pw;
    }
    for (int iter = 0; iter < 500; ++iter) {
        double moved = 0;
        for (int i = 0; i < d; ++i) {
            std::complex<double> den = 1.0;
            for (int j = 0; j < d; ++j)
                if (j != i) den *= r[i] - r[j];
            std::complex<double> step = eval(r[i]) / den;
            r[i] -= step;
            moved = std::max(moved, std::abs(step));
        }
        if (moved < 1e-14) break;
    }
    return r;
}

/** Integer-root test for a monic integer polynomial. */
inline bool has_rational_root(const std::vector<Integer>& monic) {
    const Integer& c0 = monic.front();
    if (c0 == 0) return true;
    auto eval_at = [&](const Integer& x) {
        Integer v = 0;
        for (auto it = monic.rbegin(); it != monic.rend(); ++it) v = v * x + *it;
        return v;
    };
    for (long r : divisors(std::llabs(static_cast<long long>(to_int64(c0))))) {
        if (eval_at(Integer(r)) == 0) return true;
        if (eval_at(Integer(-r)) == 0) return true;
    }
    return false;
}

/** Exact irreducibility over the rationals, degrees 1 through 4. */
inline bool irreducible_over_rationals(const std::vector<Integer>& monic) {
    int d = static_cast<int>(monic.size()) - 1;
    if (d < 1 || d > 4 || monic.back() != 1)
        throw std::invalid_argument("need a monic polynomial of degree 1 to 4");
    if (d == 1) return true;
    if (has_rational_root(monic)) return false;
    if (d < 4) return true;

    // Remaining quartic factorizations split into two monic integer quadratics
    // (x^2 + u x + v)(x^2 + u' x + v').
    const Integer &c0 = monic[0], &c1 = monic[1], &c2 = monic[2], &c3 = monic[3];
    if (c0 == 0) return false;
    for (long av : divisors(std::llabs(static_cast<long long>(to_int64(c0))))) {
        for (Integer v : {Integer(av), Integer(-av)}) {
            Integer vp = c0 / v;
            Integer s = c3, m = c2 - v - vp;
            Integer disc = s * s - 4 * m;
            if (disc < 0) continue;
            Integer root = boost::multiprecision::sqrt(disc);
            if (root * root != disc) continue;
            if ((s + root) % 2 != 0) continue;
            Integer u = (s + root) / 2, up = (s - root) / 2;
            if (u * vp + up * v == c1 || up * vp + u * v == c1) return false;
        }
    }
    return true;
}

/** x^d P(q^w / x) = ±q^{dw/2} P(x), the root-pairing symmetry. */
inline bool satisfies_weil_functional_equation(const std::vector<Integer>& monic, long q,
                                               long weight) {
    int d = static_cast<int>(monic.size()) - 1;
    if ((static_cast<long>(d) * weight) % 2 != 0) return false;
    Integer S = integer_pow(q, static_cast<unsigned long>(d) * weight / 2);
    for (Integer sign : {Integer(1), Integer(-1)}) {
        bool ok = true;
        Integer qw = 1;
        for (int j = 0; j <= d; ++j) {
            if (monic[j] * qw != sign * S * monic[d - j]) {
                ok = false;
                break;
            }
            qw *= integer_pow(q, weight);
        }
        if (ok) return true;
    }
    return false;
}

namespace detail {

inline bool roots_on_weil_circle(const std::vector<Integer>& monic, long q, long weight) {
    double target = integer_pow(q, weight).convert_to<double>();
    for (auto z : polynomial_roots(monic))
        if (std::abs(std::norm(z) - target) > 1e-9) return false;
    return true;
}

/** floor(c * q^{e/2}) for the symmetric-function coefficient boxes. */
inline long half_power_floor(long c, long q, long e) {
    Integer sq = boost::multiprecision::sqrt(Integer(c) * Integer(c) * integer_pow(q, e));
    return static_cast<long>(to_int64(sq));
}

}  // namespace detail

/**
 * Complete list of Weil minimal polynomials up to the given degree (at most
 * 4), enumerated inside the symmetric-function coefficient boxes; a positive
 * bound_margin widens every box, for completeness re-scans.
 */
inline std::vector<WeilInteger> weil_q_integers(long q, long weight, int max_degree,
                                                long bound_margin = 0) {
    if (!is_prime(q)) throw std::invalid_argument("q must be prime");
    if (weight < 1) throw std::invalid_argument("weight must be positive");
    if (max_degree < 1 || max_degree > 4)
        throw std::invalid_argument("degree must lie in [1, 4]");
    if (integer_pow(q, static_cast<unsigned long>(weight) *
                           static_cast<unsigned long>((max_degree + 1) / 2)) > 1000000)
        throw std::invalid_argument("coefficient search too large");

    std::vector<WeilInteger> out;
    auto add = [&](std::vector<Integer> poly) { out.push_back({std::move(poly), weight, q}); };

    // Degree 1: rational points, x -+ q^{weight/2}, even weight only.
    long b1 = detail::half_power_floor(1, q, weight) + bound_margin;
    for (long a = -b1; a <= b1; ++a)
        if (Integer(a) * a == integer_pow(q, weight)) add({Integer(-a), 1});

    // Degree 2: x^2 - a x + q^weight with two conjugate roots on the circle.
    if (max_degree >= 2) {
        Integer qw = integer_pow(q, weight);
        long b2 = detail::half_power_floor(2, q, weight) + bound_margin;
        for (long a = -b2; a <= b2; ++a)
            if (Integer(a) * a < 4 * qw) add({qw, Integer(-a), 1});
    }

    // Degrees 3 and 4: functional-equation families, then exact and numeric
    // filters.  The pairing root <-> q^weight/root forces sign +1 and the
    // reflected low coefficients, so only the free half is scanned.
    auto try_poly = [&](std::vector<Integer> poly) {
        if (!satisfies_weil_functional_equation(poly, q, weight)) return;
        if (!irreducible_over_rationals(poly)) return;
        if (!detail::roots_on_weil_circle(poly, q, weight)) return;
        add(std::move(poly));
    };
    if (max_degree >= 3 && (3 * weight) % 2 == 0) {
        Integer qhw = integer_pow(q, weight / 2);
        long b = detail::half_power_floor(3, q, weight) + bound_margin;
        for (long c2 = -b; c2 <= b; ++c2)
            for (Integer sign : {Integer(1), Integer(-1)})
                try_poly({sign * qhw * qhw * qhw, sign * qhw * c2, Integer(c2), 1});
    }
    if (max_degree >= 4) {
        Integer qw = integer_pow(q, weight);
        long b3 = detail::half_power_floor(4, q, weight) + bound_margin;
        long b2 = 6 * static_cast<long>(to_int64(qw)) + bound_margin;
        for (long c3 = -b3; c3 <= b3; ++c3) {
            for (long c2 = -b2; c2 <= b2; ++c2)
                try_poly({qw * qw, qw * c3, Integer(c2), Integer(c3), 1});
            // sign -1 branch: the reflection forces the middle coefficient out.
            try_poly({-qw * qw, -qw * c3, Integer(0), Integer(c3), 1});
        }
    }

    std::sort(out.begin(), out.end(), [](const WeilInteger& x, const WeilInteger& y) {
        if (x.degree() != y.degree()) return x.degree() < y.degree();
        return x.min_poly < y.min_poly;
    });
    return out;
}

/**
 * Integer traces s of admissible root pairs (alpha, q^weight/alpha): the
 * possible unramified Hecke parameters of bounded rationality degree.  A = 0
 * yields the empty set.
 */
inline std::vector<Integer> unramified_small_rationality_points(long q, long weight, long A) {
    if (A < 0) throw std::invalid_argument("degree bound must be nonnegative");
    std::vector<Integer> out;
    if (A == 0) return out;
    std::set<Integer> traces;
    for (const auto& w : weil_q_integers(q, weight, 2)) {
        if (w.degree() == 2) traces.insert(-w.min_poly[1]);
        // Rational pairs must square to q^weight: the double points +-2 q^{weight/2}.
        if (w.degree() == 1) traces.insert(-2 * w.min_poly[0]);
    }
    out.assign(traces.begin(), traces.end());
    return out;
}

}  // namespace gl2
