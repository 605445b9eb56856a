#include "gl2/numtheory.hpp"
#include "gl2/rational.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace gl2;

TEST(Valuation, BasicValues) {
    EXPECT_EQ(vp(Rational(9, 2), 3), Valuation::of(2));
    EXPECT_EQ(vp(Rational(1), 5), Valuation::of(0));
    EXPECT_TRUE(vp(Rational(0), 7).is_infinite());
    EXPECT_EQ(vp(Rational(1, 27), 3), Valuation::of(-3));
    EXPECT_EQ(vp(Rational(50, 3), 5), Valuation::of(2));
}

TEST(Valuation, InfinityOrdering) {
    Valuation inf = Valuation::infinity();
    EXPECT_TRUE(Valuation::of(100) < inf);
    EXPECT_TRUE(inf >= Valuation::of(-5));
    EXPECT_EQ(inf, Valuation::infinity());
    EXPECT_THROW(inf.finite(), std::domain_error);
}

TEST(Valuation, MultiplicativeAndUltrametric) {
    std::mt19937 rng(20260814);
    std::uniform_int_distribution<long> numd(-400, 400), dend(1, 400);
    for (int trial = 0; trial < 2000; ++trial) {
        Rational x(numd(rng), dend(rng));
        Rational y(numd(rng), dend(rng));
        if (x == 0 || y == 0) continue;
        for (long p : {3L, 5L, 7L}) {
            EXPECT_EQ(vp(x * y, p), vp(x, p) + vp(y, p));
            if (x + y != 0) {
                Valuation lo = std::min(vp(x, p), vp(y, p));
                EXPECT_TRUE(vp(x + y, p) >= lo);
                if (vp(x, p) != vp(y, p)) EXPECT_EQ(vp(x + y, p), lo);
            }
        }
    }
}

TEST(Rational, PowersAndAbs) {
    EXPECT_EQ(rational_pow(3, 4), Rational(81));
    EXPECT_EQ(rational_pow(3, -2), Rational(1, 9));
    EXPECT_EQ(rational_pow(5, 0), Rational(1));
    EXPECT_EQ(abs_p(Rational(18), 3), Rational(1, 9));
    EXPECT_EQ(abs_p(Rational(5, 9), 3), Rational(9));
    EXPECT_EQ(abs_p(Rational(0), 3), Rational(0));
    EXPECT_EQ(integer_pow(Integer(7), 5), Integer(16807));
}

TEST(Rational, Conversions) {
    EXPECT_EQ(to_string(Rational(22, 7)), "22/7");
    EXPECT_DOUBLE_EQ(to_double(Rational(1, 4)), 0.25);
    EXPECT_EQ(to_int64(Integer(-123456789)), -123456789LL);
    EXPECT_THROW(to_int64(integer_pow(Integer(2), 80)), std::overflow_error);
}

TEST(NumTheory, Primality) {
    EXPECT_TRUE(is_prime(2));
    EXPECT_TRUE(is_prime(97));
    EXPECT_FALSE(is_prime(1));
    EXPECT_FALSE(is_prime(91));
}

TEST(NumTheory, EulerPhi) {
    EXPECT_EQ(euler_phi(1), 1);
    EXPECT_EQ(euler_phi(7), 6);
    EXPECT_EQ(euler_phi(12), 4);
    EXPECT_EQ(euler_phi(49), 42);
    EXPECT_EQ(euler_phi(9 * 25), 6 * 20);
}

TEST(NumTheory, Divisors) {
    EXPECT_EQ(divisors(12), (std::vector<long>{1, 2, 3, 4, 6, 12}));
    EXPECT_EQ(divisors(1), (std::vector<long>{1}));
    EXPECT_EQ(sigma0(36), 9);
}

TEST(NumTheory, ModularArithmetic) {
    EXPECT_EQ(mod_pow(2, 10, 1000), 24);
    EXPECT_EQ(mod_pow(-1, 3, 7), 6);
    EXPECT_EQ(mod_inverse(3, 7), 5);
    EXPECT_THROW(mod_inverse(6, 9), std::domain_error);
}

TEST(NumTheory, LegendreSymbol) {
    EXPECT_EQ(legendre(2, 7), 1);
    EXPECT_EQ(legendre(3, 7), -1);
    EXPECT_EQ(legendre(14, 7), 0);
    // multiplicativity on a small grid
    for (long a = 1; a < 7; ++a)
        for (long b = 1; b < 7; ++b) EXPECT_EQ(legendre(a * b, 7), legendre(a, 7) * legendre(b, 7));
}

TEST(NumTheory, NonresidueAndPrimitiveRoots) {
    EXPECT_EQ(smallest_nonresidue(3), 2);
    EXPECT_EQ(smallest_nonresidue(7), 3);
    EXPECT_EQ(smallest_nonresidue(13), 2);
    for (long p : {3L, 5L, 7L, 11L, 13L}) {
        for (int m = 1; m <= 3; ++m) {
            long g = primitive_root(p, m);
            long mod = 1;
            for (int i = 0; i < m; ++i) mod *= p;
            EXPECT_EQ(multiplicative_order(g, mod), euler_phi(mod));
        }
    }
}

TEST(NumTheory, OrderDividesGroupOrder) {
    for (long a = 1; a < 27; ++a) {
        if (a % 3 == 0) continue;
        EXPECT_EQ(euler_phi(27) % multiplicative_order(a, 27), 0);
    }
}

TEST(NumTheory, PhiPreimageSearch) {
    EXPECT_EQ(largest_with_phi_at_most(1), 2);
    EXPECT_EQ(largest_with_phi_at_most(2), 6);
    EXPECT_EQ(largest_with_phi_at_most(4), 12);
    EXPECT_EQ(largest_with_phi_at_most(8), 30);
}
