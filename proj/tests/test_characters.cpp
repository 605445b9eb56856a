#include "gl2/characters.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace gl2;

TEST(RootOfUnity, ExponentArithmetic) {
    RootOfUnity z = RootOfUnity::from(Rational(2, 3));
    EXPECT_EQ(z.order(), 3);
    EXPECT_TRUE((z * z * z).is_one());
    EXPECT_EQ(z.inverse(), RootOfUnity::from(Rational(1, 3)));
    EXPECT_EQ(z.power(5), RootOfUnity::from(Rational(10, 3)));
    EXPECT_EQ(RootOfUnity::from(Rational(-1, 4)).exponent, Rational(3, 4));
    EXPECT_TRUE(RootOfUnity::one().is_one());
}

TEST(UnitGroup, BaseGroupStructure) {
    for (long p : {3L, 5L, 7L, 11L}) {
        for (int m = 1; m <= 2; ++m) {
            auto g = UnitGroup::base(p, m);
            long mod = m == 1 ? p : p * p;
            EXPECT_EQ(g->order(), euler_phi(mod));
            EXPECT_EQ(g->generator_count(), 1u);
            // the table enumerates exactly the units
            long count = 0;
            for (long a = 0; a < mod; ++a)
                if (a % p != 0) ++count;
            EXPECT_EQ(count, g->order());
        }
    }
}

TEST(UnitGroup, DlogRoundTrip) {
    auto g = UnitGroup::base(7, 2);
    UnitElem x = g->generators()[0];
    for (long e : {0L, 1L, 5L, 17L, 41L}) {
        UnitElem y = g->pow(x, e);
        EXPECT_EQ(g->dlog(y)[0], e % g->order());
    }
    EXPECT_EQ(g->mul(g->make(10, 0), g->inverse(g->make(10, 0))), g->one());
}

TEST(UnitGroup, UnramifiedQuadraticStructure) {
    for (long p : {3L, 5L, 7L}) {
        for (int m = 1; m <= 2; ++m) {
            auto g = UnitGroup::unramified_quadratic(p, m);
            long expect = m == 1 ? p * p - 1 : p * p * (p * p - 1);
            EXPECT_EQ(g->order(), expect);
            EXPECT_EQ(g->generator_orders()[0], p * p - 1);
        }
    }
}

TEST(UnitGroup, RamifiedQuadraticStructure) {
    for (long p : {3L, 5L, 7L}) {
        for (long scale : {1L, smallest_nonresidue(p)}) {
            auto g2 = UnitGroup::ramified_quadratic(p, 2, scale);
            EXPECT_EQ(g2->order(), p * (p - 1));
            auto g4 = UnitGroup::ramified_quadratic(p, 4, scale);
            EXPECT_EQ(g4->order(), p * p * p * (p - 1));
        }
    }
}

TEST(UnitGroup, GaloisIsRingInvolution) {
    auto check = [](const std::shared_ptr<const UnitGroup>& g) {
        std::mt19937 rng(7);
        std::uniform_int_distribution<long> d(0, g->coord_modulus_a() - 1);
        auto draw = [&]() {
            while (true) {
                long a = d(rng), b = d(rng) % g->coord_modulus_b();
                if (g->is_unit(a, b)) return g->make(a, b);
            }
        };
        for (int done = 0; done < 50; ++done) {
            UnitElem x = draw(), y = draw();
            EXPECT_EQ(g->galois_sigma(g->galois_sigma(x)), x);
            // multiplicative: sigma(xy) = sigma(x) sigma(y)
            EXPECT_EQ(g->galois_sigma(g->mul(x, y)),
                      g->mul(g->galois_sigma(x), g->galois_sigma(y)));
            // norm = x * sigma(x) lands in the embedded base ring
            EXPECT_EQ(g->embed_from_base(g->norm_to_base(x)), g->mul(x, g->galois_sigma(x)));
        }
    };
    check(UnitGroup::unramified_quadratic(5, 2));
    check(UnitGroup::ramified_quadratic(5, 4, 1));
    check(UnitGroup::ramified_quadratic(3, 4, 2));
}

TEST(FiniteCharacter, CountMatchesGroupOrder) {
    for (long p : {3L, 5L, 7L}) {
        for (int m = 1; m <= 2; ++m) {
            auto g = UnitGroup::base(p, m);
            EXPECT_EQ(static_cast<long>(all_characters(g).size()),
                      m == 1 ? p - 1 : p * (p - 1));
        }
    }
}

TEST(FiniteCharacter, OrderIsLcmOfValueOrders) {
    auto g = UnitGroup::base(7, 1);  // cyclic of order 6
    EXPECT_EQ(FiniteCharacter::trivial(g).order(), 1);
    EXPECT_EQ(FiniteCharacter(g, {1}).order(), 6);
    auto u = UnitGroup::unramified_quadratic(3, 2);  // generator orders (8, 3, 3)
    EXPECT_EQ(FiniteCharacter(u, {4, 1, 0}).order(), 6);
    EXPECT_EQ(FiniteCharacter(u, {0, 1, 2}).order(), 3);
}

TEST(FiniteCharacter, ConductorValues) {
    auto g1 = UnitGroup::base(7, 1);
    EXPECT_EQ(FiniteCharacter::trivial(g1).conductor(), 0);
    EXPECT_EQ(FiniteCharacter(g1, {1}).conductor(), 1);

    auto g2 = UnitGroup::base(7, 2);  // cyclic of order 42
    EXPECT_EQ(FiniteCharacter::trivial(g2).conductor(), 0);
    EXPECT_EQ(FiniteCharacter(g2, {6}).order(), 7);
    EXPECT_EQ(FiniteCharacter(g2, {6}).conductor(), 2);   // order-7 part is wild
    EXPECT_EQ(FiniteCharacter(g2, {7}).conductor(), 1);   // order-6 part is tame
    EXPECT_EQ(FiniteCharacter(g2, {21}).conductor(), 1);  // quadratic character
}

TEST(FiniteCharacter, ConductorSubmultiplicative) {
    for (long p : {3L, 5L, 7L}) {
        auto g = UnitGroup::base(p, 2);
        auto chars = all_characters(g);
        for (const auto& x : chars)
            for (const auto& y : chars) {
                int c = (x * y).conductor();
                EXPECT_LE(c, std::max(x.conductor(), y.conductor()));
            }
    }
}

TEST(FiniteCharacter, ValueHomomorphism) {
    auto g = UnitGroup::unramified_quadratic(3, 2);
    FiniteCharacter chi(g, {5, 1, 2});
    std::mt19937 rng(11);
    std::uniform_int_distribution<long> d(0, g->coord_modulus_a() - 1);
    int done = 0;
    while (done < 40) {
        long a = d(rng), b = d(rng);
        if (!g->is_unit(a, b)) continue;
        UnitElem x = g->make(a, b), y = g->make(1 + 3 * d(rng) % g->coord_modulus_a(), 0);
        EXPECT_EQ(chi(g->mul(x, y)), chi(x) * chi(y));
        ++done;
    }
}

TEST(FiniteCharacter, GaloisConjugateIsInvolution) {
    for (auto g : {UnitGroup::unramified_quadratic(5, 2), UnitGroup::ramified_quadratic(5, 2, 1),
                   UnitGroup::ramified_quadratic(3, 4, 1), UnitGroup::ramified_quadratic(3, 4, 2)}) {
        for (const auto& eta : all_characters(g))
            EXPECT_EQ(eta.galois_conjugate().galois_conjugate(), eta);
    }
}

TEST(FiniteCharacter, GaloisConjugateMatchesSigmaPointwise) {
    auto g = UnitGroup::ramified_quadratic(5, 4, 1);
    FiniteCharacter eta(g, {3, 11, 2});
    FiniteCharacter etabar = eta.galois_conjugate();
    std::mt19937 rng(13);
    std::uniform_int_distribution<long> d(0, g->coord_modulus_a() - 1);
    int done = 0;
    while (done < 40) {
        long a = d(rng), b = d(rng);
        if (!g->is_unit(a, b)) continue;
        UnitElem x = g->make(a, b);
        EXPECT_EQ(etabar(x), eta(g->galois_sigma(x)));
        ++done;
    }
}

TEST(FiniteCharacter, NormOneQuotientConjugation) {
    // Characters of the level-1 unramified units trivial on the embedded base
    // field factor through a cyclic quotient of order q + 1, where conjugation
    // inverts.
    for (long p : {3L, 5L, 7L}) {
        auto g = UnitGroup::unramified_quadratic(p, 1);
        for (const auto& eta : all_characters(g)) {
            if (!eta.restrict_to_base().is_trivial()) continue;
            EXPECT_EQ(eta.galois_conjugate(), eta.inverse());
        }
    }
}

TEST(FiniteCharacter, NormPullbackIsGaloisInvariant) {
    auto b = UnitGroup::base(5, 2);
    for (auto g : {UnitGroup::unramified_quadratic(5, 2), UnitGroup::ramified_quadratic(5, 4, 1)}) {
        FiniteCharacter chi(b, {7});
        FiniteCharacter pulled = FiniteCharacter::norm_pullback(chi, g);
        EXPECT_EQ(pulled.galois_conjugate(), pulled);
        // restriction of the pullback to base units is chi squared: N(x) = x^2 there
        EXPECT_EQ(pulled.restrict_to_base(), chi.square());
    }
}

TEST(FiniteCharacter, LiftPreservesValuesAndConductor) {
    auto low = UnitGroup::base(5, 1);
    auto high = UnitGroup::base(5, 3);
    FiniteCharacter chi(low, {1});
    FiniteCharacter lifted = chi.lift_to(high);
    EXPECT_EQ(lifted.conductor(), chi.conductor());
    for (long a = 1; a < 125; ++a) {
        if (a % 5 == 0) continue;
        EXPECT_EQ(lifted(high->make(a, 0)), chi(low->make(a % 5, 0)));
    }
}

TEST(FiniteCharacter, QuadraticCharacter) {
    for (long p : {3L, 5L, 7L, 13L}) {
        auto g = UnitGroup::base(p, 1);
        FiniteCharacter leg = quadratic_character(g);
        EXPECT_EQ(leg.order(), 2);
        EXPECT_EQ(leg.conductor(), 1);
        for (long a = 1; a < p; ++a) {
            RootOfUnity v = leg(g->make(a, 0));
            EXPECT_EQ(v.is_one() ? 1 : -1, legendre(a, p));
        }
    }
}

TEST(FiniteCharacter, ProductAndInverse) {
    auto g = UnitGroup::base(11, 2);
    FiniteCharacter x(g, {13}), y(g, {100});
    EXPECT_EQ((x * y).exponents()[0], (13 + 100) % 110);
    EXPECT_TRUE((x * x.inverse()).is_trivial());
    EXPECT_EQ(x.power(3).exponents()[0], 39);
    EXPECT_EQ(x.exponent_fraction(0), Rational(13, 110));
}
