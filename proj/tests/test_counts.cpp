#include <gl2/counts.hpp>
#include <gl2/spectrum.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <utility>
#include <vector>

namespace {

using gl2::Rational;

long projective_line_size(long p, int r) {
    long M = 1;
    for (int i = 0; i < r; ++i) M *= p;
    std::set<std::pair<long, long>> classes;
    for (long x = 0; x < M; ++x)
        for (long y = 0; y < M; ++y) {
            if (x % p == 0 && y % p == 0) continue;
            std::pair<long, long> best{M, M};
            for (long u = 1; u < M; ++u) {
                if (u % p == 0) continue;
                best = std::min(best, {u * x % M, u * y % M});
            }
            classes.insert(best);
        }
    return static_cast<long>(classes.size());
}

TEST(Gamma0Index, MatchesProjectiveLineCount) {
    EXPECT_EQ(gl2::gamma0_index(3, 0), 1);
    EXPECT_EQ(gl2::gamma0_index(3, 1), 4);
    EXPECT_EQ(gl2::gamma0_index(3, 2), 12);
    for (long p : {3L, 5L})
        for (int r = 1; r <= 2; ++r)
            EXPECT_EQ(gl2::gamma0_index(p, r), projective_line_size(p, r)) << p << " " << r;
    EXPECT_THROW(gl2::gamma0_index(6, 1), std::invalid_argument);
}

TEST(OldVectors, TraceTable) {
    EXPECT_EQ(gl2::oldvector_trace(0, 2), 3);
    EXPECT_EQ(gl2::oldvector_trace(2, 2), 1);
    EXPECT_EQ(gl2::oldvector_trace(3, 2), 0);
    for (int c = 0; c <= 5; ++c)
        for (int r = 0; r <= 5; ++r)
            EXPECT_EQ(gl2::oldvector_trace(c, r), std::max(r - c + 1, 0));
}

TEST(NewformSieve, IndicatorOfExactLevel) {
    EXPECT_EQ(gl2::newform_trace(2, 2, 0), 1);
    EXPECT_EQ(gl2::newform_trace(0, 2, 0), 0);
    EXPECT_EQ(gl2::newform_trace(3, 2, 0), 0);
    for (int c = 0; c <= 6; ++c)
        for (int r = 0; r <= 4; ++r)
            for (int f = 0; f <= std::min(c, r); ++f)
                EXPECT_EQ(gl2::newform_trace(c, r, f), c == r ? 1 : 0)
                    << "c=" << c << " r=" << r << " f=" << f;
    EXPECT_THROW(gl2::newform_trace(1, 1, 2), std::invalid_argument);
}

TEST(NewformSieve, MassWeightedTelescoping) {
    for (long p : {3L, 5L})
        for (int r = 0; r <= 3; ++r) {
            gl2::CentralCharacter omega = gl2::CentralCharacter::trivial(p);
            Rational total = 0;
            for (const gl2::OrbitSlice& s : gl2::enumerate_slices(p, omega, r))
                total += s.total_mass() * gl2::oldvector_trace(static_cast<int>(s.conductor), r);
            EXPECT_EQ(total, Rational(gl2::gamma0_index(p, r))) << "p=" << p << " r=" << r;
        }
}

TEST(MainTerm, FormulaValues) {
    EXPECT_EQ(gl2::dim_main_term(11, 2), Rational(1));
    EXPECT_EQ(gl2::dim_main_term(1, 12), Rational(11, 12));
    EXPECT_EQ(gl2::dim_main_term(2, 4), Rational(3, 4));
    EXPECT_EQ(gl2::dim_main_term(6, 4), Rational(3));
    EXPECT_THROW(gl2::dim_main_term(5, 3), std::invalid_argument);
    EXPECT_THROW(gl2::dim_main_term(0, 4), std::invalid_argument);
}

TEST(DimensionOracle, KnownCurveData) {
    EXPECT_EQ(gl2::genus_x0(1), 0);
    EXPECT_EQ(gl2::genus_x0(11), 1);
    EXPECT_EQ(gl2::genus_x0(14), 1);
    EXPECT_EQ(gl2::genus_x0(15), 1);
    EXPECT_EQ(gl2::genus_x0(22), 2);
    EXPECT_EQ(gl2::genus_x0(37), 2);
    EXPECT_EQ(gl2::genus_x0(50), 2);
    EXPECT_EQ(gl2::genus_x0(64), 3);

    EXPECT_EQ(gl2::classical_dim_oracle(11, 2), 1);
    EXPECT_EQ(gl2::classical_dim_oracle(1, 2), 0);
    EXPECT_EQ(gl2::classical_dim_oracle(1, 12), 1);
    EXPECT_EQ(gl2::classical_dim_oracle(1, 14), 0);
    EXPECT_EQ(gl2::classical_dim_oracle(1, 16), 1);
    EXPECT_EQ(gl2::classical_dim_oracle(5, 4), 1);
    EXPECT_EQ(gl2::classical_dim_oracle(7, 6), 3);
    EXPECT_EQ(gl2::classical_dim_oracle(2, 4), 0);
    EXPECT_THROW(gl2::classical_dim_oracle(4, 5), std::invalid_argument);
}

TEST(DimensionOracle, CuspAndEllipticCounts) {
    EXPECT_EQ(gl2::cusp_count(1), 1);
    EXPECT_EQ(gl2::cusp_count(11), 2);
    EXPECT_EQ(gl2::cusp_count(12), 6);
    EXPECT_EQ(gl2::elliptic_count_order2(2), 1);
    EXPECT_EQ(gl2::elliptic_count_order2(5), 2);
    EXPECT_EQ(gl2::elliptic_count_order2(4), 0);
    EXPECT_EQ(gl2::elliptic_count_order3(7), 2);
    EXPECT_EQ(gl2::elliptic_count_order3(2), 0);
    EXPECT_EQ(gl2::elliptic_count_order3(9), 0);
    EXPECT_EQ(gl2::gamma0_global_index(6), 12);
    EXPECT_EQ(gl2::gamma0_global_index(11), 12);
}

TEST(MainTerm, ErrorTrendAgainstOracle) {
    auto scaled_error = [](long N, long k) {
        double err = std::fabs(gl2::to_double(
            Rational(gl2::classical_dim_oracle(N, k)) - gl2::dim_main_term(N, k)));
        return err / std::sqrt(static_cast<double>(N));
    };
    for (long k : {2L, 4L, 6L, 8L, 12L}) {
        double low = 0, high = 0, high_open = 0;
        for (long N = 1; N <= 300; ++N) {
            double scaled = scaled_error(N, k);
            EXPECT_LE(scaled, 2.0) << "N=" << N << " k=" << k;
            if (N <= 150) low = std::max(low, scaled);
            if (N >= 150) high = std::max(high, scaled);
            if (N >= 150 && N < 300) high_open = std::max(high_open, scaled);
        }
        EXPECT_LE(high_open, low) << "k=" << k;
        EXPECT_GT(high, low) << "k=" << k;
    }
    EXPECT_NEAR(scaled_error(144, 4), 1.0, 1e-12);
    EXPECT_NEAR(scaled_error(300, 4), 18.0 / std::sqrt(300.0), 1e-12);
    EXPECT_EQ(gl2::cusp_count(300), 36);
    EXPECT_EQ(gl2::cusp_count(144), 24);
}

TEST(AtkinLehner, OracleDecomposesOverDivisors) {
    for (long k : {2L, 4L, 12L})
        for (long N : {1L, 11L, 22L, 60L, 144L})
            EXPECT_TRUE(gl2::atkin_lehner_consistency(N, k)) << "N=" << N << " k=" << k;
}

TEST(Cyclotomic, SmallPolynomials) {
    using gl2::Integer;
    EXPECT_EQ(gl2::cyclotomic_polynomial(1), (std::vector<Integer>{-1, 1}));
    EXPECT_EQ(gl2::cyclotomic_polynomial(2), (std::vector<Integer>{1, 1}));
    EXPECT_EQ(gl2::cyclotomic_polynomial(3), (std::vector<Integer>{1, 1, 1}));
    EXPECT_EQ(gl2::cyclotomic_polynomial(4), (std::vector<Integer>{1, 0, 1}));
    EXPECT_EQ(gl2::cyclotomic_polynomial(6), (std::vector<Integer>{1, -1, 1}));
    EXPECT_EQ(gl2::cyclotomic_polynomial(9), (std::vector<Integer>{1, 0, 0, 1, 0, 0, 1}));
    EXPECT_EQ(gl2::cyclotomic_polynomial(12), (std::vector<Integer>{1, 0, -1, 0, 1}));
}

TEST(Fejer, ExactIdentities) {
    EXPECT_EQ(gl2::fejer_hat(5, gl2::FejerMode::ramified_twist()), Rational(0));
    EXPECT_EQ(gl2::fejer_hat(5, gl2::FejerMode::unramified(0, 1)), Rational(1));
    EXPECT_EQ(gl2::fejer_hat(7, gl2::FejerMode::unramified(5, 5)), Rational(1));
    EXPECT_EQ(gl2::fejer_hat(4, gl2::FejerMode::unramified(1, 4)), Rational(0));
    EXPECT_EQ(gl2::fejer_hat(9, gl2::FejerMode::unramified(1, 3)), Rational(0));
    EXPECT_EQ(gl2::fejer_hat(3, gl2::FejerMode::unramified(1, 2)), Rational(1, 9));
    EXPECT_EQ(gl2::fejer_hat(7, gl2::FejerMode::unramified(1, 6)), Rational(1, 49));
}

TEST(Fejer, DecayAtFixedRoot) {
    Rational at8 = gl2::fejer_hat(8, gl2::FejerMode::unramified(1, 3));
    Rational at64 = gl2::fejer_hat(64, gl2::FejerMode::unramified(1, 3));
    EXPECT_EQ(at8, Rational(1, 64));
    EXPECT_EQ(at64, Rational(1, 4096));
    EXPECT_LT(at64, at8);

    EXPECT_NEAR(gl2::fejer_magnitude(8, 1, 3), gl2::to_double(at8), 1e-12);
    EXPECT_NEAR(gl2::fejer_magnitude(64, 1, 3), gl2::to_double(at64), 1e-12);
    EXPECT_LT(gl2::fejer_magnitude(64, 1, 5), gl2::fejer_magnitude(9, 1, 5));
}

TEST(Fejer, IrrationalValuesAreRejected) {
    EXPECT_THROW(gl2::fejer_hat(7, gl2::FejerMode::unramified(1, 5)), std::domain_error);
    EXPECT_THROW(gl2::fejer_hat(0, gl2::FejerMode::unramified(0, 1)), std::invalid_argument);
    EXPECT_THROW(gl2::FejerMode::unramified(1, 0), std::invalid_argument);
}

}  // namespace
