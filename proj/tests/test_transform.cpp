#include <gtest/gtest.h>

#include "oracles.hpp"
#include "pisot/transform.hpp"

using namespace pisot;

namespace {

IntPolynomial to_poly(const std::vector<long>& a) {
    std::vector<BigInt> c(a.begin(), a.end());
    return IntPolynomial(std::move(c));
}

// First n with (d - 1) * r^n < 1/4, r an upper bound on the conjugate moduli.
long power_sum_threshold(const NumberField& f) {
    const double r = mpfr_get_d(f.conjugate_bound().get(), MPFR_RNDU);
    double v = f.degree() - 1;
    long n = 0;
    while (v >= 0.25) {
        v *= r;
        ++n;
    }
    return n;
}

} // namespace

TEST(Transform, GoldenLevelOneIsMinusNormPower) {
    NumberField f(IntPolynomial{-1, -1, 1});
    auto t = build_table(f, 1, 1, 60);
    for (long n = 2; n <= 60; ++n) {
        const auto& c = t.at(1, n);
        ASSERT_TRUE(c.ok());
        EXPECT_EQ(*c.integer_part, n % 2 ? 1 : -1) << n;
        EXPECT_TRUE(c.element.is_rational());
    }
    EXPECT_EQ(*t.at(1, 1).integer_part, -1);
}

TEST(Transform, GoldenLevelZeroIsLucas) {
    NumberField f(IntPolynomial{-1, -1, 1});
    auto t = build_table(f, 0, 1, 150);
    auto L = oracle::lucas(150);
    for (long n = 2; n <= 150; ++n) EXPECT_EQ(*t.at(0, n).integer_part, L[static_cast<std::size_t>(n)]) << n;
}

TEST(Transform, PlasticLevelZeroIsPerrin) {
    NumberField f(IntPolynomial{-1, -1, 0, 1});
    auto t = build_table(f, 0, 1, 200);
    auto P = oracle::perrin(200);
    for (long n = 10; n <= 200; ++n) EXPECT_EQ(*t.at(0, n).integer_part, P[static_cast<std::size_t>(n)]) << n;
    EXPECT_NE(*t.at(0, 9).integer_part, P[9]);
}

TEST(Transform, LevelZeroIsPowerSumBeyondThreshold) {
    const std::vector<std::vector<long>> polys = {
        {-1, 0, 0, -1, 1}, {1, 0, -2, -1, 1}, {-1, 1, -1, 0, 1, -2, 1}, {-1, -1, -1, -1, -1, 1}};
    for (const auto& a : polys) {
        NumberField f(to_poly(a));
        const long n0 = power_sum_threshold(f);
        ASSERT_LT(n0, 150);
        auto t = build_table(f, 0, n0, 150);
        auto p = oracle::power_sums(a, 150);
        for (long n = n0; n <= 150; ++n)
            EXPECT_EQ(*t.at(0, n).integer_part, p[static_cast<std::size_t>(n)]) << f.min_poly().to_string() << " n=" << n;
    }
}

TEST(Transform, FreshmansDreamOnPrimes) {
    // p_q = (sum of roots)^q = trace (mod q) for prime q
    const std::vector<std::vector<long>> polys = {{-1, -1, 0, 1}, {1, 0, -2, -1, 1}, {-1, 1, -1, 0, 1, -2, 1}};
    for (const auto& a : polys) {
        NumberField f(to_poly(a));
        const long trace = -a[a.size() - 2];
        const long n0 = power_sum_threshold(f);
        auto t = build_table(f, 0, 1, 100);
        for (long q : {29L, 31L, 37L, 41L, 43L, 47L, 53L, 59L, 61L, 67L, 71L, 73L, 79L, 83L, 89L, 97L}) {
            if (q < n0) continue;
            BigInt r = *t.at(0, q).integer_part - trace;
            EXPECT_EQ(mpz_divisible_ui_p(r.get_mpz_t(), static_cast<unsigned long>(q)), 1) << q;
        }
    }
}

TEST(Transform, IterateOnceMatchesTable) {
    NumberField f(IntPolynomial{1, 0, -2, -1, 1});
    auto t = build_table(f, 3, 1, 25);
    for (long n = 1; n <= 25; ++n) {
        FieldElement x = theta_power(f, static_cast<unsigned long>(n));
        for (int k = 0; k < 3; ++k) {
            auto [next, u] = iterate_once(f, static_cast<unsigned long>(n), x);
            EXPECT_EQ(u, *t.at(k, n).integer_part);
            EXPECT_EQ(next, t.at(k + 1, n).element);
            x = next;
        }
    }
}

TEST(Transform, RoundingFailuresAreRecordedPerCell) {
    NumberField f(IntPolynomial{-1, -1, 0, 1});
    TransformOptions opt;
    opt.rounding = RoundingOptions{64, 64};
    auto t = build_table(f, 2, 1, 120, opt);
    bool saw_failure = false;
    for (long n = 1; n <= 120; ++n) {
        for (int k = 0; k <= 2; ++k) {
            const auto& c = t.at(k, n);
            if (c.ok()) continue;
            saw_failure = true;
            EXPECT_FALSE(c.integer_part && c.frac_magnitude);
            for (int j = k + 1; j <= 2; ++j) EXPECT_EQ(t.at(j, n).error_code, "UpstreamFailure");
            break;
        }
    }
    EXPECT_TRUE(saw_failure);
    EXPECT_TRUE(t.at(0, 1).ok());
    EXPECT_THROW(build_table(f, -1, 1, 3), InvalidParameters);
    EXPECT_THROW(build_table(f, 1, 0, 3), InvalidParameters);
    EXPECT_THROW(t.at(3, 1), InvalidParameters);
}

TEST(Transform, FractionalMagnitudes) {
    NumberField f(IntPolynomial{-1, -1, 1});
    // at n = 1 the nearest integer to phi is 2, not the Lucas number 1
    auto t = build_table(f, 1, 2, 40);
    auto m0 = frac_magnitudes(t, 0);
    ASSERT_EQ(m0.size(), 39u);
    for (std::size_t i = 0; i + 1 < m0.size(); ++i) EXPECT_EQ(m0[i].next, Ordering::decreasing) << i;
    // |phi'|^n, checked against the conjugate directly
    for (const auto& e : m0) {
        Interval phi_bar = Interval(Rational(1), 128) - f.theta_enclosure(128);
        Interval pw(BigInt(1), 128);
        for (long i = 0; i < e.n; ++i) pw = pw * phi_bar;
        EXPECT_FALSE(e.magnitude->disjoint(pw.abs())) << e.n;
    }
    auto m1 = frac_magnitudes(t, 1);
    for (std::size_t i = 0; i + 1 < m1.size(); ++i) EXPECT_EQ(m1[i].next, Ordering::plateau);
    EXPECT_THROW(frac_magnitudes(t, 2), InvalidParameters);
}

TEST(Transform, CertifiedMagnitudeHonoursRelativeWidth) {
    NumberField f(IntPolynomial{1, 0, -2, -1, 1});
    auto e = theta_power(f, 40) - nearest_integer(f, theta_power(f, 40));
    Interval m = certified_magnitude(f, e, 80);
    Real lim(m.prec());
    mpfr_div_2ui(lim.get(), m.lo().get(), 80, MPFR_RNDD);
    EXPECT_TRUE(mpfr_lessequal_p(m.width().get(), lim.get()));
    EXPECT_TRUE(certified_magnitude(f, FieldElement::zero(4), 80).is_exact_zero());
}
