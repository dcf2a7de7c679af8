#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "skewlab/base.hpp"
#include "skewlab/distribution.hpp"
#include "skewlab/errors.hpp"

using namespace skewlab;

TEST_CASE("walk stream is deterministic and checkpoint-independent") {
    BasePoint a = sample_point(BaseKind::walk(), 7, 3);
    BasePoint b = sample_point(BaseKind::walk(), 7, 3);
    long long full = a.birkhoff(100000);
    // b takes a different checkpoint path: small jumps first
    long long acc = b.birkhoff(137);
    CHECK(acc == a.birkhoff(137));
    CHECK(b.birkhoff(100000) == full);
    CHECK(sample_point(BaseKind::walk(), 7, 4).birkhoff(100000) != full);

    // birkhoff matches the raw per-step stream
    BasePoint c = sample_point(BaseKind::walk(), 7, 3);
    long long s = 0;
    for (long long k = 0; k < 500; ++k) {
        s += c.step_at(k);
        CHECK(c.birkhoff(k + 1) == s);
    }
}

TEST_CASE("shifted stream satisfies the cocycle identity") {
    BasePoint y = sample_point(BaseKind::walk(), 11, 0);
    BasePoint ry = y.shifted(237);
    for (long long m : {1LL, 7LL, 100LL, 3001LL})
        CHECK(ry.birkhoff(m) == y.birkhoff(237 + m) - y.birkhoff(237));
}

TEST_CASE("budget enforcement") {
    BasePoint y = sample_point(BaseKind::walk(), 1, 0);
    y.set_budget(1000);
    CHECK_NOTHROW(y.birkhoff(1000));
    CHECK_THROWS_AS(y.birkhoff(1001), BudgetError);
}

TEST_CASE("aux uniform is deterministic per point and offset") {
    BasePoint y = sample_point(BaseKind::walk(), 5, 9);
    double u = y.aux_uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    CHECK(sample_point(BaseKind::walk(), 5, 9).aux_uniform() == u);
    CHECK(y.shifted(1).aux_uniform() != u);
}

TEST_CASE("walk distribution: exact small cases") {
    // n = 1: (1/4, 1/2, 1/4)
    LevelDistribution d1 = walk_distribution(1);
    CHECK(d1.at(-1) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(d1.at(0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(d1.at(1) == doctest::Approx(0.25).epsilon(1e-15));
    // n = 2: m(f_2 = 0) = 3/8, m(f_2 = 2) = 1/16
    LevelDistribution d2 = walk_distribution(2);
    CHECK(d2.at(0) == doctest::Approx(3.0 / 8).epsilon(1e-15));
    CHECK(d2.at(2) == doctest::Approx(1.0 / 16).epsilon(1e-15));
    CHECK(d2.at(-2) == doctest::Approx(1.0 / 16).epsilon(1e-15));
}

TEST_CASE("exact distribution: binomial identity and unit mass") {
    for (long long n : {1LL, 2LL, 8LL, 31LL, 200LL}) {
        ExactLevelDistribution e = walk_exact_distribution(n);
        mpz_class total = 0;
        for (const auto& v : e.numer) total += v;
        CHECK(total == e.denominator());
        // m(f_n = x) = C(2n, n+x) / 4^n
        for (long long x = -n; x <= n; ++x) {
            mpz_class binom;
            mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(2 * n),
                         static_cast<unsigned long>(n + x));
            CHECK(e.at(x) == binom);
        }
    }
    // fraction oracle: m(f_8 = 0) = 6435/32768 = 12870/4^8
    ExactLevelDistribution e8 = walk_exact_distribution(8);
    CHECK(e8.at(0) == 12870);
    CHECK(e8.denominator() == 65536);
}

TEST_CASE("double DP agrees with exact distribution") {
    ExactLevelDistribution e = walk_exact_distribution(64);
    LevelDistribution d = walk_distribution(64);
    mpq_class denom(e.denominator());
    for (long long x = -64; x <= 64; ++x) {
        mpq_class exact(e.at(x));
        exact /= denom;
        CHECK(d.at(x) == doctest::Approx(exact.get_d()).epsilon(1e-12));
    }
}

TEST_CASE("Monte Carlo matches the exact distribution") {
    const long long trials = 20000, n = 16;
    long long zero_hits = 0;
    for (long long i = 0; i < trials; ++i)
        if (sample_point(BaseKind::walk(), 12345, static_cast<std::uint64_t>(i)).birkhoff(n) == 0)
            ++zero_hits;
    double exact = walk_distribution(n).at(0);
    double sigma = std::sqrt(exact * (1 - exact) / trials);
    CHECK(std::fabs(static_cast<double>(zero_hits) / trials - exact) < 4 * sigma);
}

TEST_CASE("local CLT deviation") {
    // fraction/float oracle at n = 8
    CHECK(llt_deviation(8) == doctest::Approx(0.008741324644505055).epsilon(1e-10));
    double prev = 1e9;
    for (long long n : {8LL, 16LL, 32LL, 64LL, 128LL}) {
        double dev = llt_deviation(n);
        CHECK(dev < prev);
        prev = dev;
    }
}

TEST_CASE("W mass and parity mass") {
    // fraction oracle: m(|f_8| <= 1) = 17875/32768
    CHECK(w_mass(8, 3) == doctest::Approx(17875.0 / 32768).epsilon(1e-12));
    CHECK(parity_mass(8) == 0.0);
    CHECK(parity_mass(101) == 0.0);
}

TEST_CASE("rotation base: exact orbit arithmetic") {
    CirclePoint half{u128(1) << 127};
    BaseKind rot = BaseKind::rotation(CirclePoint::golden(), {CirclePoint{0}, half}, {1, -1});
    BasePoint y = sample_point(rot, 3, 1);
    long long manual = 0;
    for (long long k = 0; k < 200; ++k) manual += y.step_at(k);
    CHECK(y.birkhoff(200) == manual);

    // step function must have exact mean zero
    CHECK_THROWS(BaseKind::rotation(CirclePoint::golden(), {CirclePoint{0}, half}, {1, 1}));
    CHECK_THROWS(BaseKind::rotation(CirclePoint{0}, {CirclePoint{0}}, {0}));
}
