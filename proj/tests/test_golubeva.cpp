#include "doctest.h"
#include "halfint/golubeva.hpp"

#include <cmath>
#include <numeric>
#include <random>

using namespace halfint;
using namespace halfint::golubeva;

namespace {

// Brute-force oracle: does m = x^2 + y^2 with x, y >= 1?
std::optional<std::pair<u64, u64>> two_squares_brute(u64 m) {
    for (u64 x = 1; 2 * x * x <= m; ++x) {
        u64 y2 = m - x * x;
        u64 y = isqrt(y2);
        if (y >= 1 && y * y == y2) return std::make_pair(x, y);
    }
    return std::nullopt;
}

}  // namespace

TEST_CASE("two-squares witness: examples and brute-force equivalence to 10^4") {
    CHECK(sum_two_squares_witness(2) == std::make_pair<u64, u64>(1, 1));
    CHECK(sum_two_squares_witness(25) == std::make_pair<u64, u64>(3, 4));
    CHECK(!sum_two_squares_witness(9).has_value());
    CHECK(!sum_two_squares_witness(1).has_value());

    for (u64 m = 1; m <= 10000; ++m) {
        auto got = sum_two_squares_witness(m);
        auto brute = two_squares_brute(m);
        CAPTURE(m);
        CHECK(got.has_value() == brute.has_value());
        if (got) {
            CHECK(got->first >= 1);
            CHECK(got->second >= got->first);
            CHECK(got->first * got->first + got->second * got->second == m);
        }
    }
    // Through the Pollard-rho scale.
    auto big = sum_two_squares_witness(999999999989ull);  // prime, = 1 mod 4
    REQUIRE(big.has_value());
    CHECK(big->first * big->first + big->second * big->second == 999999999989ull);
}

TEST_CASE("solve: constructed instance and misses") {
    auto w = solve(32, 5);
    REQUIRE(w.has_value());
    CHECK(w->x == 1);
    CHECK(w->y == 1);
    CHECK(w->z == 1);
    CHECK(!solve(37, 5).has_value());
    CHECK(!solve(61, 5).has_value());
    CHECK_THROWS_AS(solve(100, 3), std::domain_error);
    CHECK_THROWS_AS(solve(100, 9), std::domain_error);
}

TEST_CASE("threshold_check: binding term at v = 1 and the sufficient condition") {
    auto t = threshold_check(1000003, 5, 0.0);
    CHECK(t.v == 1);  // 1000003 is squarefree
    CHECK(t.binding_term == "n^(1/17) v^(12/17)");
    // Direct log evaluation.
    double expect_margin = std::log(1000003.0) / 17.0 - std::log(5.0);
    CHECK(t.margin == doctest::Approx(expect_margin).epsilon(1e-12));
    CHECK(t.min_condition == (expect_margin >= 0));

    // Sufficient condition implies the min condition, randomized.
    std::mt19937_64 rng(31337);
    const u64 Ps[] = {5, 7, 11, 13};
    int sufficient_seen = 0;
    for (int i = 0; i < 1000; ++i) {
        u64 n = rng() % 100000000 + 2;
        u64 P = Ps[rng() % 4];
        auto tc = threshold_check(n, P, 0.01);
        if (tc.sufficient_condition) {
            ++sufficient_seen;
            CHECK(tc.min_condition);
        }
    }
    CHECK(sufficient_seen > 0);
}

TEST_CASE("scan: empty range, ordering, summary consistency") {
    auto empty = scan(5, 100, 99);
    CHECK(empty.records.empty());

    auto s = scan(5, 1, 500, 0.01, false, 2);
    u64 prev = 0;
    ScanSummary recount;
    for (auto& rec : s.records) {
        CHECK(rec.n > prev);
        prev = rec.n;
        CHECK(std::gcd(rec.n, 30ull) == 1);
        CHECK(rec.t * rec.v * rec.v == rec.n);
        ++recount.admissible;
        if (rec.threshold_pass) ++recount.threshold_passing;
        if (rec.solvable) {
            ++recount.solvable_all;
            if (rec.threshold_pass) ++recount.solvable_threshold_passing;
            CHECK(rec.witness.has_value());
            CHECK(rec.witness->x * rec.witness->x + rec.witness->y * rec.witness->y +
                      30 * rec.witness->z * rec.witness->z ==
                  rec.n);
        }
    }
    CHECK(recount.admissible == s.summary.admissible);
    CHECK(recount.threshold_passing == s.summary.threshold_passing);
    CHECK(recount.solvable_all == s.summary.solvable_all);
    CHECK(recount.solvable_threshold_passing == s.summary.solvable_threshold_passing);

    // A with-counts slice: exact count matches the solver verdict.
    auto sc = scan(5, 1, 120, 0.01, true, 1);
    for (auto& rec : sc.records) {
        REQUIRE(rec.r_exact.has_value());
        REQUIRE(rec.siegel.has_value());
        CHECK(*rec.siegel >= 0.0);
    }
}

TEST_CASE("gamma and gamma_tilde: exact rational values") {
    CHECK(golubeva::gamma({2}).str() == "1/2");
    CHECK(golubeva::gamma({8, 12, 16, 20}).str() == "1463/2048");
    CHECK(golubeva::gamma({8, 12, 16, 20}) < BigRat(28, 39));
    CHECK(golubeva::gamma_tilde({3, 3, 3}).str() == "4/9");

    // Appending an exponent multiplies gamma by (1 - 1/k).
    auto base = golubeva::gamma({2, 3, 5});
    auto ext = golubeva::gamma({2, 3, 5, 7});
    CHECK(ext == base * BigRat(6, 7));

    CHECK_THROWS_AS(golubeva::gamma({1, 2}), std::domain_error);
    CHECK_THROWS_AS(golubeva::gamma({4, 3}), std::domain_error);
    CHECK_THROWS_AS(golubeva::gamma_tilde({3}), std::domain_error);
}

TEST_CASE("BigUint arithmetic underpinning the gamma comparisons") {
    CHECK(BigUint::pow(BigUint(10), 20).str() == "100000000000000000000");
    CHECK(BigUint::pow(BigUint(243), 3).str() == "14348907");
    CHECK((BigUint(123456789) * BigUint(987654321)).str() == "121932631112635269");
    CHECK(BigUint::cmp(BigUint(5) + BigUint(7), BigUint(12)) == 0);
    CHECK(BigUint::cmp(BigUint(1) * BigUint(0), BigUint(0)) == 0);
    for (u64 a : {12ull, 35ull, 1000000007ull})
        for (u64 b : {8ull, 49ull, 600ull})
            CHECK(BigUint::cmp(BigUint::gcd(BigUint(a), BigUint(b)), BigUint(std::gcd(a, b))) == 0);
    CHECK(BigRat(242, 243) < BigRat(243, 244));
}

TEST_CASE("mixed-power representability") {
    // Minimal witness: all ones.
    auto w = mixed_power_representable(5, {4});
    REQUIRE(w.has_value());
    CHECK(w->x1 == 1);
    CHECK(w->x2 == 1);
    CHECK(w->x3 == 1);
    CHECK(w->x4 == 1);
    CHECK(w->y == std::vector<u64>{1});

    // Full brute-force oracle at n = 100, exponents {4}.
    auto brute = [](u64 n) {
        for (u64 x1 = 1; x1 * x1 < n; ++x1)
            for (u64 x2 = x1; x1 * x1 + x2 * x2 < n; ++x2)
                for (u64 x3 = 1; x3 * x3 * x3 < n; ++x3)
                    for (u64 x4 = 1; x4 * x4 * x4 < n; ++x4)
                        for (u64 y = 1; y * y * y * y <= n; ++y)
                            if (x1 * x1 + x2 * x2 + x3 * x3 * x3 + x4 * x4 * x4 + y * y * y * y == n)
                                return true;
        return false;
    };
    for (u64 n = 5; n <= 120; ++n) {
        CAPTURE(n);
        CHECK(mixed_power_representable(n, {4}).has_value() == brute(n));
    }

    // Witnesses verify exactly for a larger mixed family.
    u64 representable = 0;
    for (u64 n = 10000; n <= 10100; ++n) {
        auto ww = mixed_power_representable(n, {8, 12, 16, 20});
        if (!ww) continue;
        ++representable;
        unsigned __int128 total = (unsigned __int128)ww->x1 * ww->x1 + (unsigned __int128)ww->x2 * ww->x2 +
                                  (unsigned __int128)ww->x3 * ww->x3 * ww->x3 +
                                  (unsigned __int128)ww->x4 * ww->x4 * ww->x4;
        u64 ks[] = {8, 12, 16, 20};
        for (int j = 0; j < 4; ++j) {
            unsigned __int128 t = 1;
            for (u64 e = 0; e < ks[j]; ++e) t *= ww->y[j];
            total += t;
        }
        CHECK(total == n);
    }
    CHECK(representable > 0);
}
