#include "doctest.h"
#include "halfint/shimura.hpp"

#include <numeric>
#include <random>

using namespace halfint;
using namespace halfint::shimura;

namespace {

HeckeSystem make_system(int k, const DirichletCharacter& chi, std::mt19937_64& rng, u64 p_max,
                        long long window = 20) {
    HeckeSystem h;
    h.weight_param = k;
    h.character = chi;
    for (u64 p : primes_up_to(p_max)) {
        if (chi.modulus() % p == 0) continue;
        long long v = static_cast<long long>(rng() % (2 * window + 1)) - window;
        h.prime_eigenvalues[p] = Rational(v);
    }
    return h;
}

}  // namespace

TEST_CASE("eigenvalue extension: recursion and multiplicativity") {
    std::mt19937_64 rng(42);
    auto chi = DirichletCharacter::principal(4);
    auto h = make_system(5, chi, rng, 1000);

    CHECK(extend_eigenvalues(h, 1) == Rational(1));
    for (u64 p : {3, 5, 7, 11}) {
        Rational lp = h.prime_eigenvalues.at(p);
        Rational expect = lp * lp - Rational::pow(Rational(static_cast<long long>(p)), 3);
        CHECK(extend_eigenvalues(h, p * p) == expect);
    }
    for (auto [m, n] : {std::pair<u64, u64>{3, 5}, {9, 25}, {7, 27}, {15, 77}, {21, 55}}) {
        CHECK(extend_eigenvalues(h, m * n) == extend_eigenvalues(h, m) * extend_eigenvalues(h, n));
    }
    CHECK_THROWS_AS(extend_eigenvalues(h, 2), std::domain_error);  // gcd(n, N) != 1
}

TEST_CASE("lift coefficients: divisor readoffs") {
    std::mt19937_64 rng(7);
    auto chi = DirichletCharacter::principal(4);
    int k = 5;
    u64 t = 3;
    auto h = make_system(k, chi, rng, 200);
    Rational c_t(4);
    auto series = reconstruct(c_t, h, t, k, chi, 60);
    for (u64 m = 1; m <= 60; ++m)
        if (series.values.find(t * m * m) == series.values.end())
            series.values[t * m * m] = Rational(0);

    auto lifted = lift_coefficients(series, t, k, chi, 60);
    // n = 1: single divisor.
    CHECK(lifted.at(1) == series.at(t));
    // n = p: two divisors.
    DirichletCharacter psi = lift_twist(t, k).times(chi);
    for (u64 p : {3, 7, 11}) {
        Rational expect = series.at(t * p * p) +
                          Rational(psi.eval_int(static_cast<i64>(p))) *
                              Rational::pow(Rational(static_cast<long long>(p)), (k - 3) / 2) *
                              series.at(t);
        CHECK(lifted.at(p) == expect);
    }
    CHECK_THROWS_AS(lift_coefficients(series, 12, k, chi, 10), std::domain_error);  // t not squarefree

    CoefficientSeries incomplete;
    incomplete.values[t] = Rational(1);
    CHECK_THROWS_AS(lift_coefficients(incomplete, t, k, chi, 5), std::domain_error);
}

TEST_CASE("round-trip identity C_t(n) = c(t) lambda_n, exact") {
    std::mt19937_64 rng(20240202);
    for (int trial = 0; trial < 10; ++trial) {
        int k = 3 + 2 * (trial % 3);
        u64 t = std::vector<u64>{1, 2, 3, 5}[trial % 4];
        auto chi = (trial % 2) ? DirichletCharacter::quadratic(-4, 4)
                               : DirichletCharacter::principal(4);
        auto h = make_system(k, chi, rng, 300);
        Rational c_t(static_cast<long long>(1 + trial));
        auto series = reconstruct(c_t, h, t, k, chi, 300);
        for (u64 m = 1; m <= 300; ++m)
            if (series.values.find(t * m * m) == series.values.end())
                series.values[t * m * m] = Rational(0);
        auto lifted = lift_coefficients(series, t, k, chi, 300);
        for (u64 n = 1; n <= 300; ++n) {
            if (std::gcd(n, chi.modulus()) != 1) continue;
            CHECK(lifted.at(n) == c_t * extend_eigenvalues(h, n));
        }
    }
}

TEST_CASE("lift is linear in the input series") {
    std::mt19937_64 rng(99);
    auto chi = DirichletCharacter::principal(4);
    int k = 5;
    u64 t = 1, n_max = 40;
    CoefficientSeries s1, s2;
    for (u64 m = 1; m <= n_max; ++m) {
        s1.values[t * m * m] = Rational(static_cast<long long>(rng() % 19) - 9);
        s2.values[t * m * m] = Rational(static_cast<long long>(rng() % 19) - 9);
    }
    CoefficientSeries sum;
    for (auto& [idx, v] : s1.values) sum.values[idx] = v + s2.values.at(idx);
    auto l1 = lift_coefficients(s1, t, k, chi, n_max);
    auto l2 = lift_coefficients(s2, t, k, chi, n_max);
    auto ls = lift_coefficients(sum, t, k, chi, n_max);
    for (u64 n = 1; n <= n_max; ++n) CHECK(ls.at(n) == l1.at(n) + l2.at(n));
}

TEST_CASE("reconstruct readoffs: w = 1 and w = p") {
    std::mt19937_64 rng(5);
    auto chi = DirichletCharacter::quadratic(-4, 4);
    int k = 7;
    u64 t = 2;
    auto h = make_system(k, chi, rng, 100);
    Rational c_t(3);
    auto series = reconstruct(c_t, h, t, k, chi, 50);
    CHECK(series.at(t) == c_t);
    DirichletCharacter psi = lift_twist(t, k).times(chi);
    for (u64 p : {3, 5, 13}) {
        Rational expect = c_t * (h.prime_eigenvalues.at(p) -
                                 Rational(psi.eval_int(static_cast<i64>(p))) *
                                     Rational::pow(Rational(static_cast<long long>(p)), (k - 3) / 2));
        CHECK(series.at(t * p * p) == expect);
    }
}

TEST_CASE("Deligne bound: extremes, randomized window suite, precondition") {
    auto chi = DirichletCharacter::principal(4);
    int k = 3;
    // Extreme integer eigenvalues floor(2 sqrt(p)).
    HeckeSystem h;
    h.weight_param = k;
    h.character = chi;
    for (u64 p : primes_up_to(600)) {
        if (p == 2) continue;
        long long b = static_cast<long long>(std::floor(2.0 * std::sqrt(static_cast<double>(p))));
        h.prime_eigenvalues[p] = Rational(b);
    }
    auto rep = deligne_bound_check(Rational(1), h, 1, k, chi, 500);
    CHECK(rep.all_hold);
    CHECK(rep.worst_ratio <= 1.0);
    CHECK(rep.worst_ratio > 0.3);  // extremes bite

    // Randomized suite with a fixed seed: the bound never fails in-window.
    std::mt19937_64 rng(0xde116e);
    for (int trial = 0; trial < 1000; ++trial) {
        int kk = 3 + 2 * (trial % 3);
        u64 t = std::vector<u64>{1, 2, 3, 5}[trial % 4];
        HeckeSystem hs;
        hs.weight_param = kk;
        hs.character = chi;
        std::vector<u64> ps = primes_up_to(60);
        for (u64 p : ps) {
            if (p == 2) continue;
            double w = 2.0 * std::pow(static_cast<double>(p), (kk - 2) / 2.0);
            long long B = static_cast<long long>(std::min(w, 40.0));
            hs.prime_eigenvalues[p] = Rational(static_cast<long long>(rng() % (2 * B + 1)) - B);
        }
        auto r = deligne_bound_check(Rational(static_cast<long long>(rng() % 9) + 1), hs, t, kk,
                                     chi, 59);
        CHECK(r.all_hold);
    }

    // Outside the window the precondition trips.
    HeckeSystem bad = h;
    bad.prime_eigenvalues[3] = Rational(1000);
    CHECK_THROWS_AS(deligne_bound_check(Rational(1), bad, 1, k, chi, 10), std::domain_error);
}
