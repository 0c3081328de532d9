#include "doctest.h"
#include "halfint/arith.hpp"

#include <numeric>
#include <random>

using namespace halfint;

namespace {

// Independent factorization oracle: plain trial division.
std::vector<std::pair<u64, int>> trial_division(u64 n) {
    std::vector<std::pair<u64, int>> fs;
    for (u64 p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) n /= p, ++e;
            fs.emplace_back(p, e);
        }
    }
    if (n > 1) fs.emplace_back(n, 1);
    return fs;
}

// Independent Kronecker oracle for odd positive b: Euler criterion at odd
// primes, extended multiplicatively over the factorization of b.
int legendre_euler(i64 a, u64 p) {
    u64 am = static_cast<u64>(((a % static_cast<i64>(p)) + static_cast<i64>(p)) % static_cast<i64>(p));
    if (am == 0) return 0;
    u64 e = pow_mod(am, (p - 1) / 2, p);
    return e == 1 ? 1 : -1;
}

int jacobi_oracle(i64 a, u64 b_odd_positive) {
    int v = 1;
    for (auto& [p, e] : trial_division(b_odd_positive)) {
        int lp = legendre_euler(a, p);
        for (int i = 0; i < e; ++i) v *= lp;
    }
    return v;
}

}  // namespace

TEST_CASE("factorize matches trial-division oracle") {
    CHECK(factorize(1).factors.empty());
    CHECK(factorize(1).value == 1);

    auto f12 = factorize(12);
    CHECK(f12.factors == std::vector<std::pair<u64, int>>{{2, 2}, {3, 1}});

    auto f240 = factorize(240);
    CHECK(f240.factors == std::vector<std::pair<u64, int>>{{2, 4}, {3, 1}, {5, 1}});

    std::mt19937_64 rng(20240811);
    for (int i = 0; i < 500; ++i) {
        u64 n = rng() % 1000000 + 1;
        CHECK(factorize(n).factors == trial_division(n));
    }
    // Through the Pollard-rho path: products of two primes above the trial bound.
    CHECK(factorize(999979ull * 999983ull).factors ==
          std::vector<std::pair<u64, int>>{{999979, 1}, {999983, 1}});
    CHECK(factorize(999983ull * 999983ull).factors ==
          std::vector<std::pair<u64, int>>{{999983, 2}});

    CHECK_THROWS_AS(factorize(0), std::domain_error);
    CHECK_THROWS_AS(factorize(2000000000000ull), std::domain_error);
}

TEST_CASE("tau, mu, rad agree with divisor enumeration up to 10^4") {
    CHECK(tau(12) == 6);
    CHECK(mu(30) == -1);
    CHECK(rad(12) == 6);
    for (u64 n = 1; n <= 10000; ++n) {
        u64 t = 0, r = 1;
        for (u64 d = 1; d <= n; ++d)
            if (n % d == 0) ++t;
        int m = 1;
        u64 nn = n;
        for (u64 p = 2; p * p <= nn; ++p) {
            if (nn % p == 0) {
                int e = 0;
                while (nn % p == 0) nn /= p, ++e;
                r *= p;
                m = (e > 1) ? 0 : -m;
            }
        }
        if (nn > 1) r *= nn, m = -m;
        CHECK(tau(n) == t);
        CHECK(mu(n) == m);
        CHECK(rad(n) == r);
    }
}

TEST_CASE("kronecker: Euler-criterion oracle and spec examples") {
    CHECK(kronecker(5, 1) == 1);
    CHECK(kronecker(2, 15) == jacobi_oracle(2, 15));
    CHECK(kronecker(2, 15) == 1);
    CHECK(kronecker(-1, 3) == legendre_euler(-1, 3));
    CHECK(kronecker(-1, 3) == -1);

    for (i64 a = -60; a <= 60; ++a)
        for (u64 b = 1; b <= 99; b += 2) CHECK(kronecker(a, static_cast<i64>(b)) == jacobi_oracle(a, b));
}

TEST_CASE("kronecker: frozen oracle table") {
    // 50 values generated by the Euler-criterion/Jacobi-factorization oracle
    // above (odd positive b), plus convention anchors for even and negative b.
    struct Row { i64 a, b; int v; };
    static const Row table[] = {
        {2, 3, -1},  {2, 5, -1},   {2, 7, 1},    {2, 9, 1},    {2, 15, 1},
        {3, 5, -1},  {3, 7, -1},   {3, 11, 1},   {3, 13, 1},   {3, 35, 1},
        {5, 7, -1},  {5, 9, 1},    {5, 11, 1},   {5, 21, 1},   {5, 33, -1},
        {7, 9, 1},   {7, 11, -1},  {7, 13, -1},  {7, 15, -1},  {7, 45, -1},
        {-1, 3, -1}, {-1, 5, 1},   {-1, 7, -1},  {-1, 9, 1},   {-1, 21, 1},
        {-2, 3, 1},  {-2, 5, -1},  {-2, 7, -1},  {-2, 9, 1},   {-2, 11, 1},
        {-3, 5, -1}, {-3, 7, 1},   {-3, 11, -1}, {-3, 13, 1},  {-3, 25, 1},
        {6, 5, 1},   {6, 7, -1},   {6, 11, -1},  {6, 13, -1},  {6, 35, -1},
        {10, 3, 1},  {10, 7, -1},  {10, 9, 1},   {10, 11, -1}, {10, 21, -1},
        {12, 5, -1}, {12, 7, -1},  {12, 11, 1},  {12, 13, 1},  {12, 49, 1},
    };
    for (auto& row : table) {
        CAPTURE(row.a);
        CAPTURE(row.b);
        CHECK(kronecker(row.a, row.b) == row.v);
        CHECK(jacobi_oracle(row.a, static_cast<u64>(row.b)) == row.v);
    }
    // Convention anchors: b = 0, b negative, b even.
    CHECK(kronecker(1, 0) == 1);
    CHECK(kronecker(-1, 0) == 1);
    CHECK(kronecker(5, 0) == 0);
    CHECK(kronecker(3, -1) == 1);
    CHECK(kronecker(-3, -1) == -1);
    CHECK(kronecker(3, 2) == -1);
    CHECK(kronecker(7, 2) == 1);
    CHECK(kronecker(4, 2) == 0);
    CHECK(kronecker(0, 1) == 1);
    CHECK(kronecker(0, 7) == 0);
}

TEST_CASE("kronecker: multiplicativity in the top argument") {
    for (i64 b = 1; b <= 199; b += 2)
        for (i64 a1 = -15; a1 <= 15; ++a1)
            for (i64 a2 = -15; a2 <= 15; ++a2)
                CHECK(kronecker(a1, b) * kronecker(a2, b) == kronecker(a1 * a2, b));
}

TEST_CASE("kronecker equals a^((p-1)/2) mod p at odd primes up to 500") {
    for (u64 p : primes_up_to(500)) {
        if (p == 2) continue;
        for (i64 a = -50; a <= 50; ++a) CHECK(kronecker(a, static_cast<i64>(p)) == legendre_euler(a, p));
    }
}

TEST_CASE("epsilon_d and its square") {
    CHECK(epsilon_d(1) == std::complex<double>(1, 0));
    CHECK(epsilon_d(3) == std::complex<double>(0, 1));
    CHECK(epsilon_d(7) == std::complex<double>(0, 1));
    CHECK_THROWS_AS(epsilon_d(2), std::domain_error);
    // eps_d^2 = kronecker(-1, d) for odd d
    for (i64 d = 1; d <= 999; d += 2) {
        auto e = epsilon_d(d);
        auto e2 = e * e;
        CHECK(std::abs(e2.real() - kronecker(-1, d)) < 1e-15);
        CHECK(std::abs(e2.imag()) < 1e-15);
    }
}

TEST_CASE("mod_inverse") {
    CHECK(mod_inverse(1, 5) == 1);
    CHECK(mod_inverse(3, 5) == 2);
    // Exhaustive-search oracle mod 24.
    u64 found = 0;
    for (u64 x = 0; x < 24; ++x)
        if (7 * x % 24 == 1) found = x;
    CHECK(mod_inverse(7, 24) == found);
    CHECK(mod_inverse(7, 24) == 7);
    CHECK(mod_inverse(5, 1) == 0);
    CHECK_THROWS_AS(mod_inverse(6, 24), std::domain_error);
    for (u64 c = 2; c <= 60; ++c)
        for (u64 a = 1; a < c; ++a) {
            if (std::gcd(a, c) != 1) continue;
            u64 inv = mod_inverse(static_cast<i64>(a), c);
            CHECK(a * inv % c == 1);
        }
}

TEST_CASE("decompose: spec examples and reassembly property") {
    auto d = decompose(72, 4);
    CHECK(d.t == 2);
    CHECK(d.v == 2);
    CHECK(d.w == 3);

    d = decompose(5, 4);
    CHECK(d.t == 5);
    CHECK(d.v == 1);
    CHECK(d.w == 1);

    d = decompose(49, 4);
    CHECK(d.t == 1);
    CHECK(d.v == 1);
    CHECK(d.w == 7);

    std::mt19937_64 rng(777);
    const u64 levels[] = {4, 8, 12, 24, 120};
    for (int i = 0; i < 10000; ++i) {
        u64 n = rng() % 1000000000 + 1;
        u64 N = levels[rng() % 5];
        auto dec = decompose(n, N);
        CHECK(dec.t * dec.v * dec.v * dec.w * dec.w == n);
        CHECK(factorize(dec.t).is_squarefree());
        // v | N^inf and gcd(w, N) = 1
        u64 v = dec.v;
        for (auto& [p, e] : factorize(N).factors)
            while (v % p == 0) v /= p;
        CHECK(v == 1);
        CHECK(std::gcd(dec.w, N) == 1);
    }
}
