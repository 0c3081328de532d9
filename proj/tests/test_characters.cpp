#include "doctest.h"
#include "halfint/characters.hpp"

#include <numeric>

using namespace halfint;

namespace {

// Brute-force conductor oracle: smallest f | N with chi trivial on units = 1 mod f.
u64 conductor_oracle(const DirichletCharacter& chi) {
    u64 N = chi.modulus();
    for (u64 f = 1; f <= N; ++f) {
        if (N % f != 0) continue;
        bool ok = true;
        for (u64 u = 1; u <= N; ++u) {
            if (std::gcd(u, N) != 1 || u % f != 1 % f) continue;
            if (!chi.eval_exact(static_cast<i64>(u)).is_one()) {
                ok = false;
                break;
            }
        }
        if (ok) return f;
    }
    return N;
}

}  // namespace

TEST_CASE("character group sizes and complete multiplicativity, N <= 60") {
    for (u64 N = 1; N <= 60; ++N) {
        auto chars = DirichletCharacter::all_mod(N);
        u64 phi = 0;
        for (u64 d = 1; d <= N; ++d)
            if (std::gcd(d, N) == 1) ++phi;
        if (N == 1) phi = 1;
        CHECK(chars.size() == phi);
        for (auto& chi : chars) {
            for (u64 a = 1; a <= N; ++a) {
                for (u64 b = a; b <= N; ++b) {
                    auto va = chi.eval_exact(static_cast<i64>(a));
                    auto vb = chi.eval_exact(static_cast<i64>(b));
                    auto vab = chi.eval_exact(static_cast<i64>(a * b));
                    CHECK(vab == va * vb);
                }
            }
            // Periodicity and the zero locus.
            for (u64 d = 1; d <= N; ++d) {
                CHECK(chi.eval_exact(static_cast<i64>(d)).zero == (std::gcd(d, N) != 1));
                CHECK(chi.eval_exact(static_cast<i64>(d + N)) == chi.eval_exact(static_cast<i64>(d)));
            }
        }
    }
}

TEST_CASE("quadratic characters: values in {-1,0,1} and kronecker agreement") {
    auto chi4 = DirichletCharacter::quadratic(-4, 4);
    CHECK(chi4.eval_int(3) == -1);
    CHECK(chi4.eval_int(1) == 1);
    CHECK(chi4.eval_int(2) == 0);

    auto principal = DirichletCharacter::quadratic(1, 12);
    for (u64 d = 1; d <= 12; ++d)
        if (std::gcd(d, 12ull) == 1) CHECK(principal.eval_int(static_cast<i64>(d)) == 1);

    auto chi8 = DirichletCharacter::quadratic(8, 8);
    CHECK(chi8.eval_int(7) == 1);
    CHECK(chi8.eval_int(3) == -1);

    // Agreement with the symbol on the full period, for several discriminants.
    for (i64 D : {-4, 8, -8, -3, 5, 12, -20, 24, -24, 40}) {
        u64 mod = static_cast<u64>(4 * (D < 0 ? -D : D));
        auto chi = DirichletCharacter::quadratic(D, mod);
        CHECK(chi.is_real());
        for (u64 d = 1; d <= mod; ++d) {
            int expect = (std::gcd(d, mod) == 1) ? kronecker(D, static_cast<i64>(d)) : 0;
            CHECK(chi.eval_int(static_cast<i64>(d)) == expect);
        }
    }
}

TEST_CASE("conductor: spec examples and brute-force minimality") {
    CHECK(DirichletCharacter::principal(12).conductor() == 1);
    CHECK(DirichletCharacter::quadratic(-4, 4).conductor() == 4);
    CHECK(DirichletCharacter::quadratic(-4, 12).conductor() == 4);

    for (u64 N : {4ull, 8ull, 12ull, 15ull, 16ull, 21ull, 24ull, 36ull, 40ull, 45ull}) {
        for (auto& chi : DirichletCharacter::all_mod(N)) {
            CAPTURE(N);
            CHECK(chi.conductor() == conductor_oracle(chi));
            CHECK(N % chi.conductor() == 0);
        }
    }
}

TEST_CASE("real characters of odd modulus have squarefree conductor") {
    for (u64 N = 1; N <= 999; N += 2) {
        for (auto& chi : DirichletCharacter::real_mod(N)) {
            u64 f = chi.conductor();
            CHECK(factorize(f).is_squarefree());
        }
    }
}

TEST_CASE("localize: recombination reproduces the character") {
    // Spec example: principal mod 4 with r=4, q=1.
    auto p4 = DirichletCharacter::principal(4);
    auto [pr, pq] = p4.localize(4, 1);
    CHECK(pr.modulus() == 4);
    CHECK(pq.modulus() == 1);
    CHECK(pq.is_principal());

    for (u64 N : {4ull, 8ull, 12ull, 24ull, 40ull, 120ull}) {
        // Split with r = two-part, q = odd part.
        u64 r = 1, q = N;
        while (q % 2 == 0) q /= 2, r *= 2;
        for (auto& chi : DirichletCharacter::all_mod(N)) {
            if (!chi.is_real()) continue;
            auto [cr, cq] = chi.localize(r, q);
            for (u64 d = 1; d <= N; ++d) {
                if (std::gcd(d, N) != 1) continue;
                auto lhs = chi.eval_exact(static_cast<i64>(d));
                auto rhs = cr.eval_exact(static_cast<i64>(d)) * cq.eval_exact(static_cast<i64>(d));
                CHECK(lhs == rhs);
            }
        }
    }

    // chi_{-4} x quadratic mod 5 seen mod 20, localized over (4, 5).
    auto chi20 = DirichletCharacter::quadratic(-4, 4).times(DirichletCharacter::quadratic(5, 5));
    CHECK(chi20.modulus() == 20);
    auto [c4, c5] = chi20.localize(4, 5);
    for (u64 d = 1; d <= 20; ++d) {
        if (std::gcd(d, 20ull) != 1) continue;
        CHECK(chi20.eval_exact(static_cast<i64>(d)) ==
              c4.eval_exact(static_cast<i64>(d)) * c5.eval_exact(static_cast<i64>(d)));
    }

    CHECK_THROWS_AS(chi20.localize(10, 2), std::domain_error);
    CHECK_THROWS_AS(chi20.localize(4, 3), std::domain_error);
}

TEST_CASE("non-quadratic characters evaluate as exact roots of unity") {
    // Order-4 character mod 5: chi(2) must be a primitive 4th root.
    bool found = false;
    for (auto& chi : DirichletCharacter::all_mod(5)) {
        if (chi.order() == 4) {
            found = true;
            auto v = chi.eval_exact(2);
            CHECK(v.den == 4);
            auto v4 = v * v * v * v;
            CHECK(v4.is_one());
        }
    }
    CHECK(found);
}

TEST_CASE("character literals parse and round-trip") {
    auto chi = DirichletCharacter::parse("quadratic:D=-4,mod=4");
    CHECK(chi.eval_int(3) == -1);
    auto p = DirichletCharacter::parse("principal:mod=12");
    CHECK(p.is_principal());
    auto e = DirichletCharacter::parse(chi.literal());
    for (u64 d = 1; d <= 4; ++d)
        CHECK(e.eval_exact(static_cast<i64>(d)) == chi.eval_exact(static_cast<i64>(d)));
    CHECK_THROWS_AS(DirichletCharacter::parse("bogus"), std::domain_error);
}
