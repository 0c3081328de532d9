#pragma once

// Exact elementary number theory: factorization, multiplicative functions,
// modular arithmetic, the extended Kronecker symbol, the theta multiplier
// eps_d, and the n = t*v^2*w^2 decomposition against a reference level N.
//
// Everything in this header works in exact integer arithmetic.

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace halfint {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;
using u128 = unsigned __int128;

inline u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>((u128)a * b % m); }

u64 pow_mod(u64 base, u64 exp, u64 m);

// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime(u64 n);

// Exact integer square root.
u64 isqrt(u64 n);

// p-adic valuation of n (n >= 1). ord_p(0) is a domain error.
int ord_p(u64 n, u64 p);

// Integer with its full prime factorization, primes ascending.
struct FactoredInteger {
    u64 value = 1;
    std::vector<std::pair<u64, int>> factors;  // (prime, exponent >= 1)

    bool is_squarefree() const {
        for (auto& [p, e] : factors)
            if (e > 1) return false;
        return true;
    }
};

// Trial division to 10^6, then Pollard rho; scope capped at n <= 10^12.
FactoredInteger factorize(u64 n);

std::vector<u64> divisors(const FactoredInteger& f);

u64 tau(const FactoredInteger& f);
int mu(const FactoredInteger& f);
u64 rad(const FactoredInteger& f);
u64 tau(u64 n);
int mu(u64 n);
u64 rad(u64 n);

// Extended Kronecker symbol (a|b), defined for all integers a, b.
// Conventions: (a|0) = [|a| = 1]; (a|-1) = sign-of-a; (a|2) by a mod 8;
// completely multiplicative in b. Agrees with the Legendre symbol for odd
// prime b and with the Jacobi symbol for odd positive b.
int kronecker(i64 a, i64 b);

// i^m for integer m (exact fourth roots of unity).
std::complex<double> i_pow(i64 m);

// Residue class of the theta multiplier: eps_d = 1 for d = 1 (mod 4),
// eps_d = i for d = 3 (mod 4). Returns the power of i (0 or 1).
int epsilon_exponent(i64 d);

// eps_d as a complex value. Even d is a domain error.
std::complex<double> epsilon_d(i64 d);

// Inverse of a modulo c, in [0, c). gcd(a, c) > 1 is an error.
// By convention the inverse modulo 1 is 0.
u64 mod_inverse(i64 a, u64 c);

// n = t * v^2 * w^2 with t squarefree, v supported on primes of N,
// gcd(w, N) = 1. Unique given (n, N).
struct NDecomposition {
    u64 n = 1;
    u64 t = 1;
    u64 v = 1;
    u64 w = 1;
    u64 N = 1;
};

NDecomposition decompose(u64 n, u64 N);

// Primes up to limit (simple sieve, cached by the factorizer for its own use).
std::vector<u64> primes_up_to(u64 limit);

}  // namespace halfint
