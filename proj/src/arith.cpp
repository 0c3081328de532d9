#include "halfint/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace halfint {

u64 pow_mod(u64 base, u64 exp, u64 m) {
    if (m == 1) return 0;
    u64 r = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1) r = mul_mod(r, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return r;
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) d >>= 1, ++s;
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 0; i < s - 1; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

u64 isqrt(u64 n) {
    u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && (u128)r * r > n) --r;
    while ((u128)(r + 1) * (r + 1) <= n) ++r;
    return r;
}

int ord_p(u64 n, u64 p) {
    if (n == 0 || p < 2) throw std::domain_error("ord_p: n >= 1 and p >= 2 required");
    int e = 0;
    while (n % p == 0) n /= p, ++e;
    return e;
}

std::vector<u64> primes_up_to(u64 limit) {
    std::vector<bool> comp(limit + 1, false);
    std::vector<u64> out;
    for (u64 i = 2; i <= limit; ++i) {
        if (!comp[i]) {
            out.push_back(i);
            for (u64 j = i * i; j <= limit; j += i) comp[j] = true;
        }
    }
    return out;
}

namespace {

const std::vector<u64>& small_primes() {
    static std::vector<u64> ps = primes_up_to(1000000);
    return ps;
}

u64 pollard_rho(u64 n) {
    if ((n & 1) == 0) return 2;
    for (u64 c = 1;; ++c) {
        u64 x = 2, y = 2, d = 1;
        auto step = [&](u64 v) { return (mul_mod(v, v, n) + c) % n; };
        while (d == 1) {
            x = step(x);
            y = step(step(y));
            d = std::gcd(x > y ? x - y : y - x, n);
        }
        if (d != n) return d;
    }
}

}  // namespace

FactoredInteger factorize(u64 n) {
    if (n == 0) throw std::domain_error("factorize: input must be positive");
    if (n > 1000000000000ull) throw std::domain_error("factorize: scope capped at n <= 10^12");
    FactoredInteger f;
    f.value = n;
    u64 rem = n;
    for (u64 p : small_primes()) {
        if (p * p > rem) break;
        if (rem % p == 0) {
            int e = 0;
            while (rem % p == 0) rem /= p, ++e;
            f.factors.emplace_back(p, e);
        }
    }
    // Leftover after removing all primes <= 10^6 from n <= 10^12 is 1, a prime,
    // or a product of two primes > 10^6.
    if (rem > 1) {
        if (is_prime(rem)) {
            f.factors.emplace_back(rem, 1);
        } else {
            u64 d = pollard_rho(rem);
            u64 e = rem / d;
            if (d > e) std::swap(d, e);
            if (d == e) {
                f.factors.emplace_back(d, 2);
            } else {
                f.factors.emplace_back(d, 1);
                f.factors.emplace_back(e, 1);
            }
        }
        std::sort(f.factors.begin(), f.factors.end());
    }
    return f;
}

std::vector<u64> divisors(const FactoredInteger& f) {
    std::vector<u64> ds{1};
    for (auto& [p, e] : f.factors) {
        size_t base = ds.size();
        u64 pk = 1;
        for (int i = 1; i <= e; ++i) {
            pk *= p;
            for (size_t j = 0; j < base; ++j) ds.push_back(ds[j] * pk);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

u64 tau(const FactoredInteger& f) {
    u64 t = 1;
    for (auto& [p, e] : f.factors) t *= static_cast<u64>(e) + 1;
    return t;
}

int mu(const FactoredInteger& f) {
    for (auto& [p, e] : f.factors)
        if (e > 1) return 0;
    return (f.factors.size() % 2 == 0) ? 1 : -1;
}

u64 rad(const FactoredInteger& f) {
    u64 r = 1;
    for (auto& [p, e] : f.factors) r *= p;
    return r;
}

u64 tau(u64 n) { return tau(factorize(n)); }
int mu(u64 n) { return mu(factorize(n)); }
u64 rad(u64 n) { return rad(factorize(n)); }

int kronecker(i64 a, i64 b) {
    if (b == 0) return (a == 1 || a == -1) ? 1 : 0;
    if ((a & 1) == 0 && (b & 1) == 0) return 0;
    int k = 1;
    int v = 0;
    while ((b & 1) == 0) b >>= 1, ++v;
    if (v & 1) {
        int am8 = static_cast<int>(((a % 8) + 8) % 8);
        if (am8 == 3 || am8 == 5) k = -k;
    }
    if (b < 0) {
        b = -b;
        if (a < 0) k = -k;
    }
    // b now odd and positive: Jacobi loop with reciprocity.
    a %= b;
    if (a < 0) a += b;
    while (a != 0) {
        v = 0;
        while ((a & 1) == 0) a >>= 1, ++v;
        if (v & 1) {
            int bm8 = static_cast<int>(b % 8);
            if (bm8 == 3 || bm8 == 5) k = -k;
        }
        if ((a & 2) && (b & 2)) k = -k;
        i64 t = b % a;
        b = a;
        a = t;
    }
    return b == 1 ? k : 0;
}

std::complex<double> i_pow(i64 m) {
    switch (((m % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

int epsilon_exponent(i64 d) {
    i64 r = ((d % 4) + 4) % 4;
    if (r == 1) return 0;
    if (r == 3) return 1;
    throw std::domain_error("epsilon_d: d must be odd");
}

std::complex<double> epsilon_d(i64 d) { return i_pow(epsilon_exponent(d)); }

u64 mod_inverse(i64 a, u64 c) {
    if (c == 0) throw std::domain_error("mod_inverse: modulus must be positive");
    if (c == 1) return 0;
    i64 m = static_cast<i64>(c);
    i64 r0 = m, r1 = ((a % m) + m) % m;
    i64 s0 = 0, s1 = 1;
    while (r1 != 0) {
        i64 q = r0 / r1;
        i64 r2 = r0 - q * r1;
        i64 s2 = s0 - q * s1;
        r0 = r1; r1 = r2;
        s0 = s1; s1 = s2;
    }
    if (r0 != 1) throw std::domain_error("mod_inverse: argument not invertible");
    return static_cast<u64>(((s0 % m) + m) % m);
}

NDecomposition decompose(u64 n, u64 N) {
    if (n == 0 || N == 0) throw std::domain_error("decompose: n, N >= 1 required");
    FactoredInteger f = factorize(n);
    NDecomposition d;
    d.n = n;
    d.N = N;
    for (auto& [p, e] : f.factors) {
        if (e & 1) d.t *= p;
        u64 half = 1;
        for (int i = 0; i < e / 2; ++i) half *= p;
        if (N % p == 0)
            d.v *= half;
        else
            d.w *= half;
    }
    return d;
}

}  // namespace halfint
