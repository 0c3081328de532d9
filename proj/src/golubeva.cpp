#include "halfint/golubeva.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <thread>

#include "halfint/quad_forms.hpp"

namespace halfint::golubeva {

namespace {

void validate_P(u64 P) {
    if (P == 2 || P == 3 || !is_prime(P))
        throw std::domain_error("golubeva: P must be an odd prime different from 3");
}

// x with x^2 = -1 (mod p), p = 1 (mod 4); smallest base giving a root.
u64 sqrt_minus_one(u64 p) {
    for (u64 a = 2; a < p; ++a) {
        u64 t = pow_mod(a, (p - 1) / 4, p);
        if (mul_mod(t, t, p) == p - 1) return t;
    }
    throw std::logic_error("sqrt_minus_one: no root found");
}

// Cornacchia: x^2 + y^2 = p for prime p = 1 (mod 4).
std::pair<u64, u64> two_squares_prime(u64 p) {
    u64 r0 = p, r1 = sqrt_minus_one(p);
    u64 bound = isqrt(p);
    while (r1 > bound) {
        u64 t = r0 % r1;
        r0 = r1;
        r1 = t;
    }
    u64 x = r1;
    u64 y2 = p - x * x;
    u64 y = isqrt(y2);
    if (y * y != y2) throw std::logic_error("two_squares_prime: descent failed");
    return {x, y};
}

struct GaussInt {
    i64 re = 1, im = 0;
    GaussInt operator*(const GaussInt& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
};

}  // namespace

ThresholdCheck threshold_check(u64 n, u64 P, double eps) {
    validate_P(P);
    if (n == 0 || eps < 0) throw std::domain_error("threshold_check: n >= 1, eps >= 0 required");
    ThresholdCheck out;
    out.n = n;
    out.P = P;
    out.eps = eps;
    for (auto& [p, e] : factorize(n).factors) {
        if (e & 1) out.t *= p;
        for (int i = 0; i < e / 2; ++i) out.v *= p;
    }
    double ln_n = std::log(static_cast<double>(n));
    double ln_v = std::log(static_cast<double>(out.v));
    double ln_P = std::log(static_cast<double>(P));
    double terms[3] = {ln_n / 17.0 + 12.0 / 17.0 * ln_v, ln_n / 11.0 + 6.0 / 11.0 * ln_v,
                       ln_n / 3.0};
    const char* names[3] = {"n^(1/17) v^(12/17)", "n^(1/11) v^(6/11)", "n^(1/3)"};
    int argmin = 0;
    for (int i = 1; i < 3; ++i)
        if (terms[i] < terms[argmin]) argmin = i;
    out.binding_term = names[argmin];
    out.margin = terms[argmin] - (1.0 + eps) * ln_P;
    out.min_condition = out.margin >= 0.0;
    out.sufficient_margin = ln_n + 28.0 / 3.0 * ln_v - (17.0 + eps) * ln_P;
    out.sufficient_condition = out.sufficient_margin > 0.0;
    return out;
}

std::optional<std::pair<u64, u64>> sum_two_squares_witness(u64 m) {
    if (m == 0) throw std::domain_error("sum_two_squares_witness: m >= 1 required");
    if (m == 1) return std::nullopt;
    FactoredInteger f = factorize(m);
    int a2 = 0;  // exponent of 2
    std::vector<std::pair<u64, int>> p1;  // primes 1 mod 4
    u64 q_sqrt = 1;  // sqrt of the 3-mod-4 part
    for (auto& [p, e] : f.factors) {
        if (p == 2) {
            a2 = e;
        } else if (p % 4 == 1) {
            p1.emplace_back(p, e);
        } else {
            if (e & 1) return std::nullopt;  // 3-mod-4 prime to an odd power
            for (int i = 0; i < e / 2; ++i) q_sqrt *= p;
        }
    }
    if (p1.empty()) {
        // m = 2^a * s^2: positive representations exist only for odd a,
        // namely (u, u) with u = 2^{(a-1)/2} s.
        if (a2 % 2 == 0) return std::nullopt;
        u64 u = q_sqrt;
        for (int i = 0; i < (a2 - 1) / 2; ++i) u *= 2;
        return std::make_pair(u, u);
    }
    // Compose Gaussian factors; enumerate conjugation splits until both
    // coordinates are nonzero (guaranteed to happen).
    std::vector<std::pair<GaussInt, int>> gens;
    for (auto& [p, e] : p1) {
        auto [x, y] = two_squares_prime(p);
        gens.push_back({GaussInt{static_cast<i64>(x), static_cast<i64>(y)}, e});
    }
    std::vector<int> split(gens.size(), 0);  // how many conjugate factors per prime
    while (true) {
        GaussInt z{static_cast<i64>(q_sqrt), 0};
        for (int i = 0; i < a2; ++i) z = z * GaussInt{1, 1};
        for (size_t i = 0; i < gens.size(); ++i) {
            GaussInt g = gens[i].first;
            GaussInt gc{g.re, -g.im};
            for (int j = 0; j < gens[i].second - split[i]; ++j) z = z * g;
            for (int j = 0; j < split[i]; ++j) z = z * gc;
        }
        u64 x = static_cast<u64>(z.re < 0 ? -z.re : z.re);
        u64 y = static_cast<u64>(z.im < 0 ? -z.im : z.im);
        if (x >= 1 && y >= 1) {
            if (x > y) std::swap(x, y);
            if (x * x + y * y != m) throw std::logic_error("sum_two_squares_witness: composition error");
            return std::make_pair(x, y);
        }
        size_t i = 0;
        while (i < split.size()) {
            if (++split[i] <= gens[i].second) break;
            split[i] = 0;
            ++i;
        }
        if (i == split.size()) return std::nullopt;  // unreachable when p1 nonempty
    }
}

std::optional<Witness> solve(u64 n, u64 P) {
    validate_P(P);
    if (n == 0) return std::nullopt;
    for (u64 z = 1; 6 * P * z * z + 2 <= n; ++z) {
        u64 m = n - 6 * P * z * z;
        auto w = sum_two_squares_witness(m);
        if (!w) continue;
        auto [x, y] = *w;
        if (x * x + y * y + 6 * P * z * z != n) throw std::logic_error("solve: verification failed");
        return Witness{x, y, z};
    }
    return std::nullopt;
}

GolubevaScan scan(u64 P, u64 n_min, u64 n_max, double eps, bool with_counts, int jobs) {
    validate_P(P);
    if (n_max < n_min) return {};
    if (n_max - n_min > 1000000) throw std::domain_error("scan: range capped at 10^6");
    std::vector<u64> ns;
    for (u64 n = std::max<u64>(n_min, 1); n <= n_max; ++n)
        if (std::gcd(n, 6 * P) == 1) ns.push_back(n);

    GolubevaScan out;
    out.records.resize(ns.size());
    double lp = std::log(static_cast<double>(P));
    std::vector<u64> theta;
    if (with_counts && !ns.empty())
        theta = forms::QuadraticForm::diagonal({1, 1, 6 * static_cast<i64>(P)})
                    .theta_coefficients(n_max);
    auto work = [&](size_t i) {
        u64 n = ns[i];
        ScanRecord rec;
        rec.n = n;
        auto th = threshold_check(n, P, eps);
        rec.t = th.t;
        rec.v = th.v;
        rec.threshold_pass = th.min_condition;
        rec.sufficient_pass = th.sufficient_condition;
        rec.binding_term = th.binding_term;
        rec.margin = th.margin;
        double lt = std::log(static_cast<double>(th.t));
        rec.error_shape = std::sqrt(static_cast<double>(th.v)) *
                          (std::exp(13.0 / 28.0 * lt + 3.0 / 28.0 * lp) +
                           std::exp(7.0 / 16.0 * lt + 3.0 / 16.0 * lp) +
                           std::exp(1.0 / 4.0 * lt + 1.0 / 4.0 * lp));
        auto w = solve(n, P);
        rec.solvable = w.has_value();
        rec.witness = w;
        if (with_counts) {
            auto q = forms::QuadraticForm::diagonal({1, 1, 6 * static_cast<i64>(P)});
            rec.r_exact = theta[n];
            rec.siegel = forms::siegel_main_term(q, n);
        }
        out.records[i] = rec;
    };
    if (jobs <= 1) {
        for (size_t i = 0; i < ns.size(); ++i) work(i);
    } else {
        std::atomic<size_t> next{0};
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t)
            pool.emplace_back([&]() {
                for (size_t i = next.fetch_add(1); i < ns.size(); i = next.fetch_add(1)) work(i);
            });
        for (auto& th : pool) th.join();
    }
    for (auto& rec : out.records) {
        ++out.summary.admissible;
        if (rec.threshold_pass) ++out.summary.threshold_passing;
        if (rec.solvable) {
            ++out.summary.solvable_all;
            if (rec.threshold_pass) ++out.summary.solvable_threshold_passing;
        }
    }
    return out;
}

BigRat gamma(const std::vector<u64>& exponents) {
    BigRat g(1, 1);
    u64 prev = 2;
    for (u64 k : exponents) {
        if (k < 2) throw std::domain_error("gamma: exponents must be >= 2");
        if (k < prev) throw std::domain_error("gamma: exponents must be ascending");
        prev = k;
        g = g * BigRat(k - 1, k);
    }
    return g;
}

BigRat gamma_tilde(const std::vector<u64>& exponents) {
    size_t t = exponents.size();
    if (t < 2) throw std::domain_error("gamma_tilde: at least two exponents required");
    u64 prev = 2;
    for (u64 k : exponents) {
        if (k < 2) throw std::domain_error("gamma_tilde: exponents must be >= 2");
        if (k < prev) throw std::domain_error("gamma_tilde: exponents must be ascending");
        prev = k;
    }
    BigRat g(exponents[t - 1] - 1, exponents[t - 1]);  // skips index t-1
    for (size_t i = 0; i + 2 < t; ++i) g = g * BigRat(exponents[i] - 1, exponents[i]);
    return g;
}

std::optional<MixedWitness> mixed_power_representable(u64 n, const std::vector<u64>& exponents) {
    if (n > 1000000) throw std::domain_error("mixed_power_representable: n capped at 10^6");
    if (exponents.size() > 8) throw std::domain_error("mixed_power_representable: at most 8 exponents");
    for (u64 k : exponents)
        if (k < 2) throw std::domain_error("mixed_power_representable: exponents must be >= 2");
    if (n < 4 + exponents.size()) return std::nullopt;

    // Bitmap of x1^2 + x2^2 with x1, x2 >= 1, plus the smallest x1 per value.
    static thread_local std::vector<u64> two_sq_min_x1;
    static thread_local u64 cached_limit = 0;
    u64 limit = n;
    if (cached_limit < limit) {
        two_sq_min_x1.assign(limit + 1, 0);
        for (u64 x1 = 1; x1 * x1 + 1 <= limit; ++x1)
            for (u64 x2 = x1; x1 * x1 + x2 * x2 <= limit; ++x2) {
                u64 s = x1 * x1 + x2 * x2;
                if (two_sq_min_x1[s] == 0) two_sq_min_x1[s] = x1;
            }
        cached_limit = limit;
    }

    auto upow = [](u64 b, u64 e) {
        u128 r = 1;
        while (e-- > 0) r *= b;
        return r;
    };

    std::vector<u64> ys(exponents.size(), 1);
    MixedWitness found;
    // Enumerate y_t .. y_1, then cubes x4 <= x3; check the two-square remainder.
    auto rec = [&](auto&& self, size_t j, u64 remaining) -> bool {
        if (j == exponents.size()) {
            for (u64 x4 = 1;; ++x4) {
                u64 c4 = x4 * x4 * x4;
                if (c4 + 1 + 2 > remaining) break;  // needs x3^3 >= 1 and squares >= 2
                for (u64 x3 = x4;; ++x3) {
                    u64 c3 = x3 * x3 * x3;
                    if (c4 + c3 + 2 > remaining) break;
                    u64 rem = remaining - c4 - c3;
                    if (two_sq_min_x1[rem] != 0) {
                        found.x4 = x4;
                        found.x3 = x3;
                        found.x1 = two_sq_min_x1[rem];
                        found.x2 = isqrt(rem - found.x1 * found.x1);
                        return true;
                    }
                }
            }
            return false;
        }
        u64 k = exponents[exponents.size() - 1 - j];
        for (u64 y = 1;; ++y) {
            u128 yk = upow(y, k);
            if (yk + 4 + (exponents.size() - 1 - j) > remaining) break;
            ys[exponents.size() - 1 - j] = y;
            if (self(self, j + 1, remaining - static_cast<u64>(yk))) return true;
        }
        return false;
    };
    if (!rec(rec, 0, n)) return std::nullopt;
    found.y = ys;
    // Exact verification.
    u128 total = (u128)found.x1 * found.x1 + (u128)found.x2 * found.x2 +
                 (u128)found.x3 * found.x3 * found.x3 + (u128)found.x4 * found.x4 * found.x4;
    for (size_t j = 0; j < exponents.size(); ++j) total += upow(found.y[j], exponents[j]);
    if (total != n) throw std::logic_error("mixed_power_representable: verification failed");
    return found;
}

}  // namespace halfint::golubeva
