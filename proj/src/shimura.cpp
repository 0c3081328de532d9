#include "halfint/shimura.hpp"

#include <cmath>
#include <numeric>

namespace halfint::shimura {

namespace {

Rational ipow(u64 b, int e) {
    Rational r(1);
    for (int i = 0; i < e; ++i) r = r * Rational(static_cast<long long>(b));
    return r;
}

int real_value(const DirichletCharacter& chi, u64 d) {
    return chi.eval_int(static_cast<i64>(d));
}

}  // namespace

DirichletCharacter lift_twist(u64 t, int k) {
    if (k < 3 || k % 2 == 0) throw std::domain_error("lift: odd k >= 3 required");
    int eps = (((k - 1) / 2) % 2 == 0) ? 1 : -1;
    i64 D = 4 * eps * static_cast<i64>(t);
    return DirichletCharacter::quadratic(D, static_cast<u64>(4 * (D < 0 ? -D : D)));
}

CoefficientSeries lift_coefficients(const CoefficientSeries& c, u64 t, int k,
                                    const DirichletCharacter& chi, u64 n_max) {
    if (!factorize(t).is_squarefree()) throw std::domain_error("lift: squarefree t required");
    if (!chi.is_real()) throw std::domain_error("lift: real nebentypus required for rational series");
    DirichletCharacter psi = lift_twist(t, k).times(chi);
    int e = (k - 3) / 2;
    CoefficientSeries out;
    out.support_bound = n_max;
    for (u64 n = 1; n <= n_max; ++n) {
        Rational acc(0);
        for (u64 d = 1; d <= n; ++d) {
            if (n % d != 0) continue;
            int psi_d = real_value(psi, d);
            if (psi_d == 0) continue;
            u64 m = n / d;
            auto it = c.values.find(t * m * m);
            if (it == c.values.end())
                throw std::domain_error("lift: input series is missing c(t m^2) at m = " +
                                        std::to_string(m));
            acc = acc + Rational(psi_d) * ipow(d, e) * it->second;
        }
        out.values[n] = acc;
    }
    return out;
}

Rational extend_eigenvalues(const HeckeSystem& h, u64 n) {
    u64 N = h.character.modulus();
    if (std::gcd(n, N) != 1) throw std::domain_error("extend_eigenvalues: gcd(n, N) = 1 required");
    if (!h.character.is_real()) throw std::domain_error("extend_eigenvalues: real character required");
    Rational result(1);
    for (auto& [p, e] : factorize(n).factors) {
        auto it = h.prime_eigenvalues.find(p);
        if (it == h.prime_eigenvalues.end())
            throw std::domain_error("extend_eigenvalues: missing lambda_p at p = " + std::to_string(p));
        const Rational& lp = it->second;
        // chi^2 is principal: chi^2(p) = 1 for p coprime to N.
        Rational pk2 = ipow(p, h.weight_param - 2);
        Rational prev(1), cur = lp;
        for (int j = 1; j < e; ++j) {
            Rational next = lp * cur - pk2 * prev;
            prev = cur;
            cur = next;
        }
        result = result * (e == 0 ? Rational(1) : cur);
    }
    return result;
}

CoefficientSeries reconstruct(const Rational& c_t, const HeckeSystem& h, u64 t, int k,
                              const DirichletCharacter& chi, u64 w_max) {
    if (!factorize(t).is_squarefree()) throw std::domain_error("reconstruct: squarefree t required");
    DirichletCharacter psi = lift_twist(t, k).times(chi);
    int e = (k - 3) / 2;
    u64 N = chi.modulus();
    CoefficientSeries out;
    out.support_bound = w_max;
    for (u64 w = 1; w <= w_max; ++w) {
        if (std::gcd(w, N) != 1) continue;
        Rational acc(0);
        for (u64 d : divisors(factorize(w))) {
            int mu_d = mu(d);
            if (mu_d == 0) continue;
            int psi_d = real_value(psi, d);
            if (psi_d == 0) continue;
            acc = acc + Rational(mu_d * psi_d) * ipow(d, e) * extend_eigenvalues(h, w / d);
        }
        out.values[t * w * w] = c_t * acc;
    }
    return out;
}

DeligneReport deligne_bound_check(const Rational& c_t, const HeckeSystem& h, u64 t, int k,
                                  const DirichletCharacter& chi, u64 w_max) {
    // Window check: |lambda_p|^2 <= 4 p^{k-2}, exactly.
    for (auto& [p, lp] : h.prime_eigenvalues) {
        if (lp * lp > Rational(4) * ipow(p, k - 2))
            throw std::domain_error("deligne_bound_check: lambda_p outside the Deligne window at p = " +
                                    std::to_string(p));
    }
    CoefficientSeries series = reconstruct(c_t, h, t, k, chi, w_max);
    DeligneReport rep;
    u64 N = chi.modulus();
    for (u64 w = 1; w <= w_max; ++w) {
        if (std::gcd(w, N) != 1) continue;
        Rational lhs2 = series.at(t * w * w) * series.at(t * w * w);
        // (|c(t)| w^{k/2-1} tau(w)^2)^2 = c(t)^2 w^{k-2} tau(w)^4
        Rational tw(static_cast<long long>(tau(w)));
        Rational rhs2 = c_t * c_t * ipow(w, k - 2) * tw * tw * tw * tw;
        ++rep.checked;
        if (lhs2 > rhs2) rep.all_hold = false;
        double ratio = rhs2.to_double() > 0 ? std::sqrt(lhs2.to_double() / rhs2.to_double()) : 0.0;
        if (ratio > rep.worst_ratio) {
            rep.worst_ratio = ratio;
            rep.worst_w = w;
        }
    }
    return rep;
}

}  // namespace halfint::shimura
