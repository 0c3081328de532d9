#include "halfint/cyclotomic.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace halfint::sums {

CyclotomicSum CyclotomicSum::operator+(const CyclotomicSum& o) const {
    if (c_ != o.c_) throw std::domain_error("cyclotomic: order mismatch");
    CyclotomicSum r(c_);
    for (u64 i = 0; i < c_; ++i) r.a_[i] = a_[i] + o.a_[i];
    return r;
}

CyclotomicSum CyclotomicSum::operator-(const CyclotomicSum& o) const {
    if (c_ != o.c_) throw std::domain_error("cyclotomic: order mismatch");
    CyclotomicSum r(c_);
    for (u64 i = 0; i < c_; ++i) r.a_[i] = a_[i] - o.a_[i];
    return r;
}

CyclotomicSum CyclotomicSum::operator*(const CyclotomicSum& o) const {
    if (c_ != o.c_) throw std::domain_error("cyclotomic: order mismatch");
    CyclotomicSum r(c_);
    for (u64 i = 0; i < c_; ++i) {
        if (a_[i] == 0) continue;
        for (u64 j = 0; j < c_; ++j) {
            if (o.a_[j] == 0) continue;
            r.a_[(i + j) % c_] += a_[i] * o.a_[j];
        }
    }
    return r;
}

CyclotomicSum CyclotomicSum::embed(u64 C) const {
    if (C % c_ != 0) throw std::domain_error("cyclotomic: embedding order must be a multiple");
    CyclotomicSum r(C);
    u64 scale = C / c_;
    for (u64 i = 0; i < c_; ++i) r.a_[i * scale] += a_[i];
    return r;
}

std::vector<long long> cyclotomic_polynomial(u64 c) {
    // Phi_c = (x^c - 1) / prod_{d | c, d < c} Phi_d, by exact polynomial division.
    static std::map<u64, std::vector<long long>> cache;
    static std::mutex mtx;
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find(c);
        if (it != cache.end()) return it->second;
    }
    std::vector<long long> num(c + 1, 0);
    num[0] = -1;
    num[c] = 1;
    auto divide_exact = [](std::vector<long long>& p, const std::vector<long long>& d) {
        // p /= d, d monic; exact integer division.
        std::vector<long long> q(p.size() - d.size() + 1, 0);
        for (size_t i = q.size(); i-- > 0;) {
            long long lead = p[i + d.size() - 1];
            q[i] = lead;
            if (lead == 0) continue;
            for (size_t j = 0; j < d.size(); ++j) p[i + j] -= lead * d[j];
        }
        p = q;
    };
    for (u64 d = 1; d < c; ++d)
        if (c % d == 0) divide_exact(num, cyclotomic_polynomial(d));
    std::lock_guard<std::mutex> lock(mtx);
    cache.emplace(c, num);
    return num;
}

bool CyclotomicSum::is_zero() const {
    bool plain = true;
    for (long long v : a_)
        if (v != 0) plain = false;
    if (plain) return true;
    // Reduce mod Phi_c; the power basis is redundant, so a nonzero vector can
    // still represent zero.
    auto phi = cyclotomic_polynomial(c_);
    std::vector<long long> rem = a_;
    size_t deg = phi.size() - 1;
    for (size_t i = rem.size(); i-- > 0;) {
        if (i < deg) break;
        long long lead = rem[i];
        if (lead == 0) continue;
        for (size_t j = 0; j < phi.size(); ++j) rem[i - deg + j] -= lead * phi[j];
    }
    for (size_t i = 0; i < std::min(rem.size(), deg); ++i)
        if (rem[i] != 0) return false;
    return true;
}

std::complex<double> CyclotomicSum::value() const {
    std::complex<double> s{0, 0};
    for (u64 i = 0; i < c_; ++i) {
        if (a_[i] == 0) continue;
        double th = 2.0 * M_PI * static_cast<double>(i) / static_cast<double>(c_);
        s += static_cast<double>(a_[i]) * std::complex<double>{std::cos(th), std::sin(th)};
    }
    return s;
}

CyclotomicSum kloosterman_cyclotomic(i64 m, i64 n, u64 c, i64 k, const DirichletCharacter& chi) {
    if (c % 4 != 0) throw std::domain_error("kloosterman: 4 | c required");
    if (c > 4096) throw std::domain_error("cyclotomic mode: c too large");
    if (c % chi.modulus() != 0) throw std::domain_error("kloosterman: chi modulus must divide c");
    if (!chi.is_real()) throw std::domain_error("cyclotomic mode: real chi required");
    CyclotomicSum out(c);
    u64 quarter = c / 4;  // i = zeta_c^{c/4}
    i64 cc = static_cast<i64>(c);
    u64 mm = static_cast<u64>(((m % cc) + cc) % cc), nm = static_cast<u64>(((n % cc) + cc) % cc);
    for (u64 d = 1; d < c; d += 2) {
        if (std::gcd(d, c) != 1) continue;
        int v = chi.eval_int(static_cast<i64>(d)) * kronecker(static_cast<i64>(c), static_cast<i64>(d));
        if (v == 0) continue;
        u64 dbar = mod_inverse(static_cast<i64>(d), c);
        u64 idx = (mm * d + nm * dbar) % c;
        // eps_d^{-k} = i^e with e = (-k * [d = 3 mod 4]) mod 4
        u64 e = static_cast<u64>((((d % 4 == 3 ? -k : 0) % 4) + 4) % 4);
        out.add_root(idx + e * quarter, v);
    }
    return out;
}

CyclotomicSum salie_cyclotomic(i64 m, i64 n, u64 q, const DirichletCharacter& chi) {
    if (q % 2 == 0) throw std::domain_error("salie: odd q required");
    if (q > 4096) throw std::domain_error("cyclotomic mode: q too large");
    if (q % chi.modulus() != 0) throw std::domain_error("salie: chi modulus must divide q");
    if (!chi.is_real()) throw std::domain_error("cyclotomic mode: real chi required");
    CyclotomicSum out(q);
    if (q == 1) {
        out.add_root(0, 1);
        return out;
    }
    i64 qq = static_cast<i64>(q);
    u64 mm = static_cast<u64>(((m % qq) + qq) % qq), nm = static_cast<u64>(((n % qq) + qq) % qq);
    for (u64 d = 1; d < q; ++d) {
        if (std::gcd(d, q) != 1) continue;
        int v = chi.eval_int(static_cast<i64>(d)) * kronecker(static_cast<i64>(d), static_cast<i64>(q));
        if (v == 0) continue;
        u64 dbar = mod_inverse(static_cast<i64>(d), q);
        out.add_root((mm * d + nm * dbar) % q, v);
    }
    return out;
}

bool verify_split_exact(i64 n, u64 r, u64 q, i64 k, const DirichletCharacter& chi) {
    if (r < 4 || (r & (r - 1)) != 0) throw std::domain_error("verify_split: r must be a power of two, 4 | r");
    if (q % 2 == 0) throw std::domain_error("verify_split: odd q required");
    u64 c = r * q;
    if (c > 256) throw std::domain_error("cyclotomic mode: r*q <= 256 required");
    if (c % chi.modulus() != 0) throw std::domain_error("verify_split: chi modulus must divide r*q");
    auto [chi_r, chi_q] = chi.localize(r, q);
    u64 qbar = mod_inverse(static_cast<i64>(q % r), r);
    u64 rbar = (q == 1) ? 0 : mod_inverse(static_cast<i64>(r % q), q);
    auto reduce = [](i64 v, u64 m) {
        i64 mm = static_cast<i64>(m);
        return static_cast<u64>(((v % mm) + mm) % mm);
    };
    i64 m_r = static_cast<i64>(reduce(n, r) * qbar % r);
    i64 m_q = (q == 1) ? 0 : static_cast<i64>(reduce(n, q) * rbar % q);
    CyclotomicSum lhs = kloosterman_cyclotomic(n, n, c, k, chi);
    CyclotomicSum rhs = kloosterman_cyclotomic(m_r, m_r, r, k - static_cast<i64>(q) + 1, chi_r).embed(c) *
                        salie_cyclotomic(m_q, m_q, q, chi_q).embed(c);
    return (lhs - rhs).is_zero();
}

}  // namespace halfint::sums
