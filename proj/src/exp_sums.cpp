#include "halfint/exp_sums.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <thread>

namespace halfint::sums {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

struct KahanAcc {
    double sr = 0, cr = 0, si = 0, ci = 0;
    void add(double re, double im) {
        double yr = re - cr, t = sr + yr;
        cr = (t - sr) - yr;
        sr = t;
        double yi = im - ci, u = si + yi;
        ci = (u - si) - yi;
        si = u;
    }
    void add(cx z) { add(z.real(), z.imag()); }
    cx get() const { return {sr, si}; }
};

u64 reduce_mod(i64 v, u64 m) {
    i64 mm = static_cast<i64>(m);
    return static_cast<u64>(((v % mm) + mm) % mm);
}

}  // namespace

KloostermanEvaluator::KloostermanEvaluator(u64 c) : c_(c) {
    if (c == 0 || c % 4 != 0) throw std::domain_error("kloosterman: 4 | c required");
    if (c > 8000000) throw std::runtime_error("kloosterman: modulus above desk-scale budget");
    units_.reserve(c / 2);
    for (u64 d = 1; d < c; d += 2) {
        if (std::gcd(d, c) != 1) continue;
        units_.push_back(d);
    }
    inv_.resize(units_.size());
    sumd_.resize(units_.size());
    base_.resize(units_.size());
    eps_idx_.resize(units_.size());
    for (size_t i = 0; i < units_.size(); ++i) {
        u64 d = units_[i];
        inv_[i] = mod_inverse(static_cast<i64>(d), c);
        sumd_[i] = (d + inv_[i]) % c;
        base_[i] = kronecker(static_cast<i64>(c), static_cast<i64>(d));
        eps_idx_[i] = (d % 4 == 3) ? 1 : 0;
    }
    root_.resize(c);
    for (u64 j = 0; j < c; ++j) {
        double th = kTwoPi * static_cast<double>(j) / static_cast<double>(c);
        root_[j] = {std::cos(th), std::sin(th)};
    }
}

void KloostermanEvaluator::set_character(const DirichletCharacter& chi, i64 k) {
    if (k % 2 == 0) throw std::domain_error("kloosterman: odd k required");
    if (c_ % chi.modulus() != 0) throw std::domain_error("kloosterman: chi modulus must divide c");
    real_character_ = chi.is_real();
    code_.assign(units_.size(), 0);
    coeff_.assign(real_character_ ? 0 : units_.size(), cx{0, 0});
    for (size_t i = 0; i < units_.size(); ++i) {
        u64 d = units_[i];
        i64 e = ((-k * eps_idx_[i]) % 4 + 4) % 4;  // eps_d^{-k} = i^e
        if (real_character_) {
            int v = chi.eval_int(static_cast<i64>(d)) * base_[i];
            if (v == 0) continue;
            if (v < 0) e = (e + 2) % 4;
            code_[i] = 1 + static_cast<int>(e);
        } else {
            coeff_[i] = chi(static_cast<i64>(d)) * static_cast<double>(base_[i]) * i_pow(e);
        }
    }
}

cx KloostermanEvaluator::diagonal(i64 n) const {
    u64 nm = reduce_mod(n, c_);
    KahanAcc acc;
    if (real_character_) {
        for (size_t i = 0; i < units_.size(); ++i) {
            int code = code_[i];
            if (!code) continue;
            cx rt = root_[nm * sumd_[i] % c_];
            switch (code) {
                case 1: acc.add(rt.real(), rt.imag()); break;
                case 2: acc.add(-rt.imag(), rt.real()); break;
                case 3: acc.add(-rt.real(), -rt.imag()); break;
                default: acc.add(rt.imag(), -rt.real()); break;
            }
        }
    } else {
        for (size_t i = 0; i < units_.size(); ++i) acc.add(coeff_[i] * root_[nm * sumd_[i] % c_]);
    }
    return acc.get();
}

cx KloostermanEvaluator::general(i64 m, i64 n) const {
    u64 mm = reduce_mod(m, c_), nm = reduce_mod(n, c_);
    KahanAcc acc;
    for (size_t i = 0; i < units_.size(); ++i) {
        u64 idx = (mm * units_[i] + nm * inv_[i]) % c_;
        if (real_character_) {
            int code = code_[i];
            if (!code) continue;
            cx rt = root_[idx];
            switch (code) {
                case 1: acc.add(rt.real(), rt.imag()); break;
                case 2: acc.add(-rt.imag(), rt.real()); break;
                case 3: acc.add(-rt.real(), -rt.imag()); break;
                default: acc.add(rt.imag(), -rt.real()); break;
            }
        } else {
            acc.add(coeff_[i] * root_[idx]);
        }
    }
    return acc.get();
}

cx kloosterman_twisted(i64 m, i64 n, u64 c, i64 k, const DirichletCharacter& chi) {
    KloostermanEvaluator ev(c);
    ev.set_character(chi, k);
    if (reduce_mod(m, c) == reduce_mod(n, c)) return ev.diagonal(n);
    return ev.general(m, n);
}

cx salie_twisted(i64 m, i64 n, u64 q, const DirichletCharacter& chi) {
    if (q == 0 || q % 2 == 0) throw std::domain_error("salie: odd q required");
    if (q % chi.modulus() != 0) throw std::domain_error("salie: chi modulus must divide q");
    if (q == 1) return {1.0, 0.0};
    u64 mm = reduce_mod(m, q), nm = reduce_mod(n, q);
    bool real = chi.is_real();
    KahanAcc acc;
    for (u64 d = 1; d < q; ++d) {
        if (std::gcd(d, q) != 1) continue;
        u64 dbar = mod_inverse(static_cast<i64>(d), q);
        int jac = kronecker(static_cast<i64>(d), static_cast<i64>(q));
        double th = kTwoPi * static_cast<double>((mm * d + nm * dbar) % q) / static_cast<double>(q);
        cx e{std::cos(th), std::sin(th)};
        if (real) {
            int v = chi.eval_int(static_cast<i64>(d)) * jac;
            if (v == 0) continue;
            acc.add(v > 0 ? e : -e);
        } else {
            acc.add(chi(static_cast<i64>(d)) * static_cast<double>(jac) * e);
        }
    }
    return acc.get();
}

cx f_r(i64 two_s, u64 r, const DirichletCharacter& chi) {
    if (r == 0) throw std::domain_error("f_r: positive r required");
    if (r % chi.modulus() != 0) throw std::domain_error("f_r: chi modulus must divide r");
    if (r == 1) return {1.0, 0.0};
    u64 ts = reduce_mod(two_s, r);
    KahanAcc acc;
    for (u64 d = 1; d < r; ++d) {
        if (std::gcd(d, r) != 1) continue;
        u64 dbar = mod_inverse(static_cast<i64>(d), r);
        if ((d + dbar) % r != ts) continue;
        int kr = kronecker(static_cast<i64>(r), static_cast<i64>(d));
        acc.add(chi(static_cast<i64>(d)) * static_cast<double>(kr));
    }
    return acc.get();
}

SplitDiag verify_split(i64 n, u64 r, u64 q, i64 k, const DirichletCharacter& chi) {
    if (r < 4 || (r & (r - 1)) != 0) throw std::domain_error("verify_split: r must be a power of two, 4 | r");
    if (q % 2 == 0) throw std::domain_error("verify_split: odd q required");
    u64 c = r * q;
    if (c % chi.modulus() != 0) throw std::domain_error("verify_split: chi modulus must divide r*q");
    auto [chi_r, chi_q] = chi.localize(r, q);

    u64 qbar = mod_inverse(static_cast<i64>(q % r), r);
    u64 rbar = (q == 1) ? 0 : mod_inverse(static_cast<i64>(r % q), q);

    SplitDiag out;
    out.modulus = c;
    out.lhs = kloosterman_twisted(n, n, c, k, chi);
    i64 m_r = static_cast<i64>(reduce_mod(n, r) * qbar % r);
    i64 m_q = (q == 1) ? 0 : static_cast<i64>(reduce_mod(n, q) * rbar % q);
    cx salie_part = salie_twisted(m_q, m_q, q, chi_q);
    out.rhs = kloosterman_twisted(m_r, m_r, r, k - static_cast<i64>(q) + 1, chi_r) * salie_part;
    out.absolute_gap = std::abs(out.lhs - out.rhs);
    out.pass = out.absolute_gap <= static_cast<double>(c) * 1e-9;

    out.rhs_exponent_k = kloosterman_twisted(m_r, m_r, r, k, chi_r) * salie_part;
    out.gap_exponent_k = std::abs(out.lhs - out.rhs_exponent_k);
    bool pass_k = out.gap_exponent_k <= static_cast<double>(c) * 1e-9;
    out.verdict_changes = (pass_k != out.pass);
    return out;
}

ExplicitFormulaProbe verify_explicit_formula(u64 n, u64 q, u64 r, i64 k,
                                             const DirichletCharacter& chi, u64 N) {
    if (n == 0 || q == 0 || r == 0 || N == 0)
        throw std::domain_error("explicit_formula: positive arguments required");
    if (std::gcd(q, 2 * n * N) != 1) throw std::domain_error("explicit_formula: gcd(q, 2nN) = 1 required");
    if (r % N != 0) throw std::domain_error("explicit_formula: N | r required");
    u64 rr = r;
    for (auto& [p, e] : factorize(2 * n * N).factors)
        while (rr % p == 0) rr /= p;
    if (rr != 1) throw std::domain_error("explicit_formula: r | (2nN)^inf required");

    ExplicitFormulaProbe probe;
    u64 c = q * r;
    probe.literal.modulus = c;
    probe.literal.lhs = kloosterman_twisted(static_cast<i64>(n), static_cast<i64>(n), c, k, chi);

    u64 qbar_r = mod_inverse(static_cast<i64>(q % r), r);  // (ab)^{-1} mod r, ab = q
    auto q_divs = divisors(factorize(q));
    int kron_neg1_q = kronecker(-1, static_cast<i64>(q));
    u64 nr_mod_q = (q == 1) ? 0 : (n % q) * (r % q) % q;
    int kron_plus = kronecker(static_cast<i64>(nr_mod_q), static_cast<i64>(q));
    int kron_minus = kron_neg1_q * kron_plus;

    cx rhs_2k{0, 0}, rhs_k{0, 0};
    for (u64 s = 1; s < std::max<u64>(r / 2, 1); s += 2) {
        int eps = (s % 4 == 3) ? 1 : 0;
        cx coef_2k = i_pow(-2 * k * eps);
        cx coef_k = i_pow(-k * eps);
        cx frv = f_r(static_cast<i64>(2 * s % r), r, chi);
        cx is = i_pow(static_cast<i64>(s));
        cx bracket = (cx{1, 0} + is) * static_cast<double>(kron_plus) +
                     (cx{1, 0} - is) * static_cast<double>(kron_minus);
        KahanAcc inner;
        for (u64 a : q_divs) {
            u64 b = q / a;
            if (std::gcd(a, b) != 1) {
                ++probe.skipped_factor_pairs;
                continue;
            }
            u64 iar = (b == 1) ? 0 : mod_inverse(static_cast<i64>(a % b * (r % b) % b), b);
            u64 ibr = (a == 1) ? 0 : mod_inverse(static_cast<i64>(b % a * (r % a) % a), a);
            double f1 = (b == 1) ? 0.0
                                 : static_cast<double>((u128)2 * n % b * iar % b) / static_cast<double>(b);
            double f2 = (a == 1) ? 0.0
                                 : static_cast<double>((u128)2 * n % a * ibr % a) / static_cast<double>(a);
            double f3 = static_cast<double>((u128)2 * n % r * (s % r) % r * qbar_r % r) /
                        static_cast<double>(r);
            double th = kTwoPi * (f1 - f2 + f3);
            inner.add(std::cos(th), std::sin(th));
        }
        cx common = frv * inner.get();
        rhs_2k += coef_2k * bracket * common;
        rhs_k += coef_k * bracket * common;
    }
    double sq = std::sqrt(static_cast<double>(q));
    rhs_2k *= sq;
    rhs_k *= sq;

    probe.literal.rhs = rhs_2k;
    probe.literal.absolute_gap = std::abs(probe.literal.lhs - rhs_2k);
    probe.literal.pass = probe.literal.absolute_gap <= static_cast<double>(c) * 1e-9;
    probe.gap_eps_k = std::abs(probe.literal.lhs - rhs_k);
    probe.gap_eps_2k_half = std::abs(probe.literal.lhs - 0.5 * rhs_2k);
    probe.gap_eps_k_half = std::abs(probe.literal.lhs - 0.5 * rhs_k);

    struct Named { const char* name; double gap; };
    Named variants[] = {{"eps_2k", probe.literal.absolute_gap},
                        {"eps_k", probe.gap_eps_k},
                        {"eps_2k_half", probe.gap_eps_2k_half},
                        {"eps_k_half", probe.gap_eps_k_half}};
    auto best = std::min_element(std::begin(variants), std::end(variants),
                                 [](const Named& x, const Named& y) { return x.gap < y.gap; });
    probe.best_variant = best->name;
    probe.best_gap = best->gap;
    return probe;
}

ExpSumResult weil_bound_check(i64 n, u64 c, i64 k, const DirichletCharacter& chi) {
    ExpSumResult res;
    res.modulus = c;
    res.value = kloosterman_twisted(n, n, c, k, chi);
    u64 g = (n == 0) ? c : std::gcd(static_cast<u64>(n < 0 ? -n : n), c);
    double bound = static_cast<double>(tau(c)) * std::sqrt(static_cast<double>(g)) *
                   std::sqrt(static_cast<double>(c));
    if (!chi.is_real()) {
        u64 f = chi.conductor();
        bound *= std::pow(static_cast<double>(f) * static_cast<double>(rad(f)), 0.25);
    }
    res.bound = bound;
    double av = std::abs(res.value);
    res.ratio = bound > 0 ? av / bound : 0.0;
    res.holds = av <= bound * (1.0 + 1e-9);
    return res;
}

// ---------------------------------------------------------------------------
// Bulk Salie evaluation over all characters mod p^alpha.
//
// For alpha >= 2 write d = x (1 + p^gamma)^w with x running over units mod
// p^gamma and w mod p^beta, beta = floor(alpha/2), gamma = alpha - beta. The
// w-sum vanishes unless n(x - xbar) = -a_psi (mod p^beta), where
// psi(1 + p^gamma) = e(a_psi / p^beta); the surviving terms give
//   S = p^beta * sum over stationary x of psi(x) e(n(x + xbar)/p^alpha).
// Grouping characters by a_psi makes the whole character group costable in
// about phi(p^alpha) work per n.
// ---------------------------------------------------------------------------

class PrimePowerSalieEvaluator {
  public:
    PrimePowerSalieEvaluator(u64 p, int alpha) : p_(p), alpha_(alpha) {
        if (p < 3 || p % 2 == 0 || !is_prime(p)) throw std::domain_error("salie scan: odd prime p required");
        if (alpha < 1) throw std::domain_error("salie scan: alpha >= 1 required");
        m_ = 1;
        for (int i = 0; i < alpha; ++i) m_ *= p;
        ng_ = m_ / p * (p - 1);
        g_ = primitive_root_mod_p_powers(p) % m_;
        dlog_.assign(m_, 0xffffffffu);
        u64 cur = 1;
        for (u64 j = 0; j < ng_; ++j) {
            dlog_[cur] = static_cast<std::uint32_t>(j);
            cur = mul_mod(cur, g_, m_);
        }
        eroot_.resize(ng_);
        for (u64 j = 0; j < ng_; ++j) {
            double th = kTwoPi * static_cast<double>(j) / static_cast<double>(ng_);
            eroot_[j] = {std::cos(th), std::sin(th)};
        }
        if (alpha_ >= 2) {
            beta_ = alpha_ / 2;
            pb_ = 1;
            for (int i = 0; i < beta_; ++i) pb_ *= p;
            pg_ = m_ / pb_;
            u64 onepg = (1 + pg_) % m_;
            u64 D = dlog_[onepg];
            u64 q = ng_ / pb_;
            if (D % q != 0) throw std::logic_error("salie scan: kernel generator index mismatch");
            Dprime_ = D / q;
        }
    }

    u64 modulus() const { return m_; }
    u64 group_order() const { return ng_; }

    // S_{chi_h}(n,n;p^alpha) for h = 0..ng-1, chi_h(g^j) = e(h j / ng).
    std::vector<cx> eval_all(u64 n) const {
        if (alpha_ == 1) return eval_all_direct(n);
        struct Term {
            u64 L;
            cx w;
        };
        // Stationary terms per kernel parameter a.
        std::vector<std::vector<Term>> table(pb_);
        for (u64 a = 0; a < pb_; ++a) {
            for (u64 x0 : stationary_roots(n, a)) {
                for (u64 t = 0; t < pg_ / pb_; ++t) {
                    u64 xh = x0 + t * pb_;
                    u64 xinv = mod_inverse(static_cast<i64>(xh), m_);
                    u64 idx = (u128)(n % m_) * ((xh + xinv) % m_) % m_;
                    double th = kTwoPi * static_cast<double>(idx) / static_cast<double>(m_);
                    cx w{std::cos(th), std::sin(th)};
                    if (alpha_ % 2 == 1 && kronecker(static_cast<i64>(xh), static_cast<i64>(p_)) == -1)
                        w = -w;
                    table[a].push_back({dlog_[xh], w});
                }
            }
        }
        double scale = static_cast<double>(pb_);
        std::vector<cx> out(ng_);
        for (u64 h = 0; h < ng_; ++h) {
            u64 a = (u128)h * Dprime_ % pb_;
            cx s{0, 0};
            for (const Term& t : table[a]) s += eroot_[(u128)h * t.L % ng_] * t.w;
            out[h] = scale * s;
        }
        return out;
    }

  private:
    std::vector<cx> eval_all_direct(u64 n) const {
        // v[j] = (g^j | p) e(n(g^j + g^-j)/p); S_h = DFT of v.
        std::vector<cx> v(ng_);
        u64 cur = 1;
        for (u64 j = 0; j < ng_; ++j) {
            u64 dbar = mod_inverse(static_cast<i64>(cur), m_);
            u64 idx = (n % m_) * ((cur + dbar) % m_) % m_;
            double th = kTwoPi * static_cast<double>(idx) / static_cast<double>(m_);
            cx w{std::cos(th), std::sin(th)};
            if (kronecker(static_cast<i64>(cur), static_cast<i64>(m_)) == -1) w = -w;
            v[j] = w;
            cur = mul_mod(cur, g_, m_);
        }
        std::vector<cx> out(ng_);
        for (u64 h = 0; h < ng_; ++h) {
            KahanAcc acc;
            for (u64 j = 0; j < ng_; ++j) acc.add(eroot_[h * j % ng_] * v[j]);
            out[h] = acc.get();
        }
        return out;
    }

    // Units x mod p^beta with n(x - xbar) + a = 0 (mod p^beta), by level lifting.
    std::vector<u64> stationary_roots(u64 n, u64 a) const {
        std::vector<u64> roots;
        u64 pj = p_;
        for (u64 x = 1; x < p_; ++x) {
            u64 xinv = mod_inverse(static_cast<i64>(x), p_);
            if (((u128)(n % p_) * ((x + p_ - xinv) % p_) + a) % p_ == 0) roots.push_back(x);
        }
        for (int j = 1; j < beta_; ++j) {
            u64 pj1 = pj * p_;
            std::vector<u64> next;
            for (u64 x : roots) {
                for (u64 t = 0; t < p_; ++t) {
                    u64 y = x + t * pj;
                    u64 yinv = mod_inverse(static_cast<i64>(y), pj1);
                    u64 lhs = ((u128)(n % pj1) * ((y + pj1 - yinv) % pj1) + a) % pj1;
                    if (lhs == 0) next.push_back(y);
                }
            }
            roots.swap(next);
            pj = pj1;
        }
        return roots;
    }

    u64 p_;
    int alpha_;
    u64 m_ = 1, ng_ = 1, g_ = 1;
    int beta_ = 0;
    u64 pb_ = 1, pg_ = 1, Dprime_ = 0;
    std::vector<std::uint32_t> dlog_;
    std::vector<cx> eroot_;
};

std::vector<cx> salie_all_characters_prime_power(u64 p, int alpha, u64 n) {
    return PrimePowerSalieEvaluator(p, alpha).eval_all(n);
}

ViolationScan weil_violation_search(u64 p_max, int alpha_max, u64 n_max, int jobs,
                                    u64 modulus_budget) {
    if (p_max > 100 || alpha_max > 5) throw std::domain_error("violation search: desk scale is p <= 100, alpha <= 5");
    ViolationScan scan;
    for (u64 p : primes_up_to(p_max)) {
        if (p == 2) continue;
        u64 m = 1;
        for (int alpha = 1; alpha <= alpha_max; ++alpha) {
            m *= p;
            if (m > modulus_budget) {
                scan.skipped_moduli.push_back(m);
                continue;
            }
            PrimePowerSalieEvaluator ev(p, alpha);
            u64 ng = ev.group_order();
            double sqc = std::sqrt(static_cast<double>(m));
            double tauc = static_cast<double>(alpha + 1);

            std::vector<std::vector<ViolationInstance>> per_n(n_max);
            std::vector<u64> checked(n_max, 0);
            std::vector<bool> quad_ok(n_max, true);
            auto work = [&](u64 ni) {
                u64 n = ni + 1;
                auto values = ev.eval_all(n);
                u64 g = std::gcd(n, m);
                double plain = tauc * std::sqrt(static_cast<double>(g)) * sqc;
                for (u64 h = 0; h < ng; ++h) {
                    ++checked[ni];
                    double av = std::abs(values[h]);
                    bool violates = av > plain * (1.0 + 1e-9);
                    u64 ord = ng / std::gcd(ng, h);
                    if (ord <= 2) {
                        if (violates) quad_ok[ni] = false;
                        continue;
                    }
                    if (!violates) continue;
                    ViolationInstance inst;
                    inst.p = p;
                    inst.alpha = alpha;
                    inst.modulus = m;
                    inst.n = n;
                    inst.char_index = h;
                    inst.chi_literal = "explicit:mod=" + std::to_string(m) + ",idx=" + std::to_string(h);
                    inst.order = static_cast<int>(ord);
                    // Conductor p^c: smallest c with chi trivial on the kernel of
                    // U(p^alpha) -> U(p^c).
                    int cexp = alpha;
                    u64 phi_pc = 1;
                    for (int cc = 0; cc <= alpha; ++cc) {
                        if (cc >= 1) phi_pc = (cc == 1) ? (p - 1) : phi_pc * p;
                        u64 sub = (cc == 0) ? 1 : phi_pc;
                        if ((u128)h * sub % ng == 0) {
                            cexp = cc;
                            break;
                        }
                    }
                    u64 cond = 1;
                    for (int i = 0; i < cexp; ++i) cond *= p;
                    inst.conductor = cond;
                    inst.value = values[h];
                    inst.plain_bound = plain;
                    double factor = std::pow(static_cast<double>(cond) *
                                                 static_cast<double>(cexp >= 1 ? p : 1),
                                             0.25);
                    inst.augmented_bound = plain * factor;
                    inst.satisfies_augmented = av <= inst.augmented_bound * (1.0 + 1e-9);
                    per_n[ni].push_back(inst);
                }
            };
            if (jobs <= 1) {
                for (u64 ni = 0; ni < n_max; ++ni) work(ni);
            } else {
                std::vector<std::thread> pool;
                std::atomic<u64> next{0};
                for (int t = 0; t < jobs; ++t)
                    pool.emplace_back([&]() {
                        for (u64 ni = next.fetch_add(1); ni < n_max; ni = next.fetch_add(1)) work(ni);
                    });
                for (auto& th : pool) th.join();
            }
            for (u64 ni = 0; ni < n_max; ++ni) {
                scan.instances_checked += checked[ni];
                if (!quad_ok[ni]) scan.quadratic_all_hold = false;
                for (auto& inst : per_n[ni]) scan.violations.push_back(inst);
            }
        }
    }
    return scan;
}

cx kq_partial_sum(double x, u64 Q, i64 m, i64 n, double nu, i64 k, const DirichletCharacter& chi) {
    if (Q == 0 || Q % 4 != 0) throw std::domain_error("kq_partial_sum: 4 | Q required");
    if (Q % chi.modulus() != 0) throw std::domain_error("kq_partial_sum: chi modulus must divide Q");
    KahanAcc acc;
    for (u64 c = Q; static_cast<double>(c) <= x; c += Q) {
        cx kv = kloosterman_twisted(m, n, c, k, chi);
        double th = kTwoPi * 2.0 * nu * static_cast<double>(n) / static_cast<double>(c);
        acc.add(kv * cx{std::cos(th), std::sin(th)} / std::sqrt(static_cast<double>(c)));
    }
    return acc.get();
}

cx f_rs_sum(double y, u64 r, i64 s, u64 p, u64 n, u64 N, double nu, int sign,
            std::optional<double> A, std::optional<double> B) {
    if (sign != 1 && sign != -1) throw std::domain_error("f_rs_sum: sign must be +-1");
    if (std::gcd(p, 2 * n * N) != 1) throw std::domain_error("f_rs_sum: gcd(p, 2nN) = 1 required");
    u64 coprime_to = 2 * n * N;
    u64 smod = reduce_mod(s, r);
    KahanAcc acc;
    u64 a_hi = static_cast<u64>(std::floor(2.0 * y / static_cast<double>(r)));
    for (u64 a = 1; a <= a_hi; ++a) {
        if (std::gcd(a, coprime_to) != 1) continue;
        if (A && !(static_cast<double>(a) > *A && static_cast<double>(a) <= 2.0 * *A)) continue;
        double ar = static_cast<double>(a) * static_cast<double>(r);
        u64 b_lo = static_cast<u64>(std::floor(y / ar)) + 1;
        u64 b_hi = static_cast<u64>(std::floor(2.0 * y / ar));
        for (u64 b = b_lo; b <= b_hi; ++b) {
            double abr = ar * static_cast<double>(b);
            if (!(abr > y && abr <= 2.0 * y)) continue;
            if (std::gcd(a, b) != 1) continue;
            if (std::gcd(b, coprime_to) != 1) continue;
            if (a % p != 0 && b % p != 0) continue;
            if (B && !(static_cast<double>(b) > *B && static_cast<double>(b) <= 2.0 * *B)) continue;
            u64 ab = a * b;
            i64 top = static_cast<i64>((n % ab) * (r % ab) % ab);
            if (sign < 0) top = -top;
            int kr = kronecker(top, static_cast<i64>(ab));
            if (kr == 0) continue;
            u64 iar = (b == 1) ? 0 : mod_inverse(static_cast<i64>(a % b * (r % b) % b), b);
            u64 ibr = (a == 1) ? 0 : mod_inverse(static_cast<i64>(b % a * (r % a) % a), a);
            u64 iab = (r == 1) ? 0 : mod_inverse(static_cast<i64>(ab % r), r);
            double f1 = (b == 1) ? 0.0 : static_cast<double>((u128)2 * n % b * iar % b) / static_cast<double>(b);
            double f2 = (a == 1) ? 0.0 : static_cast<double>((u128)2 * n % a * ibr % a) / static_cast<double>(a);
            double f3 = (r == 1) ? 0.0
                                 : static_cast<double>((u128)2 * n % r * smod % r * iab % r) /
                                       static_cast<double>(r);
            double f4 = 2.0 * static_cast<double>(n) * nu / (abr * 1.0);
            double th = kTwoPi * (f1 - f2 + f3 + f4);
            acc.add(kr * std::cos(th), kr * std::sin(th));
        }
    }
    return acc.get();
}

}  // namespace halfint::sums
