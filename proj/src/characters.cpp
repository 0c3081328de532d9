#include "halfint/characters.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace halfint {

RootOfUnity RootOfUnity::make(long long n, long long d) {
    if (d <= 0) throw std::domain_error("RootOfUnity: positive denominator required");
    n %= d;
    if (n < 0) n += d;
    long long g = std::gcd(n, d);
    return RootOfUnity{false, n / g, d / g};
}

RootOfUnity RootOfUnity::operator*(const RootOfUnity& o) const {
    if (zero || o.zero) return make_zero();
    return make(num * o.den + o.num * den, den * o.den);
}

std::complex<double> RootOfUnity::value() const {
    if (zero) return {0.0, 0.0};
    double theta = 2.0 * M_PI * static_cast<double>(num) / static_cast<double>(den);
    return {std::cos(theta), std::sin(theta)};
}

int RootOfUnity::real_int() const {
    if (zero) return 0;
    if (num == 0) return 1;
    if (2 * num == den) return -1;
    throw std::domain_error("RootOfUnity: value is not real");
}

u64 primitive_root_mod_p_powers(u64 p) {
    if (p == 2) throw std::domain_error("primitive_root: odd p required");
    u64 phi = p - 1;
    FactoredInteger f = factorize(phi);
    for (u64 g = 2;; ++g) {
        bool ok = true;
        for (auto& [q, e] : f.factors) {
            if (pow_mod(g, phi / q, p) == 1) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        // A primitive root mod p^2 is primitive mod p^a for every a.
        if (pow_mod(g % (p * p), phi, p * p) == 1) return g + p;
        return g;
    }
}

namespace {

// Discrete log of x to base g in the cyclic group of order ord inside (Z/m)^*.
u64 dlog_cyclic(u64 g, u64 x, u64 m, u64 ord) {
    if (m == 1 || x == 1 % m) return 0;
    u64 step = isqrt(ord) + 1;
    std::unordered_map<u64, u64> baby;
    baby.reserve(step * 2);
    u64 cur = 1;
    for (u64 j = 0; j < step; ++j) {
        baby.emplace(cur, j);
        cur = mul_mod(cur, g, m);
    }
    u64 giant = mod_inverse(static_cast<i64>(cur), m);  // g^{-step}
    u64 gamma = x % m;
    for (u64 i = 0; i <= ord / step + 1; ++i) {
        auto it = baby.find(gamma);
        if (it != baby.end()) {
            u64 j = i * step + it->second;
            return j % ord;
        }
        gamma = mul_mod(gamma, giant, m);
    }
    throw std::logic_error("dlog_cyclic: element not in the cyclic group");
}

// CRT lift: value congruent to r mod m and 1 mod cm, reduced mod m*cm.
u64 crt_unit(u64 r, u64 m, u64 cm) {
    if (cm == 1) return r % m;
    if (m == 1) return 1 % cm;
    u64 minv = mod_inverse(static_cast<i64>(m % cm), cm);
    // x = r + m * t with t = (1 - r) * m^{-1} mod cm
    u128 mod = (u128)m * cm;
    i64 diff = static_cast<i64>(1 % cm) - static_cast<i64>(r % cm);
    u64 t = static_cast<u64>(((diff % static_cast<i64>(cm)) + static_cast<i64>(cm)) % static_cast<i64>(cm));
    t = mul_mod(t, minv, cm);
    u128 x = (u128)r + (u128)m * t;
    return static_cast<u64>(x % mod);
}

}  // namespace

DirichletCharacter::DirichletCharacter(u64 modulus) : modulus_(modulus) {
    if (modulus == 0) throw std::domain_error("DirichletCharacter: modulus >= 1 required");
    FactoredInteger f = factorize(modulus);
    for (auto& [p, a] : f.factors) {
        Component c;
        c.p = p;
        c.a = a;
        c.pa = 1;
        for (int i = 0; i < a; ++i) c.pa *= p;
        if (p == 2) {
            if (a == 1) {
                c.g = 1;
                c.gord = 1;
            } else if (a == 2) {
                c.g = 3;
                c.gord = 2;
            } else {
                c.g = c.pa - 1;  // -1
                c.gord = 2;
                c.h2ord = c.pa / 4;  // order of 5
            }
        } else {
            c.g = primitive_root_mod_p_powers(p) % c.pa;
            c.gord = c.pa / p * (p - 1);
        }
        comps_.push_back(c);
    }
}

DirichletCharacter DirichletCharacter::principal(u64 modulus) { return DirichletCharacter(modulus); }

DirichletCharacter DirichletCharacter::quadratic(i64 D, u64 modulus) {
    if (D == 0) throw std::domain_error("quadratic_character: D must be nonzero");
    DirichletCharacter chi(modulus);
    // Fundamental part: the primitive quadratic symbol inducing kronecker(D, .).
    FactoredInteger f = factorize(static_cast<u64>(D < 0 ? -D : D));
    i64 d0 = D < 0 ? -1 : 1;
    for (auto& [p, e] : f.factors)
        if (e & 1) d0 *= static_cast<i64>(p);
    i64 D0 = (((d0 % 4) + 4) % 4 == 1) ? d0 : 4 * d0;
    u64 f0 = static_cast<u64>(D0 < 0 ? -D0 : D0);
    if (f0 > 1 && modulus % f0 != 0)
        throw std::domain_error("quadratic_character: conductor of the symbol does not divide the modulus");
    for (auto& c : chi.comps_) {
        u64 cm = modulus / c.pa;
        if (c.p == 2 && c.a >= 3) {
            int v1 = kronecker(D0, static_cast<i64>(crt_unit(c.pa - 1, c.pa, cm)));
            int v2 = kronecker(D0, static_cast<i64>(crt_unit(5 % c.pa, c.pa, cm)));
            c.h = (v1 == -1) ? 1 : 0;
            c.h2 = (v2 == -1) ? c.h2ord / 2 : 0;
        } else if (c.gord > 1) {
            int v = kronecker(D0, static_cast<i64>(crt_unit(c.g, c.pa, cm)));
            c.h = (v == -1) ? c.gord / 2 : 0;
        }
    }
    return chi;
}

DirichletCharacter DirichletCharacter::from_indices(u64 modulus, const std::vector<u64>& idx) {
    DirichletCharacter chi(modulus);
    size_t k = 0;
    auto next = [&]() -> u64 {
        if (k >= idx.size()) throw std::domain_error("from_indices: not enough indices");
        return idx[k++];
    };
    for (auto& c : chi.comps_) {
        if (c.p == 2 && c.a >= 3) {
            c.h = next() % 2;
            c.h2 = next() % c.h2ord;
        } else {
            c.h = next() % std::max<u64>(c.gord, 1);
        }
    }
    if (k != idx.size()) throw std::domain_error("from_indices: too many indices");
    return chi;
}

std::vector<u64> DirichletCharacter::indices() const {
    std::vector<u64> idx;
    for (auto& c : comps_) {
        idx.push_back(c.h);
        if (c.p == 2 && c.a >= 3) idx.push_back(c.h2);
    }
    return idx;
}

std::vector<DirichletCharacter> DirichletCharacter::all_mod(u64 modulus) {
    DirichletCharacter base(modulus);
    std::vector<std::vector<u64>> ranges;
    for (auto& c : base.comps_) {
        ranges.push_back({c.gord});
        if (c.p == 2 && c.a >= 3) ranges.back().push_back(c.h2ord);
    }
    std::vector<u64> flat;
    for (auto& r : ranges)
        for (u64 v : r) flat.push_back(v);
    std::vector<DirichletCharacter> out;
    std::vector<u64> idx(flat.size(), 0);
    while (true) {
        out.push_back(from_indices(modulus, idx));
        size_t i = 0;
        while (i < idx.size()) {
            if (++idx[i] < flat[i]) break;
            idx[i] = 0;
            ++i;
        }
        if (i == idx.size()) break;
    }
    return out;
}

std::vector<DirichletCharacter> DirichletCharacter::real_mod(u64 modulus) {
    std::vector<DirichletCharacter> out;
    for (auto& chi : all_mod(modulus))
        if (chi.is_real()) out.push_back(chi);
    return out;
}

u64 DirichletCharacter::conductor() const {
    if (conductor_ == 0) compute_conductor();
    return conductor_;
}

void DirichletCharacter::compute_conductor() const {
    u64 cond = 1;
    for (auto& c : comps_) {
        int cexp = 0;
        if (c.p == 2 && c.a >= 3) {
            if (c.h == 0 && c.h2 == 0) {
                cexp = 0;
            } else if (c.h2 == 0) {
                cexp = 2;  // the -1 factor alone is seen mod 4
            } else {
                int v = 0;
                u64 t = c.h2;
                while ((t & 1) == 0) t >>= 1, ++v;
                cexp = c.a - v;  // smallest 2^c with h2 * 2^(c-2) = 0 mod h2ord
            }
        } else {
            if (c.h == 0) {
                cexp = 0;
            } else {
                u64 phi = 1;
                for (cexp = 1; cexp <= c.a; ++cexp) {
                    phi = (cexp == 1) ? (c.p == 2 ? 1 : c.p - 1) : phi * c.p;
                    if ((u128)c.h * phi % c.gord == 0) break;
                }
            }
        }
        for (int i = 0; i < cexp; ++i) cond *= c.p;
    }
    conductor_ = cond;
}

int DirichletCharacter::order() const {
    u64 ord = 1;
    for (auto& c : comps_) {
        if (c.gord > 1 && c.h != 0) ord = std::lcm(ord, c.gord / std::gcd(c.gord, c.h));
        if (c.p == 2 && c.a >= 3 && c.h2 != 0) ord = std::lcm(ord, c.h2ord / std::gcd(c.h2ord, c.h2));
    }
    return static_cast<int>(ord);
}

RootOfUnity DirichletCharacter::eval_exact(i64 d) const {
    u64 dm = static_cast<u64>(((d % static_cast<i64>(modulus_)) + static_cast<i64>(modulus_)) %
                              static_cast<i64>(modulus_));
    if (std::gcd(dm, modulus_) != 1) return RootOfUnity::make_zero();
    RootOfUnity r = RootOfUnity::make(0, 1);
    for (auto& c : comps_) {
        u64 x = dm % c.pa;
        if (c.p == 2 && c.a >= 3) {
            int s = (x % 4 == 3) ? 1 : 0;
            u64 x5 = s ? (c.pa - x) : x;
            if (c.h != 0 && s) r = r * RootOfUnity::make(1, 2);
            if (c.h2 != 0) {
                u64 j = dlog_cyclic(5 % c.pa, x5, c.pa, c.h2ord);
                r = r * RootOfUnity::make(static_cast<long long>((u128)c.h2 * j % c.h2ord),
                                          static_cast<long long>(c.h2ord));
            }
        } else if (c.gord > 1 && c.h != 0) {
            u64 j = dlog_cyclic(c.g, x, c.pa, c.gord);
            r = r * RootOfUnity::make(static_cast<long long>((u128)c.h * j % c.gord),
                                      static_cast<long long>(c.gord));
        }
    }
    return r;
}

int DirichletCharacter::eval_int(i64 d) const {
    u64 dm = static_cast<u64>(((d % static_cast<i64>(modulus_)) + static_cast<i64>(modulus_)) %
                              static_cast<i64>(modulus_));
    if (std::gcd(dm, modulus_) != 1) return 0;
    int v = 1;
    for (auto& c : comps_) {
        u64 x = dm % c.pa;
        if (c.p == 2 && c.a >= 3) {
            if (c.h == 1 && x % 4 == 3) v = -v;
            if (c.h2 == c.h2ord / 2 && c.h2 != 0) {
                u64 xm8 = x % 8;
                if (xm8 == 3 || xm8 == 5) v = -v;  // the 5-part parity sign
            }
            if (c.h2 != 0 && c.h2 != c.h2ord / 2)
                throw std::domain_error("eval_int: character is not real");
        } else if (c.h != 0) {
            if (2 * c.h != c.gord) throw std::domain_error("eval_int: character is not real");
            if (c.p == 2) {  // a == 2, nontrivial: chi_{-4}
                if (x % 4 == 3) v = -v;
            } else {
                v *= kronecker(static_cast<i64>(x), static_cast<i64>(c.p));
            }
        }
    }
    return v;
}

std::complex<double> DirichletCharacter::operator()(i64 d) const {
    if (is_real()) return {static_cast<double>(eval_int(d)), 0.0};
    return eval_exact(d).value();
}

DirichletCharacter DirichletCharacter::extend(u64 new_modulus) const {
    if (new_modulus % modulus_ != 0)
        throw std::domain_error("extend: new modulus must be a multiple");
    DirichletCharacter chi(new_modulus);
    for (auto& nc : chi.comps_) {
        for (auto& oc : comps_) {
            if (oc.p != nc.p) continue;
            if (oc.p == 2) {
                if (oc.a >= 3) {
                    nc.h = oc.h;
                    nc.h2 = oc.h2 * (nc.h2ord / oc.h2ord);
                } else if (oc.a == 2) {
                    if (nc.a == 2) {
                        nc.h = oc.h;
                    } else if (nc.a >= 3) {
                        nc.h = oc.h;  // chi_{-4} seen at higher two-power level
                        nc.h2 = 0;
                    }
                }
                // a == 1 contributes nothing
            } else {
                nc.h = oc.h * (nc.gord / oc.gord);
            }
        }
    }
    return chi;
}

DirichletCharacter DirichletCharacter::times(const DirichletCharacter& o) const {
    u64 m = std::lcm(modulus_, o.modulus_);
    DirichletCharacter a = extend(m), b = o.extend(m);
    for (size_t i = 0; i < a.comps_.size(); ++i) {
        auto& ca = a.comps_[i];
        auto& cb = b.comps_[i];
        ca.h = (ca.h + cb.h) % std::max<u64>(ca.gord, 1);
        if (ca.p == 2 && ca.a >= 3) ca.h2 = (ca.h2 + cb.h2) % ca.h2ord;
    }
    a.conductor_ = 0;
    return a;
}

std::pair<DirichletCharacter, DirichletCharacter> DirichletCharacter::localize(u64 r, u64 q) const {
    if (r == 0 || q == 0) throw std::domain_error("localize: positive r, q required");
    if (std::gcd(r, q) != 1) throw std::domain_error("localize: gcd(r, q) must be 1");
    if ((u128)r * q % modulus_ != 0) throw std::domain_error("localize: modulus must divide r*q");
    for (auto& c : comps_) {
        bool in_r = (r % c.p == 0), in_q = (q % c.p == 0);
        if (in_r && in_q) throw std::domain_error("localize: component prime splits r and q");
        u64 target = in_r ? r : q;
        if (target % c.pa != 0)
            throw std::domain_error("localize: component prime power does not divide its part");
    }
    // Each component prime power divides its side, so this is pure extension.
    DirichletCharacter chi_r(r), chi_q(q);
    auto fill = [&](DirichletCharacter& dst) {
        for (auto& nc : dst.comps_) {
            for (auto& oc : comps_) {
                if (oc.p != nc.p) continue;
                if (oc.p == 2) {
                    if (oc.a >= 3) {
                        nc.h = oc.h;
                        nc.h2 = oc.h2 * (nc.h2ord / oc.h2ord);
                    } else if (oc.a == 2) {
                        nc.h = oc.h;
                    }
                } else {
                    nc.h = oc.h * (nc.gord / oc.gord);
                }
            }
        }
    };
    fill(chi_r);
    fill(chi_q);
    return {chi_r, chi_q};
}

DirichletCharacter DirichletCharacter::parse(const std::string& literal) {
    auto fail = [&]() -> DirichletCharacter {
        throw std::domain_error("character literal: expected principal:mod=N, "
                                "quadratic:D=..,mod=N or explicit:mod=N,idx=h1,h2,..; got '" +
                                literal + "'");
    };
    auto colon = literal.find(':');
    if (colon == std::string::npos) return fail();
    std::string kind = literal.substr(0, colon);
    std::string rest = literal.substr(colon + 1);
    std::unordered_map<std::string, std::string> kv;
    std::string cur;
    std::vector<std::string> parts;
    for (char ch : rest + ",") {
        if (ch == ',') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    std::string last_key;
    for (auto& part : parts) {
        auto eq = part.find('=');
        if (eq == std::string::npos) {
            if (last_key.empty()) return fail();
            kv[last_key] += "," + part;  // continuation of a list value
        } else {
            last_key = part.substr(0, eq);
            kv[last_key] = part.substr(eq + 1);
        }
    }
    try {
        if (kind == "principal") return principal(std::stoull(kv.at("mod")));
        if (kind == "quadratic") return quadratic(std::stoll(kv.at("D")), std::stoull(kv.at("mod")));
        if (kind == "explicit") {
            std::vector<u64> idx;
            std::stringstream ss(kv.at("idx"));
            std::string tok;
            while (std::getline(ss, tok, ',')) idx.push_back(std::stoull(tok));
            return from_indices(std::stoull(kv.at("mod")), idx);
        }
    } catch (const std::out_of_range&) {
        return fail();
    } catch (const std::invalid_argument&) {
        return fail();
    }
    return fail();
}

std::string DirichletCharacter::literal() const {
    std::string s = "explicit:mod=" + std::to_string(modulus_) + ",idx=";
    auto idx = indices();
    for (size_t i = 0; i < idx.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(idx[i]);
    }
    if (idx.empty()) s += "0";
    return s;
}

}  // namespace halfint
