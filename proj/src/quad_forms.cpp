#include "halfint/quad_forms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace halfint::forms {

namespace {

constexpr double kPi = 3.14159265358979323846264338328;

i128 det_bareiss(std::vector<std::vector<i128>> m) {
    int n = static_cast<int>(m.size());
    i128 prev = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m[k][k] == 0) {
            int swap_row = -1;
            for (int i = k + 1; i < n; ++i)
                if (m[i][k] != 0) {
                    swap_row = i;
                    break;
                }
            if (swap_row < 0) return 0;
            std::swap(m[k], m[swap_row]);
            for (auto& v : m[k]) v = -v;  // keep the determinant sign
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return m[n - 1][n - 1];
}

i128 minor_det(const std::vector<std::vector<i64>>& g, int drop_r, int drop_c) {
    std::vector<std::vector<i128>> m;
    for (int i = 0; i < static_cast<int>(g.size()); ++i) {
        if (i == drop_r) continue;
        std::vector<i128> row;
        for (int j = 0; j < static_cast<int>(g.size()); ++j) {
            if (j == drop_c) continue;
            row.push_back(g[i][j]);
        }
        m.push_back(row);
    }
    if (m.empty()) return 1;
    return det_bareiss(m);
}

u64 upow(u64 b, int e) {
    u64 r = 1;
    while (e-- > 0) r *= b;
    return r;
}

}  // namespace

QuadraticForm::QuadraticForm(std::vector<std::vector<i64>> gram) : gram_(std::move(gram)) {
    dim_ = static_cast<int>(gram_.size());
    if (dim_ == 0) throw std::domain_error("QuadraticForm: empty Gram matrix");
    for (int i = 0; i < dim_; ++i) {
        if (static_cast<int>(gram_[i].size()) != dim_)
            throw std::domain_error("QuadraticForm: Gram matrix must be square");
        if (gram_[i][i] % 2 != 0) throw std::domain_error("QuadraticForm: even diagonal required");
        for (int j = 0; j < dim_; ++j)
            if (gram_[i][j] != gram_[j][i]) throw std::domain_error("QuadraticForm: symmetry required");
    }
    // Positive definiteness: leading principal minors all positive.
    for (int k = 1; k <= dim_; ++k) {
        std::vector<std::vector<i128>> sub(k, std::vector<i128>(k));
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) sub[i][j] = gram_[i][j];
        if (det_bareiss(sub) <= 0)
            throw std::domain_error("QuadraticForm: positive definite Gram matrix required");
    }
    {
        std::vector<std::vector<i128>> m(dim_, std::vector<i128>(dim_));
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j) m[i][j] = gram_[i][j];
        det_ = static_cast<i64>(det_bareiss(m));
    }
    // Level: minimal N with N * gram^{-1} integral and even diagonal;
    // gram^{-1} = adj / det with det > 0.
    u64 N = 1;
    for (int i = 0; i < dim_; ++i) {
        for (int j = 0; j < dim_; ++j) {
            i128 adj = minor_det(gram_, j, i);
            if ((i + j) % 2 != 0) adj = -adj;
            u64 a = static_cast<u64>(adj < 0 ? -adj : adj);
            u64 d = static_cast<u64>(det_);
            if (i == j) d *= 2;
            u64 g = std::gcd(a % d, d);
            N = std::lcm(N, d / g);
        }
    }
    level_ = N;
    diagonal_ = true;
    for (int i = 0; i < dim_ && diagonal_; ++i)
        for (int j = 0; j < dim_; ++j)
            if (i != j && gram_[i][j] != 0) diagonal_ = false;
    if (diagonal_)
        for (int i = 0; i < dim_; ++i) diag_.push_back(gram_[i][i] / 2);
}

QuadraticForm QuadraticForm::diagonal(const std::vector<i64>& coeffs) {
    std::vector<std::vector<i64>> g(coeffs.size(), std::vector<i64>(coeffs.size(), 0));
    for (size_t i = 0; i < coeffs.size(); ++i) g[i][i] = 2 * coeffs[i];
    return QuadraticForm(g);
}

i64 QuadraticForm::evaluate(const std::vector<i64>& x) const {
    i128 s = 0;
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) s += static_cast<i128>(gram_[i][j]) * x[i] * x[j];
    return static_cast<i64>(s / 2);
}

std::vector<u64> QuadraticForm::theta_coefficients(u64 n_max) const {
    std::vector<u64> counts(n_max + 1, 0);
    if (diagonal_) {
        // Recursive sweep with sign multiplicities.
        std::vector<i64> x(dim_, 0);
        auto rec = [&](auto&& self, int i, u64 partial, u64 mult) -> void {
            if (i == dim_) {
                counts[partial] += mult;
                return;
            }
            u64 a = static_cast<u64>(diag_[i]);
            for (u64 v = 0;; ++v) {
                u64 contrib = a * v * v;
                if (partial + contrib > n_max) break;
                self(self, i + 1, partial + contrib, mult * (v == 0 ? 1 : 2));
            }
        };
        rec(rec, 0, 0, 1);
        return counts;
    }
    // General positive definite path: Cholesky bounds with exact verification.
    std::vector<std::vector<double>> q(dim_, std::vector<double>(dim_));
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) q[i][j] = static_cast<double>(gram_[i][j]) / 2.0;
    // q = sum_i d_i (x_i + sum_{j>i} u_ij x_j)^2
    std::vector<std::vector<double>> u(dim_, std::vector<double>(dim_, 0.0));
    std::vector<double> dcoef(dim_);
    for (int i = 0; i < dim_; ++i) {
        for (int j = i; j < dim_; ++j) {
            double s = q[i][j];
            for (int k = 0; k < i; ++k) s -= dcoef[k] * u[k][i] * u[k][j];
            if (j == i)
                dcoef[i] = s;
            else
                u[i][j] = s / dcoef[i];
        }
    }
    std::vector<i64> x(dim_, 0);
    const double slack = 1e-9 * static_cast<double>(n_max + 1) + 1e-9;
    auto rec = [&](auto&& self, int i, double remaining) -> void {
        if (i < 0) {
            i64 v = evaluate(x);
            if (v >= 0 && static_cast<u64>(v) <= n_max) counts[static_cast<u64>(v)] += 1;
            return;
        }
        double center = 0;
        for (int j = i + 1; j < dim_; ++j) center += u[i][j] * static_cast<double>(x[j]);
        double radius = std::sqrt(std::max(0.0, (remaining + slack) / dcoef[i]));
        i64 lo = static_cast<i64>(std::ceil(-center - radius - 1e-9));
        i64 hi = static_cast<i64>(std::floor(-center + radius + 1e-9));
        for (i64 v = lo; v <= hi; ++v) {
            x[i] = v;
            double term = dcoef[i] * (v + center) * (v + center);
            self(self, i - 1, remaining - term);
        }
        x[i] = 0;
    };
    rec(rec, dim_ - 1, static_cast<double>(n_max));
    return counts;
}

u64 QuadraticForm::represent_count(u64 n) const {
    if (diagonal_ && dim_ == 3) {
        u64 a1 = diag_[0], a2 = diag_[1], a3 = diag_[2];
        u64 count = 0;
        for (u64 x = 0; a1 * x * x <= n; ++x) {
            u64 mx = (x == 0) ? 1 : 2;
            u64 r1 = n - a1 * x * x;
            for (u64 y = 0; a2 * y * y <= r1; ++y) {
                u64 r2 = r1 - a2 * y * y;
                if (r2 % a3 != 0) continue;
                u64 z2 = r2 / a3;
                u64 z = isqrt(z2);
                if (z * z != z2) continue;
                count += mx * ((y == 0) ? 1 : 2) * ((z == 0) ? 1 : 2);
            }
        }
        return count;
    }
    return theta_coefficients(n)[n];
}

u64 count_solutions_mod(const QuadraticForm& q, i64 n, u64 p, int nu, u64 budget) {
    if (nu == 0) return 1;
    u64 m = 1;
    double total = 1;
    for (int i = 0; i < nu; ++i) m *= p;
    for (int i = 0; i < q.dim(); ++i) {
        total *= static_cast<double>(m);
        if (total > static_cast<double>(budget))
            throw std::runtime_error("count_solutions_mod: p^(nu*dim) exceeds budget, use a smaller nu");
    }
    u64 nm = static_cast<u64>(((n % static_cast<i64>(m)) + static_cast<i64>(m)) % static_cast<i64>(m));
    int dim = q.dim();
    const auto& g = q.gram();
    std::vector<u64> x(dim, 0);
    u64 count = 0;
    while (true) {
        u128 s = 0;
        for (int i = 0; i < dim; ++i) {
            s += (u128)(static_cast<u64>(g[i][i] / 2 % static_cast<i64>(m) + static_cast<i64>(m)) % m) * (x[i] * x[i] % m);
            for (int j = i + 1; j < dim; ++j)
                s += (u128)(static_cast<u64>((g[i][j] % static_cast<i64>(m) + static_cast<i64>(m)) % static_cast<i64>(m))) *
                     (x[i] * x[j] % m);
        }
        if (s % m == nm) ++count;
        int i = 0;
        while (i < dim) {
            if (++x[i] < m) break;
            x[i] = 0;
            ++i;
        }
        if (i == dim) break;
    }
    return count;
}

namespace {

// Direct diagonal ternary count via a z-residue table: O(p^nu + p^{2 nu}).
u64 direct_diag_count(const std::vector<i64>& a, u64 n, u64 p, int nu) {
    if (nu == 0) return 1;
    u64 m = upow(p, nu);
    if (m > (1u << 14)) throw std::runtime_error("direct_diag_count: modulus too large");
    auto amod = [&](i64 v) { return static_cast<u64>(((v % static_cast<i64>(m)) + static_cast<i64>(m)) % static_cast<i64>(m)); };
    u64 a1 = amod(a[0]), a2 = amod(a[1]), a3 = amod(a[2]);
    std::vector<u64> cnt3(m, 0);
    for (u64 z = 0; z < m; ++z) ++cnt3[a3 * (z * z % m) % m];
    u64 count = 0;
    for (u64 x = 0; x < m; ++x) {
        u64 t1 = a1 * (x * x % m) % m;
        for (u64 y = 0; y < m; ++y) {
            u64 t = (t1 + a2 * (y * y % m)) % m;
            count += cnt3[(n % m + m - t) % m];
        }
    }
    return count;
}

u64 imprimitive_count(const std::vector<i64>& a, u64 n, u64 p, int nu);

// Primitive solutions (some coordinate a unit) mod p^nu, nu <= 2L+1 range.
u64 primitive_count_direct(const std::vector<i64>& a, u64 n, u64 p, int nu) {
    return direct_diag_count(a, n, p, nu) - imprimitive_count(a, n, p, nu);
}

u64 imprimitive_count(const std::vector<i64>& a, u64 n, u64 p, int nu) {
    if (nu == 0) return 0;  // no non-unit constraint at level 0
    if (nu == 1) return (n % p == 0) ? 1 : 0;  // only the zero vector
    if (n % (p * p) != 0) return 0;
    return p * p * p * local_count_diagonal(a, static_cast<i64>(n / (p * p)), p, nu - 2);
}

}  // namespace

namespace {

int stabilization_level(const std::vector<i64>& coeffs, u64 p) {
    int L = 0;
    for (i64 c : coeffs) {
        u64 ac = static_cast<u64>(c < 0 ? -c : c);
        L = std::max(L, ord_p(2 * ac, p));
    }
    return 2 * L + 1;
}

void validate_diag(const std::vector<i64>& coeffs) {
    if (coeffs.size() != 3) throw std::domain_error("local count: ternary only");
    for (i64 c : coeffs)
        if (c == 0) throw std::domain_error("local count: nonzero coefficients required");
}

}  // namespace

u64 local_count_diagonal(const std::vector<i64>& coeffs, i64 n, u64 p, int nu) {
    validate_diag(coeffs);
    if (nu == 0) return 1;
    u64 m = upow(p, nu);
    u64 nm = static_cast<u64>(((n % static_cast<i64>(m)) + static_cast<i64>(m)) % static_cast<i64>(m));
    int k0 = stabilization_level(coeffs, p);
    if (nu <= k0) return direct_diag_count(coeffs, nm, p, nu);
    // Primitive layer stabilizes at k0: each level above multiplies by p^2.
    u64 pk0 = upow(p, k0);
    u64 prim = primitive_count_direct(coeffs, nm % pk0, p, k0);
    u64 scaled = prim;
    for (int i = 0; i < nu - k0; ++i) {
        u128 next = (u128)scaled * p * p;
        if (next > ~0ull) throw std::overflow_error("local_count_diagonal: count overflow");
        scaled = static_cast<u64>(next);
    }
    return scaled + imprimitive_count(coeffs, nm, p, nu);
}

namespace {

// n reduced mod p^nu; when p^nu exceeds the integer range the (nonnegative)
// input is already its own residue.
u64 reduce_mod_power(i64 n, u64 p, int nu) {
    u128 m = 1;
    for (int i = 0; i < nu; ++i) {
        m *= p;
        if (m > ((u128)1 << 62)) {
            if (n < 0) throw std::domain_error("local count: negative n at an unreduced big power");
            return static_cast<u64>(n);
        }
    }
    i64 mm = static_cast<i64>(m);
    return static_cast<u64>(((n % mm) + mm) % mm);
}

}  // namespace

Rational local_density_diagonal(const std::vector<i64>& coeffs, i64 n, u64 p, int nu) {
    validate_diag(coeffs);
    if (nu == 0) return Rational(1);
    int k0 = stabilization_level(coeffs, p);
    u64 nm = reduce_mod_power(n, p, nu);
    if (nu <= k0) {
        i128_t denom = 1;
        for (int i = 0; i < 2 * nu; ++i) denom *= static_cast<i128_t>(p);
        return Rational(static_cast<i128_t>(direct_diag_count(coeffs, nm, p, nu)), denom);
    }
    i128_t denom_k0 = 1;
    for (int i = 0; i < 2 * k0; ++i) denom_k0 *= static_cast<i128_t>(p);
    u64 pk0 = upow(p, k0);
    Rational prim(static_cast<i128_t>(primitive_count_direct(coeffs, nm % pk0, p, k0)), denom_k0);
    if (nm % (p * p) != 0) return prim;
    Rational deeper = local_density_diagonal(coeffs, static_cast<i64>(nm / (p * p)), p, nu - 2);
    return prim + deeper / Rational(static_cast<i128_t>(p), 1);
}

LocalDensity local_density(const QuadraticForm& q, u64 n, u64 p) {
    if (q.dim() != 3) throw std::domain_error("local_density: ternary forms only");
    if (n == 0) throw std::domain_error("local_density: n >= 1 required");
    u64 delta = static_cast<u64>(q.det());
    int nu0 = 1 + 2 * (ord_p(2 * n * delta, p) + 1);
    LocalDensity out;
    out.p = p;
    out.nu_used = nu0;
    if (q.is_diagonal()) {
        const auto& coeffs = q.diagonal_coeffs();
        out.density = local_density_diagonal(coeffs, static_cast<i64>(n), p, nu0);
        Rational next = local_density_diagonal(coeffs, static_cast<i64>(n), p, nu0 + 1);
        out.stabilized = (out.density == next);
    } else {
        u64 c0 = count_solutions_mod(q, static_cast<i64>(n), p, nu0);
        u64 c1 = count_solutions_mod(q, static_cast<i64>(n), p, nu0 + 1);
        i128_t denom = 1;
        for (int i = 0; i < 2 * nu0; ++i) denom *= static_cast<i128_t>(p);
        out.density = Rational(static_cast<i128_t>(c0), denom);
        out.stabilized = ((u128)c0 * p * p == (u128)c1);
    }
    // Materialize the count when it fits.
    u128 denom = 1;
    bool fits = true;
    for (int i = 0; i < 2 * nu0 && fits; ++i) {
        denom *= p;
        if (denom > (u128)1 << 100) fits = false;
    }
    if (fits && out.density.num() >= 0) {
        u128 cnt = (u128)static_cast<unsigned __int128>(out.density.num()) * denom /
                   static_cast<unsigned __int128>(out.density.den());
        if (cnt <= ~0ull) {
            out.count = static_cast<u64>(cnt);
        } else {
            fits = false;
        }
    }
    out.count_exact = fits;
    if (!fits) out.count = 0;
    return out;
}

i64 Polynomial::evaluate(const std::vector<i64>& x) const {
    i128 s = 0;
    for (auto& [c, exps] : monomials) {
        i128 term = c;
        for (int j = 0; j < dim; ++j)
            for (int e = 0; e < exps[j]; ++e) term *= x[j];
        s += term;
    }
    return static_cast<i64>(s);
}

u64 Polynomial::evaluate_mod(const std::vector<u64>& x, u64 m) const {
    u128 s = 0;
    for (auto& [c, exps] : monomials) {
        u64 term = static_cast<u64>(((c % static_cast<i64>(m)) + static_cast<i64>(m)) % static_cast<i64>(m));
        for (int j = 0; j < dim; ++j)
            for (int e = 0; e < exps[j]; ++e) term = mul_mod(term, x[j] % m, m);
        s += term;
    }
    return static_cast<u64>(s % m);
}

Polynomial Polynomial::partial(int j) const {
    Polynomial d;
    d.dim = dim;
    for (auto& [c, exps] : monomials) {
        if (exps[j] == 0) continue;
        auto e2 = exps;
        e2[j] -= 1;
        d.monomials.emplace_back(c * exps[j], e2);
    }
    return d;
}

u64 hensel_count(const Polynomial& f, u64 p, int k, int m,
                 const std::vector<std::vector<i64>>& base_solutions) {
    if (k < 1 || m < 0) throw std::domain_error("hensel_count: k >= 1, m >= 0 required");
    u64 pk = upow(p, k);
    int l_max = (k + 1) / 2;  // largest admissible l
    std::vector<Polynomial> partials;
    for (int j = 0; j < f.dim; ++j) partials.push_back(f.partial(j));
    for (size_t idx = 0; idx < base_solutions.size(); ++idx) {
        const auto& alpha = base_solutions[idx];
        if (static_cast<int>(alpha.size()) != f.dim)
            throw std::domain_error("hensel_count: solution dimension mismatch");
        std::vector<u64> am(f.dim);
        for (int j = 0; j < f.dim; ++j)
            am[j] = static_cast<u64>(((alpha[j] % static_cast<i64>(pk)) + static_cast<i64>(pk)) %
                                     static_cast<i64>(pk));
        if (f.evaluate_mod(am, pk) != 0)
            throw std::domain_error("hensel_count: base solution #" + std::to_string(idx) +
                                    " does not solve f = 0 mod p^k");
        bool ok = false;
        for (int j = 0; j < f.dim && !ok; ++j) {
            u64 v = partials[j].evaluate_mod(am, pk);
            int val = k;
            if (v != 0) {
                val = 0;
                while (v % p == 0) v /= p, ++val;
            }
            if (val < l_max) ok = true;  // derivative nonzero mod p^l for some l <= (k+1)/2
        }
        if (!ok)
            throw std::domain_error("hensel_count: derivative condition fails at base solution #" +
                                    std::to_string(idx));
    }
    u64 lifts = upow(p, m * (f.dim - 1));
    return static_cast<u64>(base_solutions.size()) * lifts;
}

i64 fundamental_discriminant(i64 D) {
    if (D == 0) throw std::domain_error("fundamental_discriminant: D != 0 required");
    u64 aD = static_cast<u64>(D < 0 ? -D : D);
    i64 d = D < 0 ? -1 : 1;
    for (auto& [p, e] : factorize(aD).factors)
        if (e & 1) d *= static_cast<i64>(p);
    return (((d % 4) + 4) % 4 == 1) ? d : 4 * d;
}

double dirichlet_L1(i64 D0) {
    if (D0 == 1) throw std::domain_error("dirichlet_L1: principal character has no finite L(1)");
    if (D0 != fundamental_discriminant(D0))
        throw std::domain_error("dirichlet_L1: fundamental discriminant required");
    u64 f = static_cast<u64>(D0 < 0 ? -D0 : D0);
    std::complex<double> tau{0, 0};
    for (u64 a = 1; a < f; ++a) {
        int chi = kronecker(D0, static_cast<i64>(a));
        if (chi == 0) continue;
        double th = 2.0 * kPi * static_cast<double>(a) / static_cast<double>(f);
        tau += static_cast<double>(chi) * std::complex<double>{std::cos(th), std::sin(th)};
    }
    if (D0 < 0) {
        // odd character: L(1,chi) = (i pi tau / f^2) sum chi(a) a
        double s = 0;
        for (u64 a = 1; a < f; ++a) s += static_cast<double>(kronecker(D0, static_cast<i64>(a))) * static_cast<double>(a);
        std::complex<double> L = std::complex<double>{0, 1} * kPi * tau /
                                 (static_cast<double>(f) * static_cast<double>(f)) * s;
        return L.real();
    }
    // even character: L(1,chi) = -(tau/f) sum chi(a) log|1 - e(a/f)|
    double s = 0;
    for (u64 a = 1; a < f; ++a) {
        int chi = kronecker(D0, static_cast<i64>(a));
        if (chi == 0) continue;
        s += static_cast<double>(chi) * std::log(2.0 * std::sin(kPi * static_cast<double>(a) / static_cast<double>(f)));
    }
    std::complex<double> L = -tau / static_cast<double>(f) * s;
    return L.real();
}

double siegel_main_term(const QuadraticForm& q, u64 n, u64 p_cutoff) {
    if (q.dim() != 3) throw std::domain_error("siegel_main_term: ternary forms only");
    if (n == 0) throw std::domain_error("siegel_main_term: n >= 1 required");
    u64 delta = static_cast<u64>(q.det());
    u64 N = q.level();

    std::vector<u64> bad{2};
    for (u64 v : {n, delta, N})
        for (auto& [p, e] : factorize(v).factors) bad.push_back(p);
    std::sort(bad.begin(), bad.end());
    bad.erase(std::unique(bad.begin(), bad.end()), bad.end());

    double density_prod = 1.0;
    for (u64 p : bad) density_prod *= local_density(q, n, p).density.to_double();

    i64 D = -2 * static_cast<i64>(n) * static_cast<i64>(delta);
    double good = 1.0;
    if (p_cutoff == 0) {
        i64 D0 = fundamental_discriminant(D);
        double L1 = dirichlet_L1(D0);
        good = L1 * 6.0 / (kPi * kPi);
        for (u64 p : bad) {
            double pd = static_cast<double>(p);
            good *= (1.0 - static_cast<double>(kronecker(D0, static_cast<i64>(p))) / pd);
            good /= (1.0 - 1.0 / (pd * pd));
        }
    } else {
        for (u64 p : primes_up_to(p_cutoff)) {
            if (std::find(bad.begin(), bad.end(), p) != bad.end()) continue;
            good *= 1.0 + static_cast<double>(kronecker(D, static_cast<i64>(p))) / static_cast<double>(p);
        }
    }
    return 2.0 * kPi / std::sqrt(static_cast<double>(delta) / 8.0) *
           std::sqrt(static_cast<double>(n)) * density_prod * good;
}

std::vector<u64> two_squares_count_mod_p(u64 p) {
    if (p < 3 || !is_prime(p)) throw std::domain_error("two_squares_count_mod_p: odd prime required");
    std::vector<u64> sq(p, 0);
    for (u64 x = 0; x < p; ++x) ++sq[x * x % p];
    std::vector<u64> counts(p, 0);
    for (u64 r = 0; r < p; ++r) {
        if (sq[r] == 0) continue;
        for (u64 t = 0; t < p; ++t) counts[(r + t) % p] += sq[r] * sq[t];
    }
    return counts;
}

}  // namespace halfint::forms
