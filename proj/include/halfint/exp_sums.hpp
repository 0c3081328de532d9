#pragma once

// Twisted exponential sums: the theta-multiplier Kloosterman sum
// K_chi^k(m,n;c), Salie sums S_chi(m,n;q), the counting sums f_r(2s,chi),
// the even/odd splitting identity over c = r*q, the explicit-formula prober,
// partial sums K_Q(x), the double sums F_{r,s}^{+-}(p), and Weil-type bound
// checks including the violation search over prime-power moduli.

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "halfint/arith.hpp"
#include "halfint/characters.hpp"

namespace halfint::sums {

using cx = std::complex<double>;

// Value of a twisted exponential sum together with the bound it is checked
// against. holds <=> |value| <= bound * (1 + 1e-9).
struct ExpSumResult {
    cx value{0.0, 0.0};
    u64 modulus = 0;
    double bound = 0.0;
    double ratio = 0.0;
    bool holds = true;
};

struct SplitCheck {
    cx lhs{0.0, 0.0};
    cx rhs{0.0, 0.0};
    u64 modulus = 0;
    double absolute_gap = 0.0;
    bool pass = false;  // gap <= modulus * 1e-9
};

// verify_split result: the literal identity with exponent k - q + 1, plus a
// diagnostic column for the exponent-k variant.
struct SplitDiag : SplitCheck {
    cx rhs_exponent_k{0.0, 0.0};
    double gap_exponent_k = 0.0;
    bool verdict_changes = false;
};

// K_chi^k(m,n;c) = sum over units d mod c of
//   eps_d^{-k} chi(d) (c|d) e((m d + n dbar)/c),   4 | c.
cx kloosterman_twisted(i64 m, i64 n, u64 c, i64 k, const DirichletCharacter& chi);

// S_chi(m,n;q) = sum over units d mod q of chi(d) (d|q) e((m d + n dbar)/q), q odd.
cx salie_twisted(i64 m, i64 n, u64 q, const DirichletCharacter& chi);

// f_r(2s, chi) = sum over units d mod r with d + dbar = 2s (mod r) of (r|d) chi(d).
cx f_r(i64 two_s, u64 r, const DirichletCharacter& chi);

// Splitting identity over c = r*q with r a power of two (4 | r) and q odd:
//   K_chi^k(n,n;c) = K_{chi_r}^{k-q+1}(n qbar, n qbar; r) * S_{chi_q}(n rbar, n rbar; q).
SplitDiag verify_split(i64 n, u64 r, u64 q, i64 k, const DirichletCharacter& chi);

// Explicit-formula prober for c = q*r, gcd(q, 2nN) = 1, N | r | (2nN)^inf.
// Evaluates the right-hand side literally and in three diagnostic variants
// (eps_s^{-k} instead of eps_s^{-2k}; bracket halved). Never asserts.
struct ExplicitFormulaProbe {
    SplitCheck literal;           // eps_s^{-2k}, bracket as printed
    double gap_eps_k = 0.0;       // eps_s^{-k}, bracket as printed
    double gap_eps_2k_half = 0.0; // eps_s^{-2k}, bracket halved
    double gap_eps_k_half = 0.0;  // eps_s^{-k}, bracket halved
    std::string best_variant;     // smallest gap among the four
    double best_gap = 0.0;
    u64 skipped_factor_pairs = 0; // ab = q with gcd(a,b) > 1 (undefined inverses)
};

ExplicitFormulaProbe verify_explicit_formula(u64 n, u64 q, u64 r, i64 k,
                                             const DirichletCharacter& chi, u64 N);

// Weil-type bound: |K_chi^k(n,n;c)| <= tau(c) (n,c)^{1/2} c^{1/2} for real chi,
// with the extra factor (c_chi rad(c_chi))^{1/4} otherwise. (0, c) = c.
ExpSumResult weil_bound_check(i64 n, u64 c, i64 k, const DirichletCharacter& chi);

// One hit of the violation search: a twisted Salie sum exceeding the
// untwisted-shape bound at a prime-power modulus.
struct ViolationInstance {
    u64 p = 0;
    int alpha = 0;
    u64 modulus = 0;
    u64 n = 0;
    u64 char_index = 0;   // index in the cyclic character group mod p^alpha
    std::string chi_literal;
    u64 conductor = 0;
    int order = 0;
    cx value{0.0, 0.0};
    double plain_bound = 0.0;      // tau(c) (n,c)^{1/2} c^{1/2}
    double augmented_bound = 0.0;  // plain * (c_chi rad c_chi)^{1/4}
    bool satisfies_augmented = false;
};

// Scan S_chi(n,n;p^alpha) over odd p <= p_max, alpha <= alpha_max, n <= n_max
// and all characters mod p^alpha. Returns every non-quadratic instance that
// violates the untwisted-shape bound; each is re-checked against the
// augmented bound in-scan. Quadratic characters are asserted non-violating.
// Moduli above modulus_budget are skipped and reported in skipped.
struct ViolationScan {
    std::vector<ViolationInstance> violations;
    std::vector<u64> skipped_moduli;
    u64 instances_checked = 0;
    bool quadratic_all_hold = true;
};

ViolationScan weil_violation_search(u64 p_max, int alpha_max, u64 n_max, int jobs = 1,
                                    u64 modulus_budget = (1ull << 24));

// Direct reference evaluation of S_chi for cross checks (no tables, no
// stationary phase); used by tests and small moduli.
cx salie_direct(i64 m, i64 n, u64 q, const DirichletCharacter& chi);

// Evaluate S_{chi_h}(n,n;p^alpha) for all h = 0..phi-1 at once via the
// stationary-phase reduction (p odd, alpha >= 2). Exposed for testing.
std::vector<cx> salie_all_characters_prime_power(u64 p, int alpha, u64 n);

// K_Q(x) = sum over c <= x, Q | c of c^{-1/2} K_chi^k(m,n;c) e(2 nu n / c).
cx kq_partial_sum(double x, u64 Q, i64 m, i64 n, double nu, i64 k,
                  const DirichletCharacter& chi);

// F_{r,s}^{+-}(p): double sum over coprime pairs (a,b) with y < a b r <= 2y,
// p | ab, (ab, 2nN) = 1 of (sign * n r | ab) e(2n(inv(ar,b)/b - inv(br,a)/a
// + s inv(ab,r)/r + nu/(abr))). Optional dyadic windows A < a <= 2A, B < b <= 2B.
cx f_rs_sum(double y, u64 r, i64 s, u64 p, u64 n, u64 N, double nu, int sign,
            std::optional<double> A = std::nullopt, std::optional<double> B = std::nullopt);

// Reusable tables for bulk evaluation of K_chi^k(n,n;c) at fixed c.
class KloostermanEvaluator {
  public:
    explicit KloostermanEvaluator(u64 c);
    // Prepare per-character, per-k coefficient codes; chi modulus must divide c.
    void set_character(const DirichletCharacter& chi, i64 k);
    cx diagonal(i64 n) const;       // K_chi^k(n,n;c)
    cx general(i64 m, i64 n) const; // K_chi^k(m,n;c)
    u64 modulus() const { return c_; }

  private:
    u64 c_;
    std::vector<u64> units_;
    std::vector<u64> inv_;     // dbar per unit
    std::vector<u64> sumd_;    // (d + dbar) mod c per unit
    std::vector<int> base_;    // eps exponent/kron/chi-free part: kron(c,d), eps_idx
    std::vector<int> eps_idx_; // 0 or 1
    std::vector<cx> root_;     // e(j/c)
    std::vector<int> code_;    // per unit: 0 => skip, else rotation 1,i,-1,-i as 1..4
    std::vector<cx> coeff_;    // per unit: chi(d) eps_d^{-k} kron(c,d) (general characters)
    bool real_character_ = true;
};

}  // namespace halfint::sums
