#pragma once

// Integral quadratic forms q(x) = (1/2) x^t A x with A symmetric and
// even-diagonal: representation counts by lattice enumeration, theta
// coefficients, level and determinant, p-adic local densities with Hensel
// stabilization, Siegel's main term, and the finite counting facts used by
// the ternary application.

#include <map>
#include <optional>
#include <vector>

#include "halfint/arith.hpp"
#include "halfint/characters.hpp"
#include "halfint/rational.hpp"

namespace halfint::forms {

class QuadraticForm {
  public:
    // Gram matrix: symmetric, even diagonal, positive definite.
    explicit QuadraticForm(std::vector<std::vector<i64>> gram);
    // q = a1 x1^2 + ... + ak xk^2, gram = diag(2 a1, ..., 2 ak).
    static QuadraticForm diagonal(const std::vector<i64>& coeffs);

    int dim() const { return dim_; }
    i64 det() const { return det_; }  // determinant of the Gram matrix
    u64 level() const { return level_; }
    const std::vector<std::vector<i64>>& gram() const { return gram_; }
    bool is_diagonal() const { return diagonal_; }
    const std::vector<i64>& diagonal_coeffs() const { return diag_; }

    i64 evaluate(const std::vector<i64>& x) const;  // q(x), exact

    // r(q, n): lattice points with q(x) = n. Positive definiteness required.
    u64 represent_count(u64 n) const;
    // r(q, 0..n_max) in one enumeration pass over the ball q(x) <= n_max.
    std::vector<u64> theta_coefficients(u64 n_max) const;

  private:
    std::vector<std::vector<i64>> gram_;
    int dim_;
    i64 det_;
    u64 level_;
    bool diagonal_;
    std::vector<i64> diag_;
};

// Exact count of x in (Z/p^nu)^dim with q(x) = n (mod p^nu) by full
// enumeration; budget p^(nu*dim) <= 10^9, resource error beyond.
u64 count_solutions_mod(const QuadraticForm& q, i64 n, u64 p, int nu,
                        u64 budget = 1000000000ull);

// Exact count for diagonal ternary forms via primitive/imprimitive recursion
// with Hensel stabilization of the primitive layer; handles exponents far
// beyond the naive budget. Throws on u64 overflow of the count itself.
u64 local_count_diagonal(const std::vector<i64>& coeffs, i64 n, u64 p, int nu);

// Same recursion carried out on densities, so the value stays exact even
// when the raw count at p^nu does not fit an integer type.
Rational local_density_diagonal(const std::vector<i64>& coeffs, i64 n, u64 p, int nu);

struct LocalDensity {
    u64 p = 0;
    int nu_used = 0;     // the stabilization exponent nu0
    u64 count = 0;       // solutions mod p^nu0 (0 with count_exact=false on overflow)
    bool count_exact = true;
    Rational density;    // count / p^{2 nu0}
    bool stabilized = false;  // densities at nu0 and nu0 + 1 agree
};

// p-adic density r_p(q, n) for ternary q, evaluated at
// nu0 = 1 + 2 (ord_p(2 n Delta) + 1) and rechecked at nu0 + 1.
LocalDensity local_density(const QuadraticForm& q, u64 n, u64 p);

// Integer polynomials in d variables for the Hensel counting routine.
struct Polynomial {
    int dim = 1;
    std::vector<std::pair<i64, std::vector<int>>> monomials;  // coeff, exponents

    i64 evaluate(const std::vector<i64>& x) const;
    u64 evaluate_mod(const std::vector<u64>& x, u64 m) const;
    Polynomial partial(int j) const;
};

// Count of solutions mod p^(k+m) predicted by Hensel lifting:
// p^{m(d-1)} per base solution. Each base solution must satisfy
// f(alpha) = 0 mod p^k and have some partial derivative nonzero mod p^l
// for an l <= (k+1)/2; a violating base solution is reported by index.
u64 hensel_count(const Polynomial& f, u64 p, int k, int m,
                 const std::vector<std::vector<i64>>& base_solutions);

// Fundamental discriminant attached to D (D nonzero, not a perfect square
// unless +1): the discriminant of Q(sqrt(D)).
i64 fundamental_discriminant(i64 D);

// L(1, chi_D0) for a fundamental discriminant D0 != 1, by the exact finite
// formulas (Gauss sum evaluated directly).
double dirichlet_L1(i64 D0);

// Siegel main term for ternary q:
//   r(gen q, n) = 2 pi / sqrt(Delta/8) * sqrt(n) * prod_p r_p(q, n),
// bad primes (p | 2 n Delta N) counted exactly, good primes folded through
// L(1, chi) with explicit correction factors. p_cutoff > 0 switches the good
// part to a truncated Euler product over p <= p_cutoff (cross-check mode).
double siegel_main_term(const QuadraticForm& q, u64 n, u64 p_cutoff = 0);

// Representations of each residue as x^2 + y^2 over Z/p (p odd prime):
// counts[a] for a = 0..p-1. Every nonzero a has exactly p - 1.
std::vector<u64> two_squares_count_mod_p(u64 p);

}  // namespace halfint::forms
