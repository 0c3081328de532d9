#pragma once

// Formal coefficient calculus of the t-Shimura lift: the L-factor Dirichlet
// convolution producing C_t(n) from c(t n^2), Hecke eigenvalue systems with
// their p-power recursion, the Moebius-inverted reconstruction of c(t w^2),
// and the Deligne-bound consequence. All coefficient arithmetic is exact
// rational; characters entering these identities are real.

#include <map>
#include <vector>

#include "halfint/arith.hpp"
#include "halfint/characters.hpp"
#include "halfint/rational.hpp"

namespace halfint::shimura {

struct CoefficientSeries {
    std::map<u64, Rational> values;  // absent index means 0
    u64 support_bound = 0;

    Rational at(u64 n) const {
        auto it = values.find(n);
        return it == values.end() ? Rational(0) : it->second;
    }
};

struct HeckeSystem {
    int weight_param = 3;  // odd k >= 3; the lift has integral weight k - 1
    DirichletCharacter character;  // real; chi^2 is principal
    std::map<u64, Rational> prime_eigenvalues;  // lambda_p for p not dividing N
};

// C_t(n) = sum_{d | n} (chi_{4 eps t} chi)(d) d^{(k-3)/2} c(t (n/d)^2),
// eps = (-1)^{(k-1)/2}. Input series must provide c(t m^2) for all m <= n_max.
CoefficientSeries lift_coefficients(const CoefficientSeries& c, u64 t, int k,
                                    const DirichletCharacter& chi, u64 n_max);

// Multiplicative extension of lambda via
// lambda_{p^{j+1}} = lambda_p lambda_{p^j} - chi^2(p) p^{k-2} lambda_{p^{j-1}}.
Rational extend_eigenvalues(const HeckeSystem& h, u64 n);

// c(t w^2) = c(t) sum_{d | w} mu(d) (chi_{4 eps t} chi)(d) d^{(k-3)/2} lambda_{w/d},
// for w <= w_max coprime to the level.
CoefficientSeries reconstruct(const Rational& c_t, const HeckeSystem& h, u64 t, int k,
                              const DirichletCharacter& chi, u64 w_max);

struct DeligneReport {
    bool all_hold = true;
    u64 checked = 0;
    u64 worst_w = 1;
    double worst_ratio = 0.0;  // |c(t w^2)| / (|c(t)| w^{k/2-1} tau(w)^2)
};

// Checks |c(t w^2)| <= |c(t)| w^{k/2-1} tau(w)^2 for w <= w_max, by exact
// squared comparison. Eigenvalues must lie in the Deligne window
// |lambda_p| <= 2 p^{(k-2)/2}.
DeligneReport deligne_bound_check(const Rational& c_t, const HeckeSystem& h, u64 t, int k,
                                  const DirichletCharacter& chi, u64 w_max);

// chi_{4 eps t} as used by the lift: quadratic_character(D = 4 eps t).
DirichletCharacter lift_twist(u64 t, int k);

}  // namespace halfint::shimura
