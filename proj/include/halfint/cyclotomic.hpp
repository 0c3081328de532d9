#pragma once

// Exact arithmetic for sums of roots of unity: elements of Z[zeta_c]
// carried as integer coefficient vectors on the redundant power basis
// zeta_c^0 .. zeta_c^{c-1}. Addition and multiplication are exact; the zero
// test reduces modulo the c-th cyclotomic polynomial. Intended as the slow
// exact mode behind the floating identity checks, for c <= 256.

#include <vector>

#include "halfint/arith.hpp"
#include "halfint/characters.hpp"

namespace halfint::sums {

class CyclotomicSum {
  public:
    explicit CyclotomicSum(u64 c) : c_(c), a_(c, 0) {}

    u64 order() const { return c_; }
    const std::vector<long long>& coeffs() const { return a_; }

    void add_root(u64 index, long long weight) { a_[index % c_] += weight; }

    CyclotomicSum operator+(const CyclotomicSum& o) const;
    CyclotomicSum operator-(const CyclotomicSum& o) const;
    CyclotomicSum operator*(const CyclotomicSum& o) const;  // convolution mod x^c - 1

    // Re-express in Z[zeta_C] for c | C.
    CyclotomicSum embed(u64 C) const;

    // True zero test: the residue mod Phi_c vanishes.
    bool is_zero() const;

    std::complex<double> value() const;

  private:
    u64 c_;
    std::vector<long long> a_;
};

// c-th cyclotomic polynomial, ascending coefficients.
std::vector<long long> cyclotomic_polynomial(u64 c);

// Exact twisted Kloosterman sum in Z[zeta_c]; real chi, 4 | c.
CyclotomicSum kloosterman_cyclotomic(i64 m, i64 n, u64 c, i64 k, const DirichletCharacter& chi);

// Exact Salie sum in Z[zeta_q]; real chi, q odd.
CyclotomicSum salie_cyclotomic(i64 m, i64 n, u64 q, const DirichletCharacter& chi);

// Splitting identity checked in exact integer arithmetic over Z[zeta_{rq}],
// for r*q <= 256 and real chi.
bool verify_split_exact(i64 n, u64 r, u64 q, i64 k, const DirichletCharacter& chi);

}  // namespace halfint::sums
