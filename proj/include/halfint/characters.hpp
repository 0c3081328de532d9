#pragma once

// Dirichlet characters mod N, stored through generator images on the local
// unit groups (Z/p^a)^*. This makes conductor, localization and products
// exact and cheap. Values are exact roots of unity; real characters have a
// fast integer evaluation path through Kronecker symbols.

#include <atomic>
#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "halfint/arith.hpp"

namespace halfint {

// Exact root of unity e(num/den), or zero.
struct RootOfUnity {
    bool zero = false;
    long long num = 0;  // reduced, 0 <= num < den
    long long den = 1;

    static RootOfUnity make(long long n, long long d);
    static RootOfUnity make_zero() { return RootOfUnity{true, 0, 1}; }
    RootOfUnity operator*(const RootOfUnity& o) const;
    bool operator==(const RootOfUnity& o) const {
        return zero == o.zero && (zero || (num == o.num && den == o.den));
    }
    bool is_one() const { return !zero && num == 0; }
    bool is_real() const { return zero || num * 2 % den == 0; }
    std::complex<double> value() const;
    int real_int() const;  // -1, 0, 1; error if not real
};

class DirichletCharacter {
  public:
    // One local factor at p^a. For odd p and p^a in {2, 4} the unit group is
    // cyclic with generator g of order gord and the character is g^j -> e(h j / gord).
    // For p = 2, a >= 3 the group is <-1> x <5>; h in {0,1} is the image
    // exponent on -1 (value (-1)^h) and h2 indexes the image of 5 in the
    // cyclic factor of order 2^(a-2).
    struct Component {
        u64 p = 0;
        int a = 0;
        u64 pa = 1;
        u64 g = 0;     // generator (odd p / small two-power case)
        u64 gord = 1;  // its order
        u64 h = 0;
        u64 h2 = 0;
        u64 h2ord = 1;  // order of the <5> factor when p = 2, a >= 3
    };

    DirichletCharacter() : modulus_(1) {}

    static DirichletCharacter principal(u64 modulus);
    // Character d -> kronecker(D, d) seen modulo `modulus`, built from the
    // generator images of the Kronecker symbol. When the conductor of the
    // symbol divides the modulus this is the literal restriction.
    static DirichletCharacter quadratic(i64 D, u64 modulus);
    static DirichletCharacter from_indices(u64 modulus, const std::vector<u64>& idx);
    static std::vector<DirichletCharacter> all_mod(u64 modulus);
    static std::vector<DirichletCharacter> real_mod(u64 modulus);

    // Literal syntax used in CLI configs:
    //   "principal:mod=12"
    //   "quadratic:D=-4,mod=4"
    //   "explicit:mod=40,idx=1,0,2"   (indices in canonical component order;
    //                                  p=2,a>=3 contributes two indices h,h2)
    static DirichletCharacter parse(const std::string& literal);
    std::string literal() const;

    u64 modulus() const { return modulus_; }
    u64 conductor() const;
    int order() const;
    bool is_principal() const { return order() == 1; }
    bool is_real() const { return order() <= 2; }  // principal or quadratic

    RootOfUnity eval_exact(i64 d) const;
    std::complex<double> operator()(i64 d) const;
    int eval_int(i64 d) const;  // real characters only

    // Induce to a multiple of the modulus.
    DirichletCharacter extend(u64 new_modulus) const;
    // Pointwise product; result modulus is lcm of the inputs'.
    DirichletCharacter times(const DirichletCharacter& o) const;

    // chi = chi_r * chi_q on units mod r*q; requires modulus | r*q and
    // gcd(r, q) = 1. Throws on an unsplittable decomposition.
    std::pair<DirichletCharacter, DirichletCharacter> localize(u64 r, u64 q) const;

    const std::vector<Component>& components() const { return comps_; }
    std::vector<u64> indices() const;

    DirichletCharacter(const DirichletCharacter& o)
        : modulus_(o.modulus_), comps_(o.comps_), conductor_(o.conductor_.load()) {}
    DirichletCharacter& operator=(const DirichletCharacter& o) {
        modulus_ = o.modulus_;
        comps_ = o.comps_;
        conductor_.store(o.conductor_.load());
        return *this;
    }

  private:
    explicit DirichletCharacter(u64 modulus);
    void compute_conductor() const;

    u64 modulus_;
    std::vector<Component> comps_;
    // Lazily computed, atomically published (characters are shared read-only
    // across scan workers).
    mutable std::atomic<u64> conductor_ = 0;
};

// Smallest primitive root mod p that also generates (Z/p^a)^* for all a.
u64 primitive_root_mod_p_powers(u64 p);

}  // namespace halfint
