#pragma once

// Minimal unsigned big integers and big rationals, enough for exact
// evaluation and comparison of products like (1 - 1/k_1)...(1 - 1/k_t)
// whose numerators run to a few hundred decimal digits.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace halfint {

class BigUint {
  public:
    BigUint() {}
    BigUint(std::uint64_t v) {
        while (v > 0) {
            limbs_.push_back(static_cast<std::uint32_t>(v & 0xffffffffu));
            v >>= 32;
        }
    }

    bool is_zero() const { return limbs_.empty(); }
    bool is_odd() const { return !limbs_.empty() && (limbs_[0] & 1); }

    static int cmp(const BigUint& a, const BigUint& b) {
        if (a.limbs_.size() != b.limbs_.size())
            return a.limbs_.size() < b.limbs_.size() ? -1 : 1;
        for (size_t i = a.limbs_.size(); i-- > 0;) {
            if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] < b.limbs_[i] ? -1 : 1;
        }
        return 0;
    }
    bool operator<(const BigUint& o) const { return cmp(*this, o) < 0; }
    bool operator==(const BigUint& o) const { return cmp(*this, o) == 0; }

    BigUint operator*(const BigUint& o) const {
        if (is_zero() || o.is_zero()) return BigUint();
        std::vector<std::uint64_t> acc(limbs_.size() + o.limbs_.size(), 0);
        for (size_t i = 0; i < limbs_.size(); ++i) {
            std::uint64_t carry = 0;
            for (size_t j = 0; j < o.limbs_.size(); ++j) {
                std::uint64_t cur = acc[i + j] + static_cast<std::uint64_t>(limbs_[i]) * o.limbs_[j] + carry;
                acc[i + j] = cur & 0xffffffffu;
                carry = cur >> 32;
            }
            size_t k = i + o.limbs_.size();
            while (carry > 0) {
                std::uint64_t cur = acc[k] + carry;
                acc[k] = cur & 0xffffffffu;
                carry = cur >> 32;
                ++k;
            }
        }
        BigUint r;
        r.limbs_.assign(acc.begin(), acc.end());
        r.trim();
        return r;
    }

    BigUint operator+(const BigUint& o) const {
        BigUint r;
        size_t n = std::max(limbs_.size(), o.limbs_.size());
        r.limbs_.resize(n, 0);
        std::uint64_t carry = 0;
        for (size_t i = 0; i < n; ++i) {
            std::uint64_t cur = carry;
            if (i < limbs_.size()) cur += limbs_[i];
            if (i < o.limbs_.size()) cur += o.limbs_[i];
            r.limbs_[i] = static_cast<std::uint32_t>(cur & 0xffffffffu);
            carry = cur >> 32;
        }
        if (carry) r.limbs_.push_back(static_cast<std::uint32_t>(carry));
        return r;
    }

    // Subtraction; requires *this >= o.
    BigUint operator-(const BigUint& o) const {
        if (cmp(*this, o) < 0) throw std::domain_error("BigUint: negative subtraction");
        BigUint r = *this;
        std::int64_t borrow = 0;
        for (size_t i = 0; i < r.limbs_.size(); ++i) {
            std::int64_t cur = static_cast<std::int64_t>(r.limbs_[i]) - borrow -
                               (i < o.limbs_.size() ? static_cast<std::int64_t>(o.limbs_[i]) : 0);
            borrow = 0;
            if (cur < 0) {
                cur += 1ll << 32;
                borrow = 1;
            }
            r.limbs_[i] = static_cast<std::uint32_t>(cur);
        }
        r.trim();
        return r;
    }

    BigUint half() const {
        BigUint r = *this;
        std::uint32_t carry = 0;
        for (size_t i = r.limbs_.size(); i-- > 0;) {
            std::uint32_t cur = r.limbs_[i];
            r.limbs_[i] = (cur >> 1) | (carry << 31);
            carry = cur & 1;
        }
        r.trim();
        return r;
    }

    static BigUint pow(BigUint base, std::uint64_t e) {
        BigUint r(1);
        while (e > 0) {
            if (e & 1) r = r * base;
            base = base * base;
            e >>= 1;
        }
        return r;
    }

    static BigUint gcd(BigUint a, BigUint b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        int shift = 0;
        while (!a.is_odd() && !b.is_odd()) {
            a = a.half();
            b = b.half();
            ++shift;
        }
        while (!a.is_odd()) a = a.half();
        while (!b.is_zero()) {
            while (!b.is_odd()) b = b.half();
            if (cmp(a, b) > 0) std::swap(a, b);
            b = b - a;
        }
        for (int i = 0; i < shift; ++i) a = a * BigUint(2);
        return a;
    }

    // Division by a small value, returns remainder.
    std::uint32_t divmod_small(std::uint32_t d) {
        std::uint64_t rem = 0;
        for (size_t i = limbs_.size(); i-- > 0;) {
            std::uint64_t cur = (rem << 32) | limbs_[i];
            limbs_[i] = static_cast<std::uint32_t>(cur / d);
            rem = cur % d;
        }
        trim();
        return static_cast<std::uint32_t>(rem);
    }

    std::string str() const {
        if (is_zero()) return "0";
        BigUint t = *this;
        std::string s;
        while (!t.is_zero()) {
            std::uint32_t r = t.divmod_small(1000000000u);
            std::string chunk = std::to_string(r);
            if (!t.is_zero()) chunk = std::string(9 - chunk.size(), '0') + chunk;
            s = chunk + s;
        }
        return s;
    }

    double to_double() const {
        double r = 0;
        for (size_t i = limbs_.size(); i-- > 0;) r = r * 4294967296.0 + limbs_[i];
        return r;
    }

  private:
    void trim() {
        while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    }
    std::vector<std::uint32_t> limbs_;  // little-endian base 2^32
};

// Nonnegative rational on BigUint; sufficient for the gamma products.
class BigRat {
  public:
    BigRat() : num_(0), den_(1) {}
    BigRat(std::uint64_t n, std::uint64_t d = 1) : num_(n), den_(d) {
        if (d == 0) throw std::domain_error("BigRat: zero denominator");
    }
    BigRat(BigUint n, BigUint d) : num_(std::move(n)), den_(std::move(d)) {
        if (den_.is_zero()) throw std::domain_error("BigRat: zero denominator");
    }

    const BigUint& num() const { return num_; }
    const BigUint& den() const { return den_; }

    BigRat operator*(const BigRat& o) const { return BigRat(num_ * o.num_, den_ * o.den_); }

    static BigRat pow(const BigRat& base, std::uint64_t e) {
        return BigRat(BigUint::pow(base.num_, e), BigUint::pow(base.den_, e));
    }

    // Exact comparison by cross multiplication.
    static int cmp(const BigRat& a, const BigRat& b) {
        return BigUint::cmp(a.num_ * b.den_, b.num_ * a.den_);
    }
    bool operator<(const BigRat& o) const { return cmp(*this, o) < 0; }
    bool operator==(const BigRat& o) const { return cmp(*this, o) == 0; }

    BigRat reduced() const {
        BigUint g = BigUint::gcd(num_, den_);
        if (g == BigUint(1) || g.is_zero()) return *this;
        BigUint n = num_, d = den_;
        // Repeated small reduction is unnecessary: divide via gcd quotients.
        return BigRat(divide_exact(n, g), divide_exact(d, g));
    }

    std::string str() const {
        BigRat r = reduced();
        if (r.den_ == BigUint(1)) return r.num_.str();
        return r.num_.str() + "/" + r.den_.str();
    }

    double to_double() const {
        // Scale so both parts stay in double range.
        return num_.to_double() / den_.to_double();
    }

  private:
    // Binary long division for the exact quotient a / b (b | a).
    static BigUint divide_exact(const BigUint& a, const BigUint& b) {
        if (b == BigUint(1)) return a;
        BigUint rem = a, q(0);
        std::vector<BigUint> shifted{b};
        std::vector<BigUint> powers{BigUint(1)};
        while (BigUint::cmp(shifted.back() * BigUint(2), rem) <= 0) {
            shifted.push_back(shifted.back() * BigUint(2));
            powers.push_back(powers.back() * BigUint(2));
        }
        for (size_t i = shifted.size(); i-- > 0;) {
            if (BigUint::cmp(shifted[i], rem) <= 0) {
                rem = rem - shifted[i];
                q = q + powers[i];
            }
        }
        return q;
    }

    BigUint num_;
    BigUint den_;
};

}  // namespace halfint
