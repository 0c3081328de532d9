#pragma once

// Exact rational numbers on 128-bit integers. Overflow throws; the callers
// in this project stay far below the 127-bit limit.

#include <cstdint>
#include <stdexcept>
#include <string>

namespace halfint {

using i128_t = __int128;

class Rational {
  public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(i128_t n, i128_t d) : num_(n), den_(d) { normalize(); }

    i128_t num() const { return num_; }
    i128_t den() const { return den_; }

    Rational operator+(const Rational& o) const {
        return Rational(add_checked(mul_checked(num_, o.den_), mul_checked(o.num_, den_)),
                        mul_checked(den_, o.den_));
    }
    Rational operator-(const Rational& o) const {
        return Rational(sub_checked(mul_checked(num_, o.den_), mul_checked(o.num_, den_)),
                        mul_checked(den_, o.den_));
    }
    Rational operator*(const Rational& o) const {
        return Rational(mul_checked(num_, o.num_), mul_checked(den_, o.den_));
    }
    Rational operator/(const Rational& o) const {
        if (o.num_ == 0) throw std::domain_error("Rational: division by zero");
        return Rational(mul_checked(num_, o.den_), mul_checked(den_, o.num_));
    }
    Rational operator-() const { return Rational(-num_, den_); }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const {
        return mul_checked(num_, o.den_) < mul_checked(o.num_, den_);
    }
    bool operator<=(const Rational& o) const { return *this < o || *this == o; }
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator>=(const Rational& o) const { return o <= *this; }

    Rational abs() const { return num_ < 0 ? Rational(-num_, den_) : *this; }

    bool is_integer() const { return den_ == 1; }

    double to_double() const {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    std::string str() const {
        std::string s = i128_str(num_);
        if (den_ != 1) s += "/" + i128_str(den_);
        return s;
    }

    static Rational pow(Rational base, unsigned e) {
        Rational r(1);
        while (e > 0) {
            if (e & 1) r = r * base;
            base = base * base;
            e >>= 1;
        }
        return r;
    }

    static std::string i128_str(i128_t v) {
        if (v == 0) return "0";
        bool neg = v < 0;
        unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
        std::string s;
        while (u > 0) {
            s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
            u /= 10;
        }
        if (neg) s.push_back('-');
        return {s.rbegin(), s.rend()};
    }

  private:
    static i128_t gcd128(i128_t a, i128_t b) {
        if (a < 0) a = -a;
        if (b < 0) b = -b;
        while (b != 0) {
            i128_t t = a % b;
            a = b;
            b = t;
        }
        return a;
    }
    static i128_t mul_checked(i128_t a, i128_t b) {
        i128_t r;
        if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("Rational: overflow");
        return r;
    }
    static i128_t add_checked(i128_t a, i128_t b) {
        i128_t r;
        if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("Rational: overflow");
        return r;
    }
    static i128_t sub_checked(i128_t a, i128_t b) {
        i128_t r;
        if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("Rational: overflow");
        return r;
    }
    void normalize() {
        if (den_ == 0) throw std::domain_error("Rational: zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        i128_t g = gcd128(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    i128_t num_;
    i128_t den_;
};

}  // namespace halfint
