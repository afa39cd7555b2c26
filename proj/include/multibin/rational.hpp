#ifndef MULTIBIN_RATIONAL_HPP_
#define MULTIBIN_RATIONAL_HPP_

#include <compare>
#include <cstdint>
#include <numeric>
#include <string>

#include "multibin/errors.hpp"

namespace multibin {

// Exact rational number on 64-bit integers. Capacity checks throughout the
// library must be exact, so item weights and capacities never touch floating
// point. Intermediate products go through 128-bit arithmetic and overflow of
// the reduced result raises OverflowError.
class Rational {
  public:
    Rational() : num_(0), den_(1) {}
    Rational(std::int64_t value) : num_(value), den_(1) {}  // NOLINT(google-explicit-constructor)
    Rational(std::int64_t num, std::int64_t den) { init(num, den); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    // Parses "3", "-4/7" or a decimal such as "0.55" (converted exactly).
    static Rational parse(const std::string& text);

    // "3", "-4/7", "11/20" -- always the reduced fraction.
    std::string str() const;

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    bool is_integer() const { return den_ == 1; }

    // Smallest integer >= *this (exact).
    std::int64_t ceil() const {
        if (num_ >= 0) return (num_ + den_ - 1) / den_;
        return num_ / den_;
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return from128(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return from128(i128(a.num_) * b.den_ - i128(b.num_) * a.den_, i128(a.den_) * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return from128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw Error("rational division by zero");
        return from128(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        return i128(a.num_) * b.den_ <=> i128(b.num_) * a.den_;
    }

  private:
    using i128 = __int128;

    void init(std::int64_t num, std::int64_t den) {
        if (den == 0) throw Error("rational with zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const std::int64_t g = std::gcd(num, den);
        num_ = g ? num / g : num;
        den_ = g ? den / g : den;
    }

    static Rational from128(i128 num, i128 den) {
        if (den == 0) throw Error("rational with zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const i128 g = gcd128(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        constexpr i128 kMax = INT64_MAX;
        constexpr i128 kMin = INT64_MIN;
        if (num > kMax || num < kMin || den > kMax) {
            throw OverflowError("rational arithmetic overflow");
        }
        Rational r;
        r.num_ = static_cast<std::int64_t>(num);
        r.den_ = static_cast<std::int64_t>(den);
        return r;
    }

    static i128 gcd128(i128 a, i128 b) {
        while (b != 0) {
            const i128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    std::int64_t num_;
    std::int64_t den_;
};

}  // namespace multibin

#endif
