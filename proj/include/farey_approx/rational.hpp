#pragma once

/**
 * @file rational.hpp
 * @brief Exact rational numbers over arbitrary-precision integers.
 *
 * A Rational is always stored reduced with a positive denominator, so two
 * Rationals are equal iff their (numerator, denominator) pairs are equal and
 * zero is uniquely 0/1. There is no floating point anywhere in this header.
 */

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

namespace farey_approx {

// Expression templates off: plain value semantics for every intermediate.
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;

class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(BigInt n) : num_(std::move(n)), den_(1) {}  // NOLINT(implicit)
    Rational(std::int64_t n) : num_(n), den_(1) {}      // NOLINT(implicit)
    Rational(int n) : num_(n), den_(1) {}               // NOLINT(implicit)

    // Throws std::invalid_argument when d == 0.
    Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

    [[nodiscard]] const BigInt& num() const noexcept { return num_; }
    [[nodiscard]] const BigInt& den() const noexcept { return den_; }

    [[nodiscard]] bool is_integer() const noexcept { return den_ == 1; }
    [[nodiscard]] int sign() const noexcept { return num_.sign(); }

    // Canonical text form "num/den".
    [[nodiscard]] std::string str() const { return num_.str() + "/" + den_.str(); }

    Rational operator-() const { return from_reduced(-num_, den_); }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend Rational operator+(const Rational& a, const Rational& b) {
        if (a.den_ == b.den_) return Rational(a.num_ + b.num_, a.den_);
        return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        if (a.den_ == b.den_) return Rational(a.num_ - b.num_, a.den_);
        return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("division by zero rational");
        return Rational(a.num_ * b.den_, a.den_ * b.num_);
    }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const BigInt lhs = a.num_ * b.den_;
        const BigInt rhs = b.num_ * a.den_;
        if (lhs < rhs) return std::strong_ordering::less;
        if (lhs > rhs) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

    // Caller guarantees gcd(n, d) == 1 and d > 0.
    static Rational from_reduced(BigInt n, BigInt d) {
        Rational r;
        r.num_ = std::move(n);
        r.den_ = std::move(d);
        return r;
    }

    // True iff both representation invariants hold.
    [[nodiscard]] bool valid() const {
        return den_ > 0 && boost::multiprecision::gcd(abs(num_), den_) == 1;
    }

private:
    void normalize() {
        if (den_ == 0) throw std::invalid_argument("rational with zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        if (num_ == 0) {
            den_ = 1;
            return;
        }
        BigInt g = boost::multiprecision::gcd(abs(num_), den_);
        if (g != 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    BigInt num_;
    BigInt den_;
};

inline Rational reduce(const BigInt& num, const BigInt& den) { return Rational(num, den); }

inline Rational abs(const Rational& x) { return x.sign() < 0 ? -x : x; }

/// (h + h') / (k + k'), reduced.
inline Rational mediant(const Rational& a, const Rational& b) {
    return Rational(a.num() + b.num(), a.den() + b.den());
}

// Floor division for a positive divisor.
inline BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q;
    BigInt r;
    boost::multiprecision::divide_qr(a, b, q, r);
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

inline BigInt ceil_div(const BigInt& a, const BigInt& b) { return -floor_div(-a, b); }

/// E(x): the largest integer not exceeding x.
inline BigInt integral_part(const Rational& x) { return floor_div(x.num(), x.den()); }

/// {x} = x - E(x), always in [0, 1).
inline Rational fractional_part(const Rational& x) {
    return Rational::from_reduced(x.num() - integral_part(x) * x.den(), x.den());
}

/// ||x||: distance from x to the nearest integer, in [0, 1/2].
inline Rational nearest_int_distance(const Rational& x) {
    Rational f = fractional_part(x);
    Rational g = Rational(1) - f;
    return g < f ? g : f;
}

}  // namespace farey_approx
