#pragma once

// Text -> exact Rational conversion, including rational stand-ins for a
// fixed set of irrational constants truncated to a requested number of
// decimal digits.

#include "farey_approx/rational.hpp"

#include <cctype>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace farey_approx {

class ParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline constexpr int kDefaultPrecision = 64;
inline constexpr int kMaxPrecision = 20000;

inline BigInt pow10(unsigned digits) { return boost::multiprecision::pow(BigInt(10), digits); }

/// floor(v^(1/k)) for v >= 0, k >= 1.
inline BigInt integer_root(const BigInt& v, unsigned k) {
    if (v < 0) throw std::domain_error("integer_root of a negative value");
    if (v < 2 || k == 1) return v;
    // Start from a power of two above the root; Newton's iteration then
    // decreases monotonically to the floor.
    const auto bits = boost::multiprecision::msb(v) / k + 1;
    BigInt x = BigInt(1) << bits;
    for (;;) {
        BigInt y = ((k - 1) * x + v / boost::multiprecision::pow(x, k - 1)) / k;
        if (y >= x) break;
        x = std::move(y);
    }
    return x;
}

inline BigInt integer_sqrt(const BigInt& v) { return boost::multiprecision::sqrt(v); }

namespace detail {

// Fixed-point value at scale 10^(digits+guard) with an absolute error bound;
// the caller accepts the truncation only when both ends of the error
// interval truncate to the same digit string.
struct Enclosure {
    BigInt value;
    BigInt error;
};

// arctan(1/x) * scale, floor-evaluated term by term.
inline Enclosure arctan_inv(unsigned x, const BigInt& scale) {
    const BigInt x2 = BigInt(x) * x;
    BigInt power = scale / x;  // scale / x^(2k+1)
    BigInt sum = 0;
    BigInt terms = 0;
    for (unsigned k = 0; power != 0; ++k) {
        BigInt term = power / (2 * k + 1);
        if (k % 2 == 0) sum += term; else sum -= term;
        power /= x2;
        terms += 3;
    }
    return {sum, terms + 2};
}

inline Enclosure pi_scaled(const BigInt& scale) {
    auto a = arctan_inv(5, scale);
    auto b = arctan_inv(239, scale);
    return {16 * a.value - 4 * b.value, 16 * a.error + 4 * b.error};
}

inline Enclosure e_scaled(const BigInt& scale) {
    BigInt term = scale;
    BigInt sum = 0;
    BigInt terms = 0;
    for (unsigned k = 1; term != 0; ++k) {
        sum += term;
        term /= k;
        terms += 2;
    }
    return {sum, terms + 4};
}

template <typename Compute>
BigInt truncate_series(unsigned digits, Compute compute) {
    for (unsigned guard = 12;; guard *= 2) {
        const BigInt scale = pow10(digits + guard);
        Enclosure enc = compute(scale);
        const BigInt g = pow10(guard);
        BigInt lo = floor_div(enc.value - enc.error, g);
        BigInt hi = floor_div(enc.value + enc.error, g);
        if (lo == hi) return lo;
    }
}

inline bool parse_integer(std::string_view s, BigInt& out) {
    if (s.empty()) return false;
    std::size_t i = 0;
    bool neg = false;
    if (s[0] == '+' || s[0] == '-') {
        neg = s[0] == '-';
        i = 1;
    }
    if (i == s.size()) return false;
    BigInt v = 0;
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
        v = v * 10 + (s[i] - '0');
    }
    out = neg ? BigInt(-v) : v;
    return true;
}

inline bool parse_decimal(std::string_view s, Rational& out) {
    std::size_t dot = s.find('.');
    if (dot == std::string_view::npos) return false;
    std::string_view whole = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    bool neg = false;
    if (!whole.empty() && (whole[0] == '+' || whole[0] == '-')) {
        neg = whole[0] == '-';
        whole.remove_prefix(1);
    }
    if (whole.empty() && frac.empty()) return false;
    BigInt v = 0;
    for (char c : whole) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        v = v * 10 + (c - '0');
    }
    for (char c : frac) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        v = v * 10 + (c - '0');
    }
    out = Rational(neg ? BigInt(-v) : v, pow10(static_cast<unsigned>(frac.size())));
    return true;
}

}  // namespace detail

/**
 * Rational stand-in for a named constant: the value truncated toward zero
 * to `precision` decimal digits after the point. Supported names are
 * sqrt2, sqrt3, sqrt5, phi, e and pi.
 */
inline Rational named_constant(std::string_view name, int precision) {
    if (precision < 0 || precision > kMaxPrecision)
        throw ParseError("precision out of range: " + std::to_string(precision));
    const auto digits = static_cast<unsigned>(precision);
    const BigInt scale = pow10(digits);
    BigInt scaled;
    if (name == "sqrt2" || name == "sqrt3" || name == "sqrt5") {
        const int radicand = name.back() - '0';
        scaled = integer_sqrt(radicand * scale * scale);
    } else if (name == "phi") {
        scaled = (scale + integer_sqrt(5 * scale * scale)) / 2;
    } else if (name == "e") {
        scaled = detail::truncate_series(digits, detail::e_scaled);
    } else if (name == "pi") {
        scaled = detail::truncate_series(digits, detail::pi_scaled);
    } else {
        throw ParseError("unknown constant '" + std::string(name) + "'");
    }
    return Rational(scaled, scale);
}

inline bool is_named_constant(std::string_view name) {
    return name == "sqrt2" || name == "sqrt3" || name == "sqrt5" || name == "phi" || name == "e" ||
           name == "pi";
}

/**
 * Accepts "p/q", an integer, a plain decimal literal ("-0.25"), or a named
 * constant optionally preceded by '-'. Fractions and decimals are exact.
 */
inline Rational parse_real(std::string_view text, int precision = kDefaultPrecision) {
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    if (s.empty()) throw ParseError("empty number");

    {
        std::string_view name = s;
        bool neg = false;
        if (name[0] == '-') {
            neg = true;
            name.remove_prefix(1);
        }
        if (!name.empty() && std::isalpha(static_cast<unsigned char>(name[0]))) {
            Rational c = named_constant(name, precision);
            return neg ? -c : c;
        }
    }

    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        BigInt p;
        BigInt q;
        if (!detail::parse_integer(s.substr(0, slash), p) ||
            !detail::parse_integer(s.substr(slash + 1), q))
            throw ParseError("malformed fraction '" + std::string(text) + "'");
        if (q == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
        return Rational(p, q);
    }

    Rational r;
    if (detail::parse_decimal(s, r)) return r;
    BigInt n;
    if (detail::parse_integer(s, n)) return Rational(n);
    throw ParseError("cannot parse number '" + std::string(text) + "'");
}

}  // namespace farey_approx
