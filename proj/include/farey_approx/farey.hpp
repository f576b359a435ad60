#pragma once

/**
 * @file farey.hpp
 * @brief Farey sequences F_N: streaming generation, successor queries,
 *        bracketing of a value by Stern-Brocot descent, and an exhaustive
 *        checker for the classical neighbor properties.
 *
 * F_N is the ascending list of reduced h/k with 0 <= h <= k <= N. Two
 * consecutive terms h/k < h'/k' always satisfy k*h' - h*k' = 1 and
 * k + k' > N; the converse also holds for fractions in [0, 1] with
 * denominators at most N, which is how FareyPair validates itself.
 */

#include "farey_approx/rational.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace farey_approx {

class FareyOrder {
public:
    explicit FareyOrder(std::int64_t n) : n_(n) {
        if (n < 1) throw std::invalid_argument("Farey order must be >= 1, got " + std::to_string(n));
    }
    [[nodiscard]] std::int64_t value() const noexcept { return n_; }
    friend bool operator==(FareyOrder, FareyOrder) = default;

private:
    std::int64_t n_;
};

/// Two consecutive elements of F_N.
class FareyPair {
public:
    // Throws std::invalid_argument unless (left, right) is a consecutive pair of F_N.
    FareyPair(Rational left, Rational right, FareyOrder order)
        : left_(std::move(left)), right_(std::move(right)), order_(order) {
        if (auto why = violation(left_, right_, order_)) throw std::invalid_argument(*why);
    }

    [[nodiscard]] const Rational& left() const noexcept { return left_; }
    [[nodiscard]] const Rational& right() const noexcept { return right_; }
    [[nodiscard]] FareyOrder order() const noexcept { return order_; }

    // Reason the pair is not consecutive in F_N, or nullopt.
    static std::optional<std::string> violation(const Rational& l, const Rational& r, FareyOrder order) {
        const BigInt n = order.value();
        if (l.sign() < 0 || r > Rational(1) || !(l < r)) return "pair must satisfy 0 <= left < right <= 1";
        if (l.den() > n || r.den() > n) return "pair denominators must not exceed the order";
        if (l.den() * r.num() - l.num() * r.den() != 1) return "pair is not unimodular";
        if (l.den() + r.den() <= n) return "pair is not consecutive: an element of F_N lies between";
        return std::nullopt;
    }

    friend bool operator==(const FareyPair&, const FareyPair&) = default;

private:
    Rational left_;
    Rational right_;
    FareyOrder order_;
};

/// Reported when the bracketed value is itself a member of F_N.
struct ExactHit {
    Rational value;
    friend bool operator==(const ExactHit&, const ExactHit&) = default;
};

using Bracket = std::variant<FareyPair, ExactHit>;

inline Bracket farey_neighbors(const Rational& x, FareyOrder order);

/**
 * Single-pass stream of F_N using the next-term recurrence
 *   k = floor((N + b) / d),  next = (k*c - a) / (k*d - b)
 * for consecutive a/b < c/d. Memory is O(1) regardless of N.
 */
class FareyStream {
public:
    explicit FareyStream(FareyOrder order)
        : n_(order.value()), a_(0), b_(1), c_(1), d_(order.value()), pending_(true) {}

    // Resume so that the next emitted element is pair.left().
    explicit FareyStream(const FareyPair& pair)
        : n_(pair.order().value()),
          a_(pair.left().num().convert_to<std::int64_t>()),
          b_(pair.left().den().convert_to<std::int64_t>()),
          c_(pair.right().num().convert_to<std::int64_t>()),
          d_(pair.right().den().convert_to<std::int64_t>()),
          pending_(true) {}

    // Stream of the elements of F_N that are >= from.
    static FareyStream starting_at(const Rational& from, FareyOrder order);

    std::optional<Rational> next() {
        if (done_) return std::nullopt;
        if (pending_) {
            pending_ = false;
            if (a_ == b_) done_ = true;  // seeded at 1/1
            return Rational::from_reduced(a_, b_);
        }
        // Emit c/d, then advance (a/b, c/d) one step.
        Rational out = Rational::from_reduced(c_, d_);
        if (c_ == 1 && d_ == 1) {
            done_ = true;
            return out;
        }
        const std::int64_t k = (n_ + b_) / d_;
        const std::int64_t e = k * c_ - a_;
        const std::int64_t f = k * d_ - b_;
        a_ = c_;
        b_ = d_;
        c_ = e;
        d_ = f;
        return out;
    }

private:
    std::int64_t n_;
    std::int64_t a_, b_, c_, d_;
    bool pending_;
    bool done_ = false;
};

inline FareyStream FareyStream::starting_at(const Rational& from, FareyOrder order) {
    if (from.sign() <= 0) return FareyStream(order);
    if (from > Rational(1)) throw std::invalid_argument("Farey range start must not exceed 1");
    Rational first;
    const Bracket br = farey_neighbors(from, order);
    if (const auto* hit = std::get_if<ExactHit>(&br)) first = hit->value;
    else first = std::get<FareyPair>(br).right();
    if (first == Rational(1)) {
        FareyStream s(order);
        s.a_ = s.b_ = s.c_ = s.d_ = 1;
        return s;
    }
    // A point just above `first` is never in F_N and lies below its successor.
    const Rational above = first + Rational(1, first.den() * (order.value() + 1));
    return FareyStream(std::get<FareyPair>(farey_neighbors(above, order)));
}

inline std::vector<Rational> farey_sequence(FareyOrder order) {
    std::vector<Rational> out;
    FareyStream s(order);
    while (auto r = s.next()) out.push_back(std::move(*r));
    return out;
}

/// Successor of current.right() in F_N; nullopt once current.right() is 1/1.
inline std::optional<Rational> farey_next(FareyOrder order, const FareyPair& current) {
    const Rational& l = current.left();
    const Rational& r = current.right();
    if (r == Rational(1)) return std::nullopt;
    const BigInt k = (BigInt(order.value()) + l.den()) / r.den();
    return Rational::from_reduced(k * r.num() - l.num(), k * r.den() - l.den());
}

/**
 * Consecutive pair of F_N bracketing x strictly, or ExactHit when x is in F_N.
 *
 * Stern-Brocot descent from (0/1, 1/1); each run of same-direction mediant
 * steps is taken in one batch, so the cost is logarithmic in N.
 */
inline Bracket farey_neighbors(const Rational& x, FareyOrder order) {
    if (x.sign() < 0 || x > Rational(1))
        throw std::invalid_argument("farey_neighbors: x must lie in [0, 1], got " + x.str());
    const BigInt n = order.value();
    if (x.den() <= n) return ExactHit{x};

    const BigInt& p = x.num();
    const BigInt& q = x.den();
    BigInt a = 0, b = 1, c = 1, d = 1;  // a/b < x < c/d
    while (b + d <= n) {
        // x is not a member, so it never equals a mediant with denominator <= N.
        if (Rational(a + c, b + d) > x) {
            // right_k = (c + k a)/(d + k b) stays > x while k < (cq - pd)/(pb - aq).
            BigInt kx = (c * q - p * d - 1) / (p * b - a * q);
            BigInt kn = (n - d) / b;
            BigInt k = kx < kn ? kx : kn;
            c += k * a;
            d += k * b;
        } else {
            BigInt kx = (p * b - a * q - 1) / (c * q - p * d);
            BigInt kn = (n - b) / d;
            BigInt k = kx < kn ? kx : kn;
            a += k * c;
            b += k * d;
        }
    }
    return FareyPair(Rational::from_reduced(a, b), Rational::from_reduced(c, d), order);
}

struct PropertyResult {
    std::string name;
    bool passed = true;
    bool skipped = false;
    std::uint64_t checked = 0;
    std::optional<std::string> counterexample;
};

struct PropertyReport {
    std::int64_t order = 0;
    std::uint64_t elements = 0;
    std::vector<PropertyResult> properties;  // 1..4, in order

    [[nodiscard]] bool all_passed() const {
        for (const auto& p : properties)
            if (!p.passed) return false;
        return true;
    }
};

/**
 * Checks over the whole of F_N:
 *   1: k h' - h k' = 1 for adjacent h/k < h'/k'
 *   2: each interior term equals the reduced mediant of its two neighbours
 *   3: k + k' > N, and the mediant of an adjacent pair lies strictly between
 *   4: adjacent terms have distinct denominators (only stated for N > 1)
 */
inline PropertyReport verify_farey_properties(FareyOrder order) {
    PropertyReport rep;
    rep.order = order.value();
    for (const char* name : {"unimodular", "mediant_of_neighbors", "denominator_sum_and_mediant",
                             "distinct_denominators"}) {
        PropertyResult p;
        p.name = name;
        rep.properties.push_back(std::move(p));
    }
    auto& p1 = rep.properties[0];
    auto& p2 = rep.properties[1];
    auto& p3 = rep.properties[2];
    auto& p4 = rep.properties[3];
    p4.skipped = order.value() <= 1;
    const BigInt n = order.value();

    auto fail = [](PropertyResult& p, std::string what) {
        if (p.passed) {
            p.passed = false;
            p.counterexample = std::move(what);
        }
    };

    FareyStream s(order);
    std::optional<Rational> prev2;
    std::optional<Rational> prev = s.next();
    if (prev) ++rep.elements;
    while (auto cur = s.next()) {
        ++rep.elements;
        const Rational& l = *prev;
        const Rational& r = *cur;
        const std::string pair = l.str() + ", " + r.str();

        ++p1.checked;
        if (l.den() * r.num() - l.num() * r.den() != 1) fail(p1, pair);

        ++p3.checked;
        const Rational m = mediant(l, r);
        if (l.den() + r.den() <= n || !(l < m && m < r)) fail(p3, pair);

        if (!p4.skipped) {
            ++p4.checked;
            if (l.den() == r.den()) fail(p4, pair);
        }

        if (prev2) {
            ++p2.checked;
            if (mediant(*prev2, r) != l) fail(p2, prev2->str() + ", " + pair);
        }
        prev2 = std::move(prev);
        prev = std::move(cur);
    }
    return rep;
}

}  // namespace farey_approx
