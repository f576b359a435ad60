#pragma once

/**
 * @file mediant_chain.hpp
 * @brief Mediant chains between two consecutive Farey fractions and
 *        gap-bounded subdivision of Farey intervals.
 *
 * For a consecutive pair h1/k1 < h2/k2:
 *
 *   U_i = (h2 + i h1) / (k2 + i k1)   decreasing from h2/k2 toward h1/k1
 *   V_j = (h1 + j h2) / (k1 + j k2)   increasing from h1/k1 toward h2/k2
 *
 * and, because the pair is unimodular, every gap has a closed form:
 *
 *   U_i - U_{i+1}  = 1 / ((k2 + i k1)(k2 + (i+1) k1))
 *   U_i - h1/k1    = 1 / (k1 (k2 + i k1))
 *   V_{j+1} - V_j  = 1 / ((k1 + j k2)(k1 + (j+1) k2))
 *   h2/k2 - V_j    = 1 / (k2 (k1 + j k2))
 */

#include "farey_approx/farey.hpp"
#include "farey_approx/rational.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace farey_approx {

/// Verdict for a request the construction cannot meet.
struct Infeasible {
    std::string reason;
};

/// A bounded search or construction ran past its configured cap.
class OverflowError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class ChainSide { u_descending, v_ascending };

struct MediantChain {
    std::vector<Rational> terms;
    ChainSide side;
    FareyPair base;
};

inline Rational u_term(const FareyPair& base, const BigInt& i) {
    const Rational& l = base.left();
    const Rational& r = base.right();
    return Rational(r.num() + i * l.num(), r.den() + i * l.den());
}

inline Rational v_term(const FareyPair& base, const BigInt& j) {
    const Rational& l = base.left();
    const Rational& r = base.right();
    return Rational(l.num() + j * r.num(), l.den() + j * r.den());
}

inline MediantChain chain_U(const FareyPair& base, std::uint64_t count) {
    MediantChain c{{}, ChainSide::u_descending, base};
    c.terms.reserve(count + 1);
    for (std::uint64_t i = 0; i <= count; ++i) c.terms.push_back(u_term(base, i));
    return c;
}

inline MediantChain chain_V(const FareyPair& base, std::uint64_t count) {
    MediantChain c{{}, ChainSide::v_ascending, base};
    c.terms.reserve(count + 1);
    for (std::uint64_t j = 0; j <= count; ++j) c.terms.push_back(v_term(base, j));
    return c;
}

/// U_i - U_{i+1}
inline Rational gap_U(const FareyPair& base, const BigInt& i) {
    const BigInt& k1 = base.left().den();
    const BigInt& k2 = base.right().den();
    return Rational(1, (k2 + i * k1) * (k2 + (i + 1) * k1));
}

/// V_{j+1} - V_j
inline Rational gap_V(const FareyPair& base, const BigInt& j) {
    const BigInt& k1 = base.left().den();
    const BigInt& k2 = base.right().den();
    return Rational(1, (k1 + j * k2) * (k1 + (j + 1) * k2));
}

/// U_i - h1/k1
inline Rational tail_U(const FareyPair& base, const BigInt& i) {
    const BigInt& k1 = base.left().den();
    const BigInt& k2 = base.right().den();
    return Rational(1, k1 * (k2 + i * k1));
}

/// h2/k2 - V_j
inline Rational tail_V(const FareyPair& base, const BigInt& j) {
    const BigInt& k1 = base.left().den();
    const BigInt& k2 = base.right().den();
    return Rational(1, k2 * (k1 + j * k2));
}

struct Subdivision {
    std::vector<Rational> points;
    Rational gap_bound;
    BigInt denom_bound;
};

using SubdivisionResult = std::variant<Subdivision, Infeasible>;

/**
 * Subdivides [left, right] of a consecutive Farey pair so that every gap is
 * at most gap_bound and every denominator at most denom_bound.
 *
 * When the pair's own gap already fits, the result is the two endpoints.
 * Otherwise a single mediant chain is grown away from the endpoint with the
 * larger denominator: U_0..U_p from the right when k2 > k1 (and for the
 * equal-denominator pair 0/1, 1/1), V_0..V_p from the left when k1 > k2.
 * p is the least index whose tail gap fits; it is solved for directly.
 *
 * Infeasible when no chain length works: either the first chain step is
 * wider than gap_bound, or the required p pushes the last denominator past
 * denom_bound. Throws OverflowError if more than max_points are needed.
 */
inline SubdivisionResult subdivide(const FareyPair& base, const Rational& gap_bound, const BigInt& denom_bound,
                                   std::uint64_t max_points) {
    if (gap_bound.sign() <= 0) throw std::invalid_argument("subdivide: gap bound must be positive");
    if (denom_bound < 1) throw std::invalid_argument("subdivide: denominator bound must be positive");
    if (max_points < 2) throw std::invalid_argument("subdivide: max_points must be at least 2");

    const Rational& l = base.left();
    const Rational& r = base.right();
    const BigInt& k1 = l.den();
    const BigInt& k2 = r.den();
    if (k1 > denom_bound || k2 > denom_bound)
        return Infeasible{"endpoint denominator exceeds the denominator bound"};

    Subdivision out{{}, gap_bound, denom_bound};
    if (r - l <= gap_bound) {
        out.points = {l, r};
        return out;
    }

    const bool grow_u = k2 >= k1;
    // Larger endpoint denominator D, other one d: chain denominators are D + p d,
    // the tail gap is 1/(d (D + p d)) and the first chain step is 1/(D (D + d)).
    const BigInt& big = grow_u ? k2 : k1;
    const BigInt& small = grow_u ? k1 : k2;
    const BigInt& gn = gap_bound.num();
    const BigInt& gd = gap_bound.den();

    if (gn * big * (big + small) < gd)
        return Infeasible{"first mediant step " + Rational(1, big * (big + small)).str() +
                          " already exceeds the gap bound"};

    // Least p with small (big + p small) >= 1/gap_bound.
    BigInt p = ceil_div(gd - gn * small * big, gn * small * small);
    if (p < 1) p = 1;

    const BigInt last_den = big + p * small;
    if (last_den > denom_bound)
        return Infeasible{"reaching the gap bound needs denominator " + last_den.str() +
                          " above the bound " + denom_bound.str()};
    if (p + 2 > max_points)
        throw OverflowError("subdivision needs " + BigInt(p + 2).str() + " points, more than max_points " +
                            std::to_string(max_points));

    const auto count = p.convert_to<std::uint64_t>();
    out.points.reserve(count + 2);
    if (grow_u) {
        out.points.push_back(l);
        for (std::uint64_t i = count + 1; i-- > 0;) out.points.push_back(u_term(base, i));
    } else {
        for (std::uint64_t j = 0; j <= count; ++j) out.points.push_back(v_term(base, j));
        out.points.push_back(r);
    }
    return out;
}

/**
 * Subdivides [lo, hi] (both members of F_N) by subdividing each consecutive
 * F_N interval inside it in ascending order and concatenating the results,
 * shared endpoints kept once. Any infeasible interval makes the whole
 * request infeasible; max_points applies to the combined output.
 */
inline SubdivisionResult subdivide_range(const Rational& lo, const Rational& hi, FareyOrder order,
                                         const Rational& gap_bound, const BigInt& denom_bound,
                                         std::uint64_t max_points) {
    const BigInt n = order.value();
    if (lo.sign() < 0 || hi > Rational(1) || !(lo < hi))
        throw std::invalid_argument("subdivide_range: need 0 <= lo < hi <= 1");
    if (lo.den() > n || hi.den() > n)
        throw std::invalid_argument("subdivide_range: lo and hi must be members of F_N");

    // A point just above lo is never in F_N and sits below lo's successor,
    // so its bracket is exactly (lo, successor).
    const Rational above = lo + Rational(1, lo.den() * (n + 1));
    Rational right = std::get<FareyPair>(farey_neighbors(above, order)).right();

    Subdivision out{{lo}, gap_bound, denom_bound};
    Rational left = lo;
    for (;;) {
        FareyPair pair(left, right, order);
        auto part = subdivide(pair, gap_bound, denom_bound, max_points);
        if (auto* bad = std::get_if<Infeasible>(&part))
            return Infeasible{"interval [" + left.str() + ", " + right.str() + "]: " + bad->reason};
        auto& pts = std::get<Subdivision>(part).points;
        if (out.points.size() + pts.size() - 1 > max_points)
            throw OverflowError("subdivision needs more than max_points " + std::to_string(max_points) +
                                " points");
        out.points.insert(out.points.end(), pts.begin() + 1, pts.end());
        if (right == hi) break;
        auto nxt = farey_next(order, pair);
        left = std::move(right);
        right = std::move(*nxt);
    }
    return out;
}

}  // namespace farey_approx
