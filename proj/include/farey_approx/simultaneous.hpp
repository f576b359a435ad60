#pragma once

/**
 * @file simultaneous.hpp
 * @brief Simultaneous rational approximation with a shared denominator.
 *
 * Given targets (x_i, t_i), t_i > 0, and a scale eps > 0, a denominator q
 * with numerators p_i is feasible when
 *
 *     |x_i - p_i/q| <= eps * t_i    for every i
 *     eps * q      <= t_min = min_i t_i
 *
 * Everything here is exact. brute_force_solve is the reference oracle: it
 * scans q = 1 .. floor(t_min/eps) and returns the least feasible q.
 */

#include "farey_approx/farey.hpp"
#include "farey_approx/mediant_chain.hpp"
#include "farey_approx/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace farey_approx {

inline constexpr std::uint64_t kDefaultMaxScan = 10'000'000;

/// The scan cap was reached before the search could conclude.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Constraint {
    Rational x;
    Rational t;
};

class ConstraintSet {
public:
    explicit ConstraintSet(std::vector<Constraint> items) : items_(std::move(items)) {
        if (items_.empty()) throw std::invalid_argument("constraint set must not be empty");
        t_min_ = items_.front().t;
        for (const auto& c : items_) {
            if (c.t.sign() <= 0) throw std::invalid_argument("tolerance weight must be positive, got " + c.t.str());
            if (c.t < t_min_) t_min_ = c.t;
        }
    }

    [[nodiscard]] const std::vector<Constraint>& items() const noexcept { return items_; }
    [[nodiscard]] std::size_t size() const noexcept { return items_.size(); }
    [[nodiscard]] const Rational& t_min() const noexcept { return t_min_; }

    [[nodiscard]] std::vector<Rational> xs() const {
        std::vector<Rational> out;
        out.reserve(items_.size());
        for (const auto& c : items_) out.push_back(c.x);
        return out;
    }

    [[nodiscard]] bool uniform_t() const {
        return std::all_of(items_.begin(), items_.end(), [&](const Constraint& c) { return c.t == t_min_; });
    }

private:
    std::vector<Constraint> items_;
    Rational t_min_;
};

enum class Method { brute, compose, dirichlet };

inline const char* to_string(Method m) {
    switch (m) {
        case Method::brute: return "brute";
        case Method::compose: return "compose";
        case Method::dirichlet: return "dirichlet";
    }
    return "?";
}

// For dirichlet solutions `epsilon` holds 1/T: each error is at most epsilon/q.
struct Solution {
    BigInt q;
    std::vector<BigInt> ps;
    std::vector<Rational> errors;
    Rational epsilon;
    Method method = Method::brute;

    [[nodiscard]] Rational max_error() const {
        Rational m;
        for (const auto& e : errors)
            if (e > m) m = e;
        return m;
    }
};

using SolveResult = std::variant<Solution, Infeasible>;

inline Solution make_solution(const std::vector<Rational>& xs, BigInt q, std::vector<BigInt> ps, Rational epsilon,
                              Method method) {
    if (xs.size() != ps.size()) throw std::invalid_argument("numerator count does not match target count");
    Solution s{std::move(q), std::move(ps), {}, std::move(epsilon), method};
    s.errors.reserve(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) s.errors.push_back(abs(xs[i] - Rational(s.ps[i], s.q)));
    return s;
}

struct ItemCheck {
    bool error_ok = false;
    Rational exact_error;
    Rational bound;
};

struct CheckReport {
    std::vector<ItemCheck> per_item;
    bool denom_ok = false;
    bool overall = false;
};

enum class Inequality { non_strict, strict };

/**
 * Exact check of one candidate. The error test is non-strict by default;
 * Inequality::strict requires |x_i - p_i/q| < eps t_i instead. The
 * denominator test is always eps q <= t_min.
 */
inline CheckReport check_solution(const ConstraintSet& cs, const Rational& epsilon, const BigInt& q,
                                  const std::vector<BigInt>& ps, Inequality mode = Inequality::non_strict) {
    if (ps.size() != cs.size())
        throw std::invalid_argument("check_solution: expected " + std::to_string(cs.size()) + " numerators, got " +
                                    std::to_string(ps.size()));
    if (q < 1) throw std::invalid_argument("check_solution: q must be positive");
    if (epsilon.sign() <= 0) throw std::invalid_argument("check_solution: epsilon must be positive");
    CheckReport rep;
    rep.per_item.reserve(cs.size());
    bool all = true;
    for (std::size_t i = 0; i < cs.size(); ++i) {
        const auto& c = cs.items()[i];
        ItemCheck ic;
        ic.exact_error = abs(c.x - Rational(ps[i], q));
        ic.bound = epsilon * c.t;
        ic.error_ok = mode == Inequality::strict ? ic.exact_error < ic.bound : ic.exact_error <= ic.bound;
        all = all && ic.error_ok;
        rep.per_item.push_back(std::move(ic));
    }
    rep.denom_ok = epsilon * Rational(q) <= cs.t_min();
    rep.overall = all && rep.denom_ok;
    return rep;
}

/// Nearest integer to q x; an exact half rounds down.
inline BigInt best_numerator(const Rational& x, const BigInt& q) {
    if (q < 1) throw std::invalid_argument("best_numerator: q must be positive");
    const BigInt qa = q * x.num();
    const BigInt& b = x.den();
    BigInt p = floor_div(qa, b);
    const BigInt r = qa - p * b;  // in [0, b)
    if (2 * r > b) ++p;
    return p;
}

namespace detail {

// Incremental residue r = (q a) mod b for q = 1, 2, ...; the distance from
// q x to the nearest integer is min(r, b - r) / b.
struct ResidueTrack {
    BigInt step;  // a mod b
    BigInt b;
    BigInt r;

    explicit ResidueTrack(const Rational& x) : b(x.den()) {
        step = x.num() - floor_div(x.num(), b) * b;
        r = 0;
    }
    void advance() {
        r += step;
        if (r >= b) r -= b;
    }
    [[nodiscard]] BigInt distance_num() const {
        BigInt other = b - r;
        return other < r ? other : r;
    }
};

}  // namespace detail

struct ScanOptions {
    std::uint64_t max_scan = kDefaultMaxScan;
    Inequality mode = Inequality::non_strict;
};

/**
 * Least q in 1 .. floor(t_min/eps) for which the nearest numerators satisfy
 * every error bound. Infeasible if none does. Throws BudgetExceeded when the
 * range is longer than opts.max_scan and no solution was found within it.
 */
inline SolveResult brute_force_solve(const ConstraintSet& cs, const Rational& epsilon, const ScanOptions& opts = {}) {
    if (epsilon.sign() <= 0) throw std::invalid_argument("brute_force_solve: epsilon must be positive");
    const BigInt limit = integral_part(cs.t_min() / epsilon);
    if (limit < 1) return Infeasible{"denominator range empty"};
    const bool over_budget = limit > opts.max_scan;
    const std::uint64_t last = over_budget ? opts.max_scan : limit.convert_to<std::uint64_t>();

    // Item i passes at q iff dist_i * (eps.den t_i.den) <= (eps.num t_i.num b_i) q.
    const std::size_t n = cs.size();
    std::vector<detail::ResidueTrack> tracks;
    std::vector<BigInt> lhs_coef;
    std::vector<BigInt> rhs_coef;
    tracks.reserve(n);
    for (const auto& c : cs.items()) {
        tracks.emplace_back(c.x);
        lhs_coef.push_back(epsilon.den() * c.t.den());
        rhs_coef.push_back(epsilon.num() * c.t.num() * c.x.den());
    }
    const bool strict = opts.mode == Inequality::strict;

    for (std::uint64_t q = 1; q <= last; ++q) {
        bool ok = true;
        for (std::size_t i = 0; i < n; ++i) {
            tracks[i].advance();
            if (!ok) continue;  // keep every residue in step
            const BigInt lhs = tracks[i].distance_num() * lhs_coef[i];
            const BigInt rhs = rhs_coef[i] * q;
            ok = strict ? lhs < rhs : lhs <= rhs;
        }
        if (ok) {
            const BigInt qq = q;
            std::vector<BigInt> ps;
            ps.reserve(n);
            for (const auto& c : cs.items()) ps.push_back(best_numerator(c.x, qq));
            return make_solution(cs.xs(), qq, std::move(ps), epsilon, Method::brute);
        }
    }
    if (over_budget)
        throw BudgetExceeded("budget exceeded: denominator range " + limit.str() + " is longer than the scan cap " +
                             std::to_string(opts.max_scan));
    return Infeasible{"no denominator q <= " + limit.str() + " meets every error bound"};
}

struct ComposeOptions {
    // Farey order used at every stage; defaults to ceil(1/eps).
    std::optional<BigInt> order;
    BigInt denominator_cap = boost::multiprecision::pow(BigInt(10), 30);
};

struct ComposeOutcome {
    Solution solution;
    bool satisfies_constraints = false;
    CheckReport check;
    BigInt order;
};

/// Closest endpoint of y's Farey bracket at `order` (ties to the left), as (p, q).
inline std::pair<BigInt, BigInt> farey_approximate(const Rational& y, const BigInt& order) {
    const BigInt whole = integral_part(y);
    const Rational frac = fractional_part(y);
    const Bracket br = farey_neighbors(frac, FareyOrder(order.convert_to<std::int64_t>()));
    Rational pick;
    if (const auto* hit = std::get_if<ExactHit>(&br)) {
        pick = hit->value;
    } else {
        const auto& pair = std::get<FareyPair>(br);
        pick = (frac - pair.left() <= pair.right() - frac) ? pair.left() : pair.right();
    }
    return {whole * pick.den() + pick.num(), pick.den()};
}

/**
 * Common denominator built one target at a time: approximate x_1 alone,
 * then for each later x_k approximate Q x_k by p'/q' and rescale,
 *
 *     Q <- Q q',   P_i <- P_i q' (i < k),   P_k = p'
 *
 * so that x_k ~ p' / (Q q'). A common factor of Q and all P_i is divided
 * out at the end. This is a heuristic: the result is checked exactly and
 * `satisfies_constraints` says whether it actually meets the bounds.
 * Throws OverflowError when Q would exceed opts.denominator_cap.
 */
inline ComposeOutcome compose_solve(const ConstraintSet& cs, const Rational& epsilon, const ComposeOptions& opts = {}) {
    if (epsilon.sign() <= 0) throw std::invalid_argument("compose_solve: epsilon must be positive");
    const BigInt order = opts.order ? *opts.order : ceil_div(epsilon.den(), epsilon.num());
    if (order < 1) throw std::invalid_argument("compose_solve: stage order must be positive");
    if (order > std::numeric_limits<std::int64_t>::max())
        throw OverflowError("compose_solve: stage order " + order.str() + " is too large");

    const auto& items = cs.items();
    BigInt big_q = 1;
    std::vector<BigInt> ps;
    ps.reserve(items.size());
    for (const auto& c : items) {
        auto [p, q] = farey_approximate(Rational(big_q) * c.x, order);
        if (big_q * q > opts.denominator_cap)
            throw OverflowError("compose_solve: common denominator exceeds the cap " + opts.denominator_cap.str());
        for (auto& prev : ps) prev *= q;
        ps.push_back(std::move(p));
        big_q *= q;
    }

    BigInt g = big_q;
    for (const auto& p : ps) g = boost::multiprecision::gcd(g, p);
    if (g > 1) {
        big_q /= g;
        for (auto& p : ps) p /= g;
    }

    ComposeOutcome out{make_solution(cs.xs(), big_q, ps, epsilon, Method::compose), false, {}, order};
    out.check = check_solution(cs, epsilon, out.solution.q, out.solution.ps);
    out.satisfies_constraints = out.check.overall;
    return out;
}

/**
 * Least q with 1 <= q < T^n and ||q x_i|| <= 1/T for all i, numerators by
 * best_numerator. Such q always exists; not finding one is a logic error.
 */
inline Solution dirichlet_solve(const std::vector<Rational>& xs, const BigInt& T,
                                std::uint64_t max_scan = kDefaultMaxScan) {
    if (T < 2) throw std::invalid_argument("dirichlet_solve: T must be at least 2");
    if (xs.empty()) throw std::invalid_argument("dirichlet_solve: need at least one target");
    const BigInt bound = boost::multiprecision::pow(T, static_cast<unsigned>(xs.size()));
    const BigInt last_q = bound - 1;
    const bool over_budget = last_q > max_scan;
    const std::uint64_t last = over_budget ? max_scan : last_q.convert_to<std::uint64_t>();

    std::vector<detail::ResidueTrack> tracks;
    tracks.reserve(xs.size());
    for (const auto& x : xs) tracks.emplace_back(x);

    for (std::uint64_t q = 1; q <= last; ++q) {
        bool ok = true;
        for (auto& tr : tracks) {
            tr.advance();
            if (ok) ok = tr.distance_num() * T <= tr.b;
        }
        if (ok) {
            const BigInt qq = q;
            std::vector<BigInt> ps;
            ps.reserve(xs.size());
            for (const auto& x : xs) ps.push_back(best_numerator(x, qq));
            return make_solution(xs, qq, std::move(ps), Rational(BigInt(1), T), Method::dirichlet);
        }
    }
    if (over_budget)
        throw BudgetExceeded("budget exceeded: Dirichlet range T^n - 1 = " + last_q.str() +
                             " is longer than the scan cap " + std::to_string(max_scan));
    throw std::logic_error("dirichlet_solve: no q < T^n found; this contradicts Dirichlet's theorem");
}

/// Smallest T >= 2 with 1/T <= eps t.
inline BigInt forced_dirichlet_T(const Rational& epsilon, const Rational& t) {
    const Rational inv = Rational(1) / (epsilon * t);
    BigInt T = ceil_div(inv.num(), inv.den());
    return T < 2 ? BigInt(2) : T;
}

struct ComparisonReport {
    Rational epsilon;
    SolveResult constrained;
    BigInt dirichlet_T;
    Solution dirichlet;
    Rational q_bound_constrained;  // t / eps
    BigInt q_bound_dirichlet;      // T^n
    std::optional<Rational> max_error_constrained;
    Rational max_error_dirichlet;
};

/// Oracle solver vs the Dirichlet baseline on a constraint set with one common t.
inline ComparisonReport compare(const ConstraintSet& cs, const Rational& epsilon, const BigInt& T,
                                std::uint64_t max_scan = kDefaultMaxScan) {
    if (!cs.uniform_t()) throw std::invalid_argument("compare requires every tolerance weight t_i to be equal");
    if (T < 2) throw std::invalid_argument("compare: T must be at least 2");
    ComparisonReport rep{epsilon,
                         brute_force_solve(cs, epsilon, {max_scan}),
                         T,
                         dirichlet_solve(cs.xs(), T, max_scan),
                         cs.t_min() / epsilon,
                         boost::multiprecision::pow(T, static_cast<unsigned>(cs.size())),
                         std::nullopt,
                         {}};
    if (const auto* s = std::get_if<Solution>(&rep.constrained)) rep.max_error_constrained = s->max_error();
    rep.max_error_dirichlet = rep.dirichlet.max_error();
    return rep;
}

}  // namespace farey_approx
