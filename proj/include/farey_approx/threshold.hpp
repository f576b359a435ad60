#pragma once

// Feasibility sweep over a descending grid of eps values, and exact grid
// builders for the sweep front end.

#include "farey_approx/parse.hpp"
#include "farey_approx/rational.hpp"
#include "farey_approx/simultaneous.hpp"

#include <algorithm>
#include <cstdint>
#include <future>
#include <optional>
#include <stdexcept>
#include <thread>
#include <vector>

namespace farey_approx {

struct ThresholdReport {
    std::vector<Rational> grid;  // strictly descending
    std::vector<bool> feasible;
    // Largest grid point g such that every grid point <= g is feasible.
    std::optional<Rational> epsilon0;
    std::vector<std::optional<Solution>> witnesses;  // parallel to grid
};

struct ThresholdOptions {
    ScanOptions scan;
    unsigned threads = 0;  // 0: hardware concurrency
};

/**
 * Runs brute_force_solve at every grid point. Grid points may be evaluated
 * concurrently; results are merged in grid order, so the report does not
 * depend on scheduling. epsilon0 is read off the grid only: it is the top of
 * the unbroken run of feasible points at the small end.
 */
inline ThresholdReport epsilon_threshold(const ConstraintSet& cs, const std::vector<Rational>& grid,
                                         const ThresholdOptions& opts = {}) {
    if (grid.empty()) throw std::invalid_argument("epsilon_threshold: grid must not be empty");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid[i].sign() <= 0) throw std::invalid_argument("epsilon_threshold: grid points must be positive");
        if (i > 0 && !(grid[i] < grid[i - 1]))
            throw std::invalid_argument("epsilon_threshold: grid must be strictly descending");
    }

    ThresholdReport rep;
    rep.grid = grid;
    rep.feasible.assign(grid.size(), false);
    rep.witnesses.assign(grid.size(), std::nullopt);

    unsigned workers = opts.threads != 0 ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(grid.size()));

    auto solve_at = [&](std::size_t i) { return brute_force_solve(cs, grid[i], opts.scan); };
    std::vector<SolveResult> results;
    results.reserve(grid.size());
    if (workers <= 1) {
        for (std::size_t i = 0; i < grid.size(); ++i) results.push_back(solve_at(i));
    } else {
        for (std::size_t start = 0; start < grid.size(); start += workers) {
            std::vector<std::future<SolveResult>> batch;
            const std::size_t stop = std::min(grid.size(), start + workers);
            for (std::size_t i = start; i < stop; ++i) batch.push_back(std::async(std::launch::async, solve_at, i));
            for (auto& f : batch) results.push_back(f.get());
        }
    }

    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (auto* s = std::get_if<Solution>(&results[i])) {
            rep.feasible[i] = true;
            rep.witnesses[i] = std::move(*s);
        }
    }
    for (std::size_t i = grid.size(); i-- > 0;) {
        if (!rep.feasible[i]) break;
        rep.epsilon0 = grid[i];
    }
    return rep;
}

/// {2^-k : k = first..last}, descending.
inline std::vector<Rational> dyadic_grid(unsigned first, unsigned last) {
    std::vector<Rational> g;
    for (unsigned k = first; k <= last; ++k) g.emplace_back(BigInt(1), BigInt(1) << k);
    return g;
}

/// `points` values from hi down to lo in equal exact steps.
inline std::vector<Rational> linear_grid(const Rational& hi, const Rational& lo, std::uint64_t points) {
    if (points < 2 || !(lo < hi) || lo.sign() <= 0)
        throw std::invalid_argument("grid needs 0 < eps-min < eps-max and at least 2 points");
    std::vector<Rational> g;
    const Rational step = (hi - lo) / Rational(BigInt(points - 1));
    for (std::uint64_t k = 0; k < points; ++k) g.push_back(hi - step * Rational(BigInt(k)));
    g.back() = lo;
    return g;
}

/**
 * Geometric grid from hi down to lo. Interior points are
 * hi^((m-k)/m) lo^(k/m) with m = points - 1, truncated to `digits` decimal
 * digits; endpoints are exact. Duplicate points after truncation are an
 * error.
 */
inline std::vector<Rational> geometric_grid(const Rational& hi, const Rational& lo, std::uint64_t points,
                                            unsigned digits = kDefaultPrecision) {
    if (points < 2 || !(lo < hi) || lo.sign() <= 0)
        throw std::invalid_argument("grid needs 0 < eps-min < eps-max and at least 2 points");
    const auto m = static_cast<unsigned>(points - 1);
    const BigInt scale = pow10(digits);
    std::vector<Rational> g{hi};
    for (unsigned k = 1; k < m; ++k) {
        using boost::multiprecision::pow;
        // floor(scale * (hi^(m-k) lo^k)^(1/m)) = iroot(floor(scale^m hi^(m-k) lo^k), m)
        const BigInt num = pow(hi.num(), m - k) * pow(lo.num(), k) * pow(scale, m);
        const BigInt den = pow(hi.den(), m - k) * pow(lo.den(), k);
        g.emplace_back(integer_root(num / den, m), scale);
    }
    g.push_back(lo);
    for (std::size_t i = 1; i < g.size(); ++i)
        if (!(g[i] < g[i - 1])) throw std::invalid_argument("geometric grid collapses at this precision");
    return g;
}

}  // namespace farey_approx
