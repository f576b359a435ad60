#pragma once

// Packaged smoke test: Farey neighbour properties, the closed-form chain
// gaps, and oracle-vs-heuristic cross-checks on fixed instances.

#include "farey_approx/farey.hpp"
#include "farey_approx/mediant_chain.hpp"
#include "farey_approx/parse.hpp"
#include "farey_approx/simultaneous.hpp"

#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

namespace farey_approx {

// Replaceable pieces so tests can inject faults.
struct SelftestHooks {
    std::function<Rational(const FareyPair&, const BigInt&)> gap_u = gap_U;
    std::function<Rational(const FareyPair&, const BigInt&)> gap_v = gap_V;
    std::function<Rational(const FareyPair&, const BigInt&)> tail_u = tail_U;
    std::function<Rational(const FareyPair&, const BigInt&)> tail_v = tail_V;
};

struct SelftestSummary {
    std::uint64_t checks = 0;
    std::uint64_t failures = 0;
    std::vector<std::string> failed;  // names of failing properties
};

inline std::vector<ConstraintSet> selftest_instances() {
    const int prec = 30;
    auto R = [&](const char* s) { return parse_real(s, prec); };
    std::vector<ConstraintSet> out;
    const std::vector<std::vector<const char*>> targets = {
        {"1/2"},           {"1/3", "2/3"},  {"1/3", "1/7"},      {"sqrt2"},         {"phi"},
        {"pi"},            {"e", "1/5"},    {"2/7", "3/11"},     {"sqrt3", "sqrt5"}, {"-5/4", "7/3"},
        {"0.125"},         {"22/7"},        {"sqrt2", "1/2", "1/4"}, {"3/8", "5/8"}, {"phi", "e"},
        {"1/9", "4/9", "7/9"}, {"sqrt5"}, {"13/17"},       {"pi", "sqrt2"},    {"5/6", "1/6"},
    };
    for (const auto& xs : targets) {
        std::vector<Constraint> items;
        for (const char* x : xs) items.push_back({R(x), Rational(1)});
        out.emplace_back(std::move(items));
    }
    return out;
}

inline int selftest(std::ostream& out, const SelftestHooks& hooks = {}) {
    SelftestSummary sum;
    auto record = [&](const std::string& name, bool ok, std::uint64_t checks) {
        sum.checks += checks;
        if (!ok) {
            ++sum.failures;
            sum.failed.push_back(name);
        }
        out << (ok ? "PASS " : "FAIL ") << name << " (" << checks << " checks)\n";
    };

    for (std::int64_t n : {1, 2, 25, 100}) {
        const PropertyReport rep = verify_farey_properties(FareyOrder(n));
        for (const auto& p : rep.properties) {
            if (p.skipped) {
                out << "SKIP farey N=" << n << " " << p.name << "\n";
                continue;
            }
            std::string name = "farey N=" + std::to_string(n) + " " + p.name;
            if (p.counterexample) name += " counterexample: " + *p.counterexample;
            record(name, p.passed, p.checked);
        }
    }

    struct GapCheck {
        const char* name;
        std::uint64_t checks = 0;
        bool ok = true;
    };
    GapCheck gu{"gap_U"}, gv{"gap_V"}, tu{"tail_U"}, tv{"tail_V"};
    for (std::int64_t n = 1; n <= 12; ++n) {
        const FareyOrder order(n);
        const auto seq = farey_sequence(order);
        for (std::size_t s = 0; s + 1 < seq.size(); ++s) {
            const FareyPair base(seq[s], seq[s + 1], order);
            for (int i = 0; i <= 10; ++i) {
                const BigInt bi = i;
                ++gu.checks;
                gu.ok = gu.ok && u_term(base, bi) - u_term(base, bi + 1) == hooks.gap_u(base, bi);
                ++gv.checks;
                gv.ok = gv.ok && v_term(base, bi + 1) - v_term(base, bi) == hooks.gap_v(base, bi);
                ++tu.checks;
                tu.ok = tu.ok && u_term(base, bi) - base.left() == hooks.tail_u(base, bi);
                ++tv.checks;
                tv.ok = tv.ok && base.right() - v_term(base, bi) == hooks.tail_v(base, bi);
            }
        }
    }
    for (const auto& g : {gu, gv, tu, tv}) record(std::string("chain identity ") + g.name, g.ok, g.checks);

    const std::vector<Rational> epsilons = {Rational(1, 4), Rational(1, 10), Rational(1, 50)};
    std::uint64_t cross_checks = 0;
    bool cross_ok = true;
    std::uint64_t compose_hits = 0;
    for (const auto& cs : selftest_instances()) {
        for (const auto& eps : epsilons) {
            const SolveResult brute = brute_force_solve(cs, eps);
            const ComposeOutcome comp = compose_solve(cs, eps);
            ++cross_checks;
            if (const auto* s = std::get_if<Solution>(&brute))
                cross_ok = cross_ok && check_solution(cs, eps, s->q, s->ps).overall;
            if (comp.satisfies_constraints) {
                ++compose_hits;
                ++cross_checks;
                const auto* s = std::get_if<Solution>(&brute);
                cross_ok = cross_ok && check_solution(cs, eps, comp.solution.q, comp.solution.ps).overall &&
                           s != nullptr && s->q <= comp.solution.q;
            }
        }
    }
    record("brute vs compose (" + std::to_string(compose_hits) + " compose successes)", cross_ok, cross_checks);

    out << "selftest: " << sum.checks << " checks, " << sum.failures << " failures\n";
    for (const auto& f : sum.failed) out << "failed: " << f << "\n";
    return sum.failures == 0 ? 0 : 1;
}

}  // namespace farey_approx
