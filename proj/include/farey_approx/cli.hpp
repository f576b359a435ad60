#pragma once

// Command-line front end. run() is the whole program minus process setup so
// it can be driven in-process by tests.
//
// Exit codes: 0 feasible / complete, 2 infeasible, 1 usage, input or
// internal error (including an exhausted scan budget).

#include "farey_approx/farey.hpp"
#include "farey_approx/io.hpp"
#include "farey_approx/mediant_chain.hpp"
#include "farey_approx/parse.hpp"
#include "farey_approx/selftest.hpp"
#include "farey_approx/simultaneous.hpp"
#include "farey_approx/threshold.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace farey_approx::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitInfeasible = 2;

inline constexpr const char* kMaxScanEnv = "FAREY_APPROX_MAX_SCAN";

inline std::uint64_t max_scan_from_env() {
    const char* v = std::getenv(kMaxScanEnv);
    if (v == nullptr || *v == '\0') return kDefaultMaxScan;
    BigInt n;
    if (!farey_approx::detail::parse_integer(v, n) || n < 1 || n > std::numeric_limits<std::uint64_t>::max())
        throw std::invalid_argument(std::string(kMaxScanEnv) + " must be a positive integer, got '" + v + "'");
    return n.convert_to<std::uint64_t>();
}

namespace detail {

inline Json constraints_json(const ConstraintSet& cs) {
    Json arr = Json::array();
    for (const auto& c : cs.items()) arr.push_back(Json{{"x", c.x.str()}, {"t", c.t.str()}});
    return arr;
}

inline void emit(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

inline std::vector<Rational> parse_grid(const std::string& text, int precision) {
    std::vector<Rational> grid;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) grid.push_back(parse_real(item, precision));
    if (grid.empty()) throw std::invalid_argument("--grid is empty");
    return grid;
}

inline std::string csv_row(const Rational& eps, bool feasible, const std::optional<Solution>& s) {
    std::string row = eps.str() + "," + (feasible ? "true" : "false") + ",";
    if (s) {
        row += s->q.str() + ",";
        for (std::size_t i = 0; i < s->ps.size(); ++i) row += (i ? ";" : "") + s->ps[i].str();
        row += "," + s->max_error().str();
    } else {
        row += ",,";
    }
    return row;
}

}  // namespace detail

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact simultaneous rational approximation under joint error/denominator constraints"};
    app.require_subcommand(1);

    int precision = kDefaultPrecision;
    auto add_precision = [&](CLI::App* sub) {
        sub->add_option("--precision", precision, "decimal digits for named constants")
            ->check(CLI::Range(0, kMaxPrecision));
    };

    // farey
    std::int64_t order = 0;
    std::string from_text = "0";
    std::string to_text = "1";
    auto* farey = app.add_subcommand("farey", "list F_N in ascending order");
    farey->add_option("--order", order, "Farey order N")->required();
    farey->add_option("--from", from_text, "lower end of the listed range");
    farey->add_option("--to", to_text, "upper end of the listed range");

    // neighbors
    std::string x_text;
    auto* neighbors = app.add_subcommand("neighbors", "consecutive F_N pair around x");
    neighbors->add_option("--x", x_text, "value in [0, 1]")->required();
    neighbors->add_option("--order", order, "Farey order N")->required();
    add_precision(neighbors);

    // subdivide
    std::string lo_text;
    std::string hi_text;
    std::string gap_text;
    std::string max_denom_text;
    std::uint64_t max_points = 100000;
    auto* subdiv = app.add_subcommand("subdivide", "gap-bounded mediant subdivision of [lo, hi]");
    subdiv->add_option("--lo", lo_text, "left end, a member of F_N")->required();
    subdiv->add_option("--hi", hi_text, "right end, a member of F_N")->required();
    subdiv->add_option("--order", order, "Farey order N")->required();
    subdiv->add_option("--gap", gap_text, "gap bound")->required();
    subdiv->add_option("--max-denom", max_denom_text, "denominator bound (default: unbounded)");
    subdiv->add_option("--max-points", max_points, "cap on emitted points")->check(CLI::PositiveNumber);

    // solve
    std::string input;
    std::string eps_text;
    std::string method = "brute";
    bool strict = false;
    std::string stage_order_text;
    auto* solve = app.add_subcommand("solve", "find a common denominator meeting the constraints");
    solve->add_option("--input", input, "constraint file")->required();
    solve->add_option("--epsilon", eps_text, "scale eps")->required();
    solve->add_option("--method", method, "brute or compose")->check(CLI::IsMember({"brute", "compose"}));
    solve->add_flag("--strict", strict, "require strict error inequalities");
    solve->add_option("--order", stage_order_text, "compose: Farey order per stage (default ceil(1/eps))");
    add_precision(solve);

    // dirichlet
    std::string T_text;
    auto* dirichlet = app.add_subcommand("dirichlet", "Dirichlet baseline: least q < T^n with ||q x_i|| <= 1/T");
    dirichlet->add_option("--input", input, "constraint file")->required();
    dirichlet->add_option("--T", T_text, "integer T >= 2")->required();
    add_precision(dirichlet);

    // sweep
    std::string grid_text;
    std::string eps_max_text;
    std::string eps_min_text;
    std::uint64_t points = 0;
    bool geometric = false;
    bool csv = false;
    unsigned threads = 0;
    auto* sweep = app.add_subcommand("sweep", "feasibility over a descending eps grid");
    sweep->add_option("--input", input, "constraint file")->required();
    auto* grid_opt = sweep->add_option("--grid", grid_text, "comma-separated descending eps values");
    auto* max_opt = sweep->add_option("--eps-max", eps_max_text, "largest eps");
    auto* min_opt = sweep->add_option("--eps-min", eps_min_text, "smallest eps");
    auto* pts_opt = sweep->add_option("--points", points, "number of grid points");
    sweep->add_flag("--geometric", geometric, "geometric rather than linear spacing");
    sweep->add_flag("--csv", csv, "one CSV row per grid point");
    sweep->add_option("--threads", threads, "worker threads (default: hardware)");
    grid_opt->excludes(max_opt)->excludes(min_opt)->excludes(pts_opt);
    max_opt->needs(min_opt)->needs(pts_opt);
    add_precision(sweep);

    // compare
    auto* cmp = app.add_subcommand("compare", "constrained oracle vs Dirichlet baseline (uniform t)");
    cmp->add_option("--input", input, "constraint file")->required();
    cmp->add_option("--epsilon", eps_text, "scale eps")->required();
    cmp->add_option("--T", T_text, "Dirichlet T >= 2")->required();
    add_precision(cmp);

    auto* self = app.add_subcommand("selftest", "run the packaged property and cross-checks");

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitError;
    }

    try {
        const std::uint64_t max_scan = max_scan_from_env();
        auto parse_int = [&](const std::string& text, const char* what) {
            BigInt v;
            if (!farey_approx::detail::parse_integer(text, v))
                throw std::invalid_argument(std::string(what) + " must be an integer, got '" + text + "'");
            return v;
        };
        auto positive = [](const Rational& r, const char* what) {
            if (r.sign() <= 0) throw std::invalid_argument(std::string(what) + " must be positive");
            return r;
        };

        if (*farey) {
            const FareyOrder fo(order);
            const Rational from = parse_real(from_text, precision);
            const Rational to = parse_real(to_text, precision);
            auto stream = FareyStream::starting_at(from, fo);
            while (auto r = stream.next()) {
                if (*r > to) break;
                out << r->str() << "\n";
            }
            return kExitOk;
        }

        if (*neighbors) {
            const Bracket b = farey_neighbors(parse_real(x_text, precision), FareyOrder(order));
            detail::emit(out, to_json(b));
            return kExitOk;
        }

        if (*subdiv) {
            const FareyOrder fo(order);
            const Rational gap = positive(parse_real(gap_text), "--gap");
            BigInt denom_bound;
            if (max_denom_text.empty()) {
                denom_bound = BigInt(1) << 256;
            } else {
                denom_bound = parse_int(max_denom_text, "--max-denom");
                if (denom_bound < 1) throw std::invalid_argument("--max-denom must be positive");
            }
            const auto res =
                subdivide_range(parse_real(lo_text), parse_real(hi_text), fo, gap, denom_bound, max_points);
            if (const auto* bad = std::get_if<Infeasible>(&res)) {
                detail::emit(out, Json{{"status", "infeasible"}, {"reason", bad->reason}});
                return kExitInfeasible;
            }
            const auto& sub = std::get<Subdivision>(res);
            Rational max_gap;
            Rational min_gap = sub.points.back() - sub.points.front();
            BigInt max_den = 1;
            for (std::size_t i = 0; i < sub.points.size(); ++i) {
                out << sub.points[i].str() << "\n";
                if (sub.points[i].den() > max_den) max_den = sub.points[i].den();
                if (i == 0) continue;
                const Rational g = sub.points[i] - sub.points[i - 1];
                if (g > max_gap) max_gap = g;
                if (g < min_gap) min_gap = g;
            }
            Json trailer{{"status", "feasible"},
                         {"points", sub.points.size()},
                         {"gap_bound", sub.gap_bound.str()},
                         {"max_gap", max_gap.str()},
                         {"min_gap", min_gap.str()},
                         {"max_denominator", max_den.str()}};
            if (!max_denom_text.empty()) trailer["denom_bound"] = sub.denom_bound.str();
            out << trailer.dump() << "\n";
            return kExitOk;
        }

        if (*solve) {
            const ConstraintSet cs = read_constraints_file(input, precision);
            const Rational eps = positive(parse_real(eps_text, precision), "--epsilon");
            Json j{{"command", "solve"},
                   {"precision", precision},
                   {"constraints", detail::constraints_json(cs)},
                   {"epsilon", eps.str()},
                   {"method", method}};
            const Inequality mode = strict ? Inequality::strict : Inequality::non_strict;
            if (method == "brute") {
                const SolveResult r = brute_force_solve(cs, eps, {max_scan, mode});
                j["strict"] = strict;
                j.update(to_json(r));
                detail::emit(out, j);
                return std::holds_alternative<Solution>(r) ? kExitOk : kExitInfeasible;
            }
            ComposeOptions copt;
            if (!stage_order_text.empty()) copt.order = parse_int(stage_order_text, "--order");
            const ComposeOutcome c = compose_solve(cs, eps, copt);
            const CheckReport check = check_solution(cs, eps, c.solution.q, c.solution.ps, mode);
            j["strict"] = strict;
            j["order"] = c.order.str();
            j["heuristic"] = true;
            j["note"] = "compose is a heuristic with no finite-scale guarantee; satisfies_constraints reports the "
                        "exact check of this result";
            j["satisfies_constraints"] = check.overall;
            j["solution"] = to_json(c.solution);
            j["check"] = to_json(check);
            detail::emit(out, j);
            return check.overall ? kExitOk : kExitInfeasible;
        }

        if (*dirichlet) {
            const ConstraintSet cs = read_constraints_file(input, precision);
            const BigInt T = parse_int(T_text, "--T");
            const Solution s = dirichlet_solve(cs.xs(), T, max_scan);
            detail::emit(out, Json{{"command", "dirichlet"},
                                   {"precision", precision},
                                   {"constraints", detail::constraints_json(cs)},
                                   {"T", T.str()},
                                   {"q_bound", boost::multiprecision::pow(T, static_cast<unsigned>(cs.size())).str()},
                                   {"solution", to_json(s)}});
            return kExitOk;
        }

        if (*sweep) {
            const ConstraintSet cs = read_constraints_file(input, precision);
            std::vector<Rational> grid;
            if (!grid_text.empty()) {
                grid = detail::parse_grid(grid_text, precision);
            } else if (!eps_max_text.empty()) {
                const Rational hi = parse_real(eps_max_text, precision);
                const Rational lo = parse_real(eps_min_text, precision);
                grid = geometric ? geometric_grid(hi, lo, points, static_cast<unsigned>(precision))
                                 : linear_grid(hi, lo, points);
            } else {
                throw std::invalid_argument("sweep needs --grid or --eps-max/--eps-min/--points");
            }
            ThresholdOptions topt;
            topt.scan.max_scan = max_scan;
            topt.threads = threads;
            const ThresholdReport rep = epsilon_threshold(cs, grid, topt);
            if (csv) {
                out << "epsilon,feasible,q,ps,max_error\n";
                for (std::size_t i = 0; i < rep.grid.size(); ++i)
                    out << detail::csv_row(rep.grid[i], rep.feasible[i], rep.witnesses[i]) << "\n";
            } else {
                Json j{{"command", "sweep"}, {"precision", precision}, {"constraints", detail::constraints_json(cs)}};
                j.update(to_json(rep));
                detail::emit(out, j);
            }
            return rep.epsilon0 ? kExitOk : kExitInfeasible;
        }

        if (*cmp) {
            const ConstraintSet cs = read_constraints_file(input, precision);
            const Rational eps = positive(parse_real(eps_text, precision), "--epsilon");
            const BigInt T = parse_int(T_text, "--T");
            const ComparisonReport rep = compare(cs, eps, T, max_scan);
            Json j{{"command", "compare"}, {"precision", precision}, {"constraints", detail::constraints_json(cs)}};
            j.update(to_json(rep));
            detail::emit(out, j);
            return std::holds_alternative<Solution>(rep.constrained) ? kExitOk : kExitInfeasible;
        }

        if (*self) return selftest(out) == 0 ? kExitOk : kExitError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(std::move(args), out, err);
}

}  // namespace farey_approx::cli
