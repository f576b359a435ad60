#pragma once

// Constraint files and JSON rendering of reports.
//
// Constraint file: UTF-8 text, one "X T" pair per line, X anything
// parse_real accepts and T a positive fraction or decimal. '#' starts a
// comment; blank lines are ignored.

#include "farey_approx/farey.hpp"
#include "farey_approx/mediant_chain.hpp"
#include "farey_approx/parse.hpp"
#include "farey_approx/simultaneous.hpp"
#include "farey_approx/threshold.hpp"

#include <json.hpp>

#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

namespace farey_approx {

using Json = nlohmann::ordered_json;

inline ConstraintSet read_constraints(std::istream& in, int precision = kDefaultPrecision) {
    std::vector<Constraint> items;
    std::string line;
    for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        std::string xs;
        std::string ts;
        std::string extra;
        if (!(fields >> xs)) continue;
        const std::string where = "line " + std::to_string(lineno) + ": ";
        if (!(fields >> ts)) throw ParseError(where + "expected 'X T', found only one field");
        if (fields >> extra) throw ParseError(where + "unexpected trailing field '" + extra + "'");
        try {
            Rational x = parse_real(xs, precision);
            if (is_named_constant(ts) || (ts.size() > 1 && ts[0] == '-' && is_named_constant(ts.substr(1))))
                throw ParseError("tolerance weight must be a fraction or decimal");
            Rational t = parse_real(ts, precision);
            if (t.sign() <= 0) throw ParseError("tolerance weight must be positive, got " + t.str());
            items.push_back({std::move(x), std::move(t)});
        } catch (const std::invalid_argument& e) {
            throw ParseError(where + e.what());
        }
    }
    if (items.empty()) throw ParseError("constraint file has no constraints");
    return ConstraintSet(std::move(items));
}

inline ConstraintSet read_constraints_file(const std::string& path, int precision = kDefaultPrecision) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open input file '" + path + "'");
    return read_constraints(in, precision);
}

inline Json to_json(const Rational& r) { return r.str(); }

// Arbitrary-precision integers are rendered as decimal strings.
inline Json to_json(const BigInt& v) { return v.str(); }

inline Json to_json(const Solution& s) {
    Json ps = Json::array();
    for (const auto& p : s.ps) ps.push_back(p.str());
    Json errs = Json::array();
    for (const auto& e : s.errors) errs.push_back(e.str());
    return Json{{"q", s.q.str()},
                {"ps", std::move(ps)},
                {"errors", std::move(errs)},
                {"epsilon", s.epsilon.str()},
                {"method", to_string(s.method)}};
}

inline Json to_json(const CheckReport& c) {
    Json items = Json::array();
    for (const auto& ic : c.per_item)
        items.push_back(Json{{"error_ok", ic.error_ok}, {"exact_error", ic.exact_error.str()}, {"bound", ic.bound.str()}});
    return Json{{"per_item", std::move(items)}, {"denom_ok", c.denom_ok}, {"overall", c.overall}};
}

inline Json to_json(const SolveResult& r) {
    if (const auto* s = std::get_if<Solution>(&r)) return Json{{"status", "feasible"}, {"solution", to_json(*s)}};
    return Json{{"status", "infeasible"}, {"reason", std::get<Infeasible>(r).reason}};
}

inline Json to_json(const ThresholdReport& rep) {
    Json grid = Json::array();
    Json feasible = Json::array();
    Json witnesses = Json::array();
    for (std::size_t i = 0; i < rep.grid.size(); ++i) {
        grid.push_back(rep.grid[i].str());
        feasible.push_back(static_cast<bool>(rep.feasible[i]));
        witnesses.push_back(rep.witnesses[i] ? to_json(*rep.witnesses[i]) : Json(nullptr));
    }
    return Json{{"grid", std::move(grid)},
                {"feasible", std::move(feasible)},
                {"epsilon0", rep.epsilon0 ? Json(rep.epsilon0->str()) : Json(nullptr)},
                {"witnesses", std::move(witnesses)}};
}

inline Json to_json(const ComparisonReport& rep) {
    return Json{{"epsilon", rep.epsilon.str()},
                {"constrained", to_json(rep.constrained)},
                {"dirichlet_T", rep.dirichlet_T.str()},
                {"dirichlet", to_json(rep.dirichlet)},
                {"q_bound_constrained", rep.q_bound_constrained.str()},
                {"q_bound_dirichlet", rep.q_bound_dirichlet.str()},
                {"max_error_constrained",
                 rep.max_error_constrained ? Json(rep.max_error_constrained->str()) : Json(nullptr)},
                {"max_error_dirichlet", rep.max_error_dirichlet.str()}};
}

inline Json to_json(const Bracket& b) {
    if (const auto* hit = std::get_if<ExactHit>(&b))
        return Json{{"kind", "exact"}, {"left", hit->value.str()}, {"right", hit->value.str()}};
    const auto& p = std::get<FareyPair>(b);
    return Json{{"kind", "pair"}, {"left", p.left().str()}, {"right", p.right().str()}};
}

inline Json to_json(const PropertyReport& rep) {
    Json props = Json::array();
    for (const auto& p : rep.properties) {
        props.push_back(Json{{"name", p.name},
                             {"passed", p.passed},
                             {"skipped", p.skipped},
                             {"checked", p.checked},
                             {"counterexample", p.counterexample ? Json(*p.counterexample) : Json(nullptr)}});
    }
    return Json{{"order", rep.order}, {"elements", rep.elements}, {"properties", std::move(props)}};
}

}  // namespace farey_approx
