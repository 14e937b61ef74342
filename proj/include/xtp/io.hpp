#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "xtp/catalog.hpp"
#include "xtp/error.hpp"
#include "xtp/matrix.hpp"
#include "xtp/polynomial.hpp"
#include "xtp/series.hpp"
#include "xtp/total_positivity.hpp"
#include "xtp/triangle.hpp"
#include "xtp/weight_dsl.hpp"

namespace xtp {

using Json = nlohmann::json;

// ---------------------------------------------------------------------------
// Polynomial <-> JSON
// {"vars":["q"],"terms":[{"e":[2],"c":"1"},...]}; coefficients are decimal
// strings so arbitrary-precision values survive the round trip.
// ---------------------------------------------------------------------------

inline Json polynomial_to_json(const Polynomial& f) {
    Json j;
    j["vars"] = f.vars()->names();
    Json terms = Json::array();
    for (const auto& [m, c] : f.terms()) {
        Json t;
        t["e"] = m.exps;
        t["c"] = c.str();
        terms.push_back(std::move(t));
    }
    j["terms"] = std::move(terms);
    return j;
}

namespace io_detail {

inline Int coeff_from_json(const Json& c) {
    try {
        if (c.is_string()) return Int(c.get<std::string>());
        if (c.is_number_integer()) return Int(c.get<long long>());
    } catch (const std::exception&) {
        throw ValueError("polynomial JSON: bad coefficient '" + c.dump() + "'");
    }
    throw ValueError("polynomial JSON: coefficient must be a decimal string");
}

inline std::vector<std::string> names_from_json(const Json& j,
                                                const char* what) {
    if (!j.is_array())
        throw ValueError(std::string(what) + " JSON: \"vars\" must be an array");
    std::vector<std::string> names;
    for (const auto& v : j) {
        if (!v.is_string())
            throw ValueError(std::string(what) +
                             " JSON: variable names must be strings");
        names.push_back(v.get<std::string>());
    }
    return names;
}

// Parse the {"terms":[...]} body of a polynomial over an already-known
// variable set.
inline Polynomial terms_from_json(const Json& j, const VarSetPtr& vars) {
    if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array())
        throw ValueError("polynomial JSON: expected an object with a \"terms\" array");
    Polynomial f(vars);
    for (const auto& t : j["terms"]) {
        if (!t.is_object() || !t.contains("e") || !t.contains("c") ||
            !t["e"].is_array())
            throw ValueError(
                "polynomial JSON: each term needs an exponent array \"e\" and a "
                "coefficient \"c\"");
        if (t["e"].size() != vars->arity())
            throw ValueError("polynomial JSON: exponent vector length " +
                             std::to_string(t["e"].size()) + " does not match " +
                             std::to_string(vars->arity()) + " variables");
        Monomial m(vars->arity());
        for (std::size_t i = 0; i < vars->arity(); ++i) {
            const auto& e = t["e"][i];
            if (!e.is_number_integer() || e.get<long long>() < 0)
                throw ValueError("polynomial JSON: exponents must be nonnegative integers");
            m.exps[i] = static_cast<std::uint32_t>(e.get<long long>());
        }
        f += Polynomial::from_term(vars, std::move(m), coeff_from_json(t["c"]));
    }
    return f;
}

} // namespace io_detail

// `vars` optional override: when given, the object's own "vars" (if any) must
// agree with it; entries inside matrix files rely on this to omit "vars".
inline Polynomial polynomial_from_json(const Json& j, VarSetPtr vars = nullptr) {
    if (!j.is_object())
        throw ValueError("polynomial JSON: expected an object");
    if (j.contains("vars")) {
        auto names = io_detail::names_from_json(j["vars"], "polynomial");
        if (vars) {
            if (names != vars->names())
                throw ValueError("polynomial JSON: \"vars\" disagrees with the "
                                 "enclosing document");
        } else {
            vars = make_varset(names);
        }
    }
    if (!vars)
        throw ValueError("polynomial JSON: missing \"vars\"");
    return io_detail::terms_from_json(j, vars);
}

// ---------------------------------------------------------------------------
// Weight system <-> JSON: {"vars":[...], "r":"...", "s":"...", "t":"..."}
// with the weight formulas in their guarded-clause text form.
// ---------------------------------------------------------------------------

inline Json weights_to_json(const WeightSystem& ws) {
    Json j;
    j["vars"] = ws.vars()->names();
    j["r"] = ws.r_formula().to_string();
    j["s"] = ws.s_formula().to_string();
    j["t"] = ws.t_formula().to_string();
    return j;
}

inline WeightSystem weights_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("vars"))
        throw ValueError("weight-system JSON: expected an object with \"vars\"");
    for (const char* key : {"r", "s", "t"})
        if (!j.contains(key) || !j[key].is_string())
            throw ValueError(std::string("weight-system JSON: missing text field \"") +
                             key + "\"");
    auto vars = make_varset(io_detail::names_from_json(j["vars"], "weight-system"));
    return WeightSystem::from_texts(vars, j["r"].get<std::string>(),
                                    j["s"].get<std::string>(),
                                    j["t"].get<std::string>());
}

// ---------------------------------------------------------------------------
// Matrix <-> JSON: {"vars":[...], "entries":[[...]]} where each entry is a
// polynomial JSON object (its "vars" may be omitted) or a polynomial text
// string over the matrix's variables.
// ---------------------------------------------------------------------------

inline Json matrix_to_json(const PolyMatrix& m) {
    Json j;
    j["vars"] = m.vars()->names();
    Json entries = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t k = 0; k < m.cols(); ++k) {
            Json cell = polynomial_to_json(m.at(i, k));
            cell.erase("vars"); // stated once at matrix level
            row.push_back(std::move(cell));
        }
        entries.push_back(std::move(row));
    }
    j["entries"] = std::move(entries);
    return j;
}

inline PolyMatrix matrix_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("entries") || !j["entries"].is_array())
        throw ValueError("matrix JSON: expected an object with an \"entries\" grid");
    const Json& entries = j["entries"];
    if (entries.empty())
        throw ValueError("matrix JSON: \"entries\" must not be empty");

    VarSetPtr vars;
    if (j.contains("vars")) {
        vars = make_varset(io_detail::names_from_json(j["vars"], "matrix"));
    } else {
        // fall back to the first entry that carries its own variable list
        for (const auto& row : entries)
            for (const auto& cell : row)
                if (cell.is_object() && cell.contains("vars")) {
                    vars = make_varset(
                        io_detail::names_from_json(cell["vars"], "matrix"));
                    break;
                }
        if (!vars) vars = make_varset({});
    }

    std::size_t cols = entries.front().size();
    if (cols == 0) throw ValueError("matrix JSON: rows must not be empty");
    PolyMatrix m(vars, entries.size(), cols);
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const Json& row = entries[i];
        if (!row.is_array() || row.size() != cols)
            throw ValueError("matrix JSON: row " + std::to_string(i) +
                             " is not a list of " + std::to_string(cols) +
                             " entries");
        for (std::size_t k = 0; k < cols; ++k) {
            const Json& cell = row[k];
            if (cell.is_string()) {
                m.at(i, k) = Polynomial::parse(cell.get<std::string>(), vars);
            } else {
                m.at(i, k) = polynomial_from_json(cell, vars);
            }
        }
    }
    return m;
}

// ---------------------------------------------------------------------------
// Reports and exports (one direction: to JSON)
// ---------------------------------------------------------------------------

inline Json tp_report_to_json(const TPReport& rep) {
    Json j;
    j["verdict"] = rep.verdict_string();
    j["order_checked"] = rep.order_checked;
    Json violations = Json::array();
    for (const auto& v : rep.violations) {
        Json e;
        e["rows"] = v.rows;
        e["cols"] = v.cols;
        e["det"] = v.det.to_string(TextStyle::Compact);
        violations.push_back(std::move(e));
    }
    j["violations"] = std::move(violations);
    j["minors_evaluated"] = rep.minors_evaluated;
    return j;
}

inline Json series_to_json(const PolySeries& s) {
    Json j = Json::array();
    for (const auto& c : s.coeffs) j.push_back(polynomial_to_json(c));
    return j;
}

inline Json triangle_to_json(const RecursiveTriangle& tri) {
    Json j = Json::array();
    for (const auto& row : tri.rows) {
        Json r = Json::array();
        for (const auto& f : row) r.push_back(polynomial_to_json(f));
        j.push_back(std::move(r));
    }
    return j;
}

// Integer triangle as CSV, one row per line, after substituting `at` for
// every variable.
inline std::string triangle_csv(const RecursiveTriangle& tri,
                                const std::map<std::string, Int>& at) {
    std::string out;
    for (const auto& row : tri.rows) {
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (k) out += ",";
            out += row[k].evaluate(at).str();
        }
        out += "\n";
    }
    return out;
}

inline Json suite_report_to_json(const SuiteReport& rep) {
    Json j;
    j["preset"] = rep.preset;
    j["depth"] = rep.depth;
    j["all_pass"] = rep.all_pass();
    Json checks = Json::array();
    for (const auto& c : rep.checks) {
        Json e;
        e["name"] = c.name;
        e["pass"] = c.pass;
        e["detail"] = c.detail;
        checks.push_back(std::move(e));
    }
    j["checks"] = std::move(checks);
    return j;
}

// ---------------------------------------------------------------------------
// File helpers
// ---------------------------------------------------------------------------

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValueError("cannot open file: " + path);
    try {
        Json j;
        in >> j;
        return j;
    } catch (const Json::exception& e) {
        throw ValueError("invalid JSON in " + path + ": " + e.what());
    }
}

} // namespace xtp
