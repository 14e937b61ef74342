// Acceptance gate: twelve end-to-end checks, one line of output each.
//
// Every check recomputes its target from first principles (triangle
// recursion, path enumeration, permutation statistics, series solving) and
// compares against frozen reference data.  A failing line prints the exact
// discrepancy; the binary exits nonzero if any line fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "xtp/homogenize.hpp"
#include "xtp/io.hpp"

#include "../support/random_poly.hpp"
#include "../support/random_weights.hpp"

using namespace xtp;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string compact(const Polynomial& f) { return f.to_string(TextStyle::Compact); }

std::string render_ints(const std::vector<Int>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + xs[i].str();
    return s;
}

std::string render_set(const std::vector<std::size_t>& idx) {
    std::string s = "{";
    for (std::size_t i = 0; i < idx.size(); ++i)
        s += (i ? "," : "") + std::to_string(idx[i]);
    return s + "}";
}

std::vector<Int> eval_column(const std::vector<Polynomial>& col,
                             const std::map<std::string, Int>& at,
                             std::size_t len) {
    std::vector<Int> out;
    for (std::size_t n = 0; n < len; ++n) out.push_back(col[n].evaluate(at));
    return out;
}

// ---------------------------------------------------------------------------
// 1. Catalogued triangle rows are reproduced entry for entry.
// ---------------------------------------------------------------------------

Outcome criterion_triangle_fidelity() {
    std::size_t entries = 0;
    for (std::string name : {"ex3_1", "ex3_2", "ex3_3"}) {
        auto pre = make_preset(name);
        if (pre.displayed_rows.empty())
            return {false, name + " has no catalogued rows"};
        auto tri = build_triangle(pre.weights, pre.displayed_rows.size() - 1);
        for (std::size_t n = 0; n < pre.displayed_rows.size(); ++n) {
            for (std::size_t k = 0; k < pre.displayed_rows[n].size(); ++k) {
                auto expect = pre.displayed_rows[n][k];
                if (pre.displayed_rows_exchanged)
                    expect = exchange_variables(expect,
                                                pre.displayed_rows_exchanged->first,
                                                pre.displayed_rows_exchanged->second);
                if (tri.at(n, k) != expect)
                    return {false, name + " entry (" + std::to_string(n) + "," +
                                       std::to_string(k) + "): computed " +
                                       compact(tri.at(n, k)) + ", catalogued " +
                                       compact(expect)};
                ++entries;
            }
        }
    }
    // spot-check the one entry pinned explicitly
    auto tri = build_triangle(make_preset("ex3_1").weights, 3);
    auto want = Polynomial::parse("3+5q+q^2", tri.at(3, 1).vars());
    if (tri.at(3, 1) != want)
        return {false, "ex3_1 entry (3,1) is " + compact(tri.at(3, 1))};
    return {true, std::to_string(entries) +
                      " catalogued entries reproduced exactly (ex3_3 after its "
                      "documented p<->q exchange)"};
}

// ---------------------------------------------------------------------------
// 2. Counterexample Hankel regression.
// ---------------------------------------------------------------------------

Outcome criterion_counterexample_regression() {
    const std::vector<std::pair<long long, long long>> pairs{
        {0, 0}, {1, 1}, {1, 2}, {2, 3}};
    for (auto [a, b] : pairs) {
        auto det = counterexample_regression(a, b);
        auto displayed = counterexample_displayed_determinant(a, b);
        if (det != displayed)
            return {false, "3x3 determinant mismatch at a=" + std::to_string(a) +
                               ", b=" + std::to_string(b) + ": computed " +
                               compact(det)};
    }
    // Second clause: the refutation must be reported with the full 3x3 minor
    // as the *first* violation.  That is unattainable under canonical
    // increasing-order enumeration: a negative 2x2 minor exists and every
    // order-2 minor precedes every order-3 minor.  Report what actually
    // happens rather than weakening the enumeration order.
    std::string first_desc;
    bool all_fail = true, any_3x3_first = false;
    for (auto [a, b] : pairs) {
        auto H = hankel(counterexample_listed_column(a, b), 3);
        auto rep = check_xtp(H.matrix, {.order = 3});
        if (rep.verdict != TPVerdict::Fail) all_fail = false;
        if (!rep.violations.empty()) {
            const auto& v = rep.violations.front();
            if (v.rows.size() == 3) any_3x3_first = true;
            if (first_desc.empty())
                first_desc = "rows " + render_set(v.rows) + " cols " +
                             render_set(v.cols) + ", det " + compact(v.det);
        }
    }
    if (!all_fail)
        return {false, "a catalogued 3x3 Hankel truncation unexpectedly passed"};
    if (!any_3x3_first)
        return {false,
                "determinant equality holds for all four (a,b) pairs and every "
                "check reports fail, but the first canonical violation is the "
                "2x2 minor " + first_desc +
                    " for every pair; a 3x3 minor can never come first because "
                    "minors are enumerated in increasing order"};
    return {true, "determinant equality and first-violation shape as required"};
}

// ---------------------------------------------------------------------------
// 3. Triangle recursion agrees with direct weighted-path enumeration.
// ---------------------------------------------------------------------------

Outcome criterion_oracle_equivalence() {
    std::size_t pairs = 0;
    auto check_system = [&](const WeightSystem& ws,
                            const std::string& label) -> std::string {
        auto tri = build_triangle(ws, 8);
        for (std::size_t n = 0; n <= 8; ++n)
            for (std::size_t k = 0; k <= n; ++k) {
                if (tri.at(n, k) != motzkin_oracle(ws, n, k))
                    return label + " disagrees at (" + std::to_string(n) + "," +
                           std::to_string(k) + ")";
                ++pairs;
            }
        return "";
    };
    for (const auto& name : preset_names())
        if (auto err = check_system(make_preset(name).weights, name); !err.empty())
            return {false, err};
    test_support::Rng rng(20260815);
    auto Q = make_varset({"q"});
    auto PQ = make_varset({"p", "q"});
    for (int trial = 0; trial < 50; ++trial) {
        auto vars = trial % 2 ? PQ : Q;
        auto ws = test_support::random_weight_system(rng, vars, trial % 4 < 2);
        if (auto err = check_system(ws, "random system " + std::to_string(trial));
            !err.empty())
            return {false, err};
    }
    return {true, std::to_string(preset_names().size()) +
                      " presets and 50 random weight systems agree with path "
                      "enumeration on all " +
                      std::to_string(pairs) + " entries with n <= 8"};
}

// ---------------------------------------------------------------------------
// 4. Hankel factorization H = M T M^t.
// ---------------------------------------------------------------------------

Outcome criterion_factorization() {
    std::size_t checks = 0;
    for (const auto& name : preset_names()) {
        auto ws = make_preset(name).weights;
        for (std::size_t N = 1; N <= 8; ++N) {
            if (!verify_factorization(ws, N))
                return {false, name + " fails the factorization at N=" +
                                   std::to_string(N)};
            ++checks;
        }
    }
    return {true, "H = M T M^t verified exactly for N = 1..8 on all " +
                      std::to_string(preset_names().size()) + " presets (" +
                      std::to_string(checks) + " factorizations)"};
}

// ---------------------------------------------------------------------------
// 5. Certificate chain on randomly constructed compliant systems.
// ---------------------------------------------------------------------------

Outcome criterion_certificate_chain() {
    test_support::Rng rng(51515);
    auto Q = make_varset({"q"});
    auto PQ = make_varset({"p", "q"});
    for (int trial = 0; trial < 50; ++trial) {
        auto vars = trial % 2 ? PQ : Q;
        // s_0 = 1 + u0, s_k = 1 + t_k + u_k makes all three weight
        // inequalities hold by construction (slack polynomials u_* >= 0).
        auto t1 = test_support::random_nonneg_nonzero(rng, vars, 1, 2);
        auto t2 = test_support::random_nonneg_nonzero(rng, vars, 1, 2);
        auto u0 = test_support::random_poly(rng, vars, 1, 2, false);
        auto u1 = test_support::random_poly(rng, vars, 1, 2, false);
        auto u2 = test_support::random_poly(rng, vars, 1, 2, false);
        auto X = [](const Polynomial& f) {
            return f.to_string(TextStyle::ExplicitOps);
        };
        auto ws = WeightSystem::from_texts(
            vars, "1",
            "k=0: 1 + " + X(u0) + "; k=1: 1 + " + X(t1) + " + " + X(u1) +
                "; else: 1 + " + X(t2) + " + " + X(u2),
            "k=1: " + X(t1) + "; else: " + X(t2));
        std::string label = "constructed system " + std::to_string(trial);
        if (!check_weight_conditions(ws, 6).pass)
            return {false, label + " violates the weight inequalities "
                               "(construction bug)"};
        if (check_tridiagonal_xtp(jacobi_matrix(ws, 6)).verdict == TPVerdict::Fail)
            return {false, label + ": tridiagonal truncation J_6 failed"};
        auto col = build_triangle(ws, 8).first_column();
        auto H = hankel(col, 5);
        if (check_xtp(H.matrix, {.order = 4}).verdict == TPVerdict::Fail)
            return {false, label + ": Hankel truncation N=5 failed at order 4"};
    }
    return {true, "50 constructed systems satisfy the weight inequalities, "
                  "pass J_6 tridiagonal positivity, and pass the N=5 Hankel "
                  "check at order 4"};
}

// ---------------------------------------------------------------------------
// 6. Leading principal minors equal two-variable integers.
// ---------------------------------------------------------------------------

Outcome criterion_pq_minor_identity() {
    for (unsigned long u : {3ul, 4ul, 5ul, 6ul})
        if (!leading_minor_pq_identity(u, 8))
            return {false, "identity fails at u=" + std::to_string(u)};
    return {true, "k-th leading principal minor equals [k+u-1] for "
                  "u in {3,4,5,6}, k <= 8"};
}

// ---------------------------------------------------------------------------
// 7. Three-term recursion of the leading-minor sequence.
// ---------------------------------------------------------------------------

Outcome criterion_pk_recursion() {
    if (!leading_minor_recursion(10)) return {false, "recursion fails by k=10"};
    return {true, "P_k = (p+q+r)P_(k-1) - q(p+r)P_(k-2) holds for k <= 10 and "
                  "every P_k is coefficient-wise nonnegative"};
}

// ---------------------------------------------------------------------------
// 8. Column generating functions.
// ---------------------------------------------------------------------------

Outcome criterion_generating_functions() {
    for (std::string name :
         {"ex3_1", "ex3_2", "ex3_3", "ex3_4", "ex3_5", "ex3_6", "ex3_7"}) {
        auto pre = make_preset(name); // ex3_4 defaults to u=3
        if (!pre.riordan) return {false, name + " lacks a series description"};
        if (!verify_riordan_column(*pre.riordan, pre.weights, 10))
            return {false, name + ": series coefficients diverge from the "
                               "column by T=10"};
    }
    return {true, "series solution matches the first column through T=10 for "
                  "ex3_1..ex3_7 (ex3_4 at u=3)"};
}

// ---------------------------------------------------------------------------
// 9. Integer specializations against catalogued prefixes.
// ---------------------------------------------------------------------------

Outcome criterion_integer_specializations() {
    struct Fixture {
        std::string preset;
        std::map<std::string, Int> at;
        std::vector<Int> want;
    };
    auto I = [](std::initializer_list<long long> xs) {
        return std::vector<Int>(xs.begin(), xs.end());
    };
    const std::vector<Fixture> itemized{
        {"ex3_1", {{"q", 1}}, I({1, 1, 2, 5, 14, 42, 132})},
        {"ex3_2", {{"q", 1}}, I({1, 3, 10, 36, 137})},
        {"ex3_4", {{"p", 1}, {"q", 1}}, I({1, 3, 11, 43, 173, 707, 2917})},
        {"ex3_5", {{"p", 1}, {"q", 1}, {"r", 2}},
         I({1, 3, 12, 57, 300, 1686, 9912})},
        {"ex3_6", {{"p", 1}, {"q", 1}}, I({1, 2, 6, 20, 70, 252})},
        {"ex3_6", {{"p", 2}, {"q", 1}}, I({1, 3, 13, 63, 321, 1683})},
        {"ex3_7", {{"p", 1}, {"q", 2}}, I({1, 2, 6, 22, 90, 394, 1806})},
        {"ex3_8_bell", {{"p", 2}, {"q", 1}}, I({1, 1, 3, 11, 49, 257, 1539})},
        {"ex3_8_bell", {{"p", 1}, {"q", 2}}, I({1, 2, 6, 22, 94, 454, 2430})},
    };
    for (const auto& fx : itemized) {
        auto pre = make_preset(fx.preset);
        auto col = build_triangle(pre.weights, fx.want.size() - 1).first_column();
        auto got = eval_column(col, fx.at, fx.want.size());
        if (got != fx.want)
            return {false, fx.preset + " at " + [&] {
                        std::string s;
                        for (const auto& [k, v] : fx.at)
                            s += (s.empty() ? "" : ",") + k + "=" + v.str();
                        return s;
                    }() + ": computed " + render_ints(got) + ", catalogued " +
                               render_ints(fx.want)};
    }
    // every stored specialization of the numbered families, including the
    // entries whose catalogued prefix is recorded as erroneous
    std::size_t table_entries = 0, corrected = 0;
    for (std::string name : {"ex3_1", "ex3_2", "ex3_3", "ex3_3_threshold",
                             "ex3_4", "ex3_5", "ex3_6", "ex3_7", "ex3_8_bell"}) {
        auto pre = make_preset(name);
        for (const auto& sp : pre.specializations) {
            auto col =
                build_triangle(pre.weights, sp.expected.size() - 1).first_column();
            auto got = eval_column(col, sp.assignment, sp.expected.size());
            if (got != sp.expected)
                return {false, name + ": stored specialization mismatch, "
                                   "computed " + render_ints(got)};
            ++table_entries;
            if (sp.catalogued && *sp.catalogued != sp.expected) ++corrected;
        }
    }
    // the two families sharing one catalogued prefix at p=q=2 do not in fact
    // coincide; record where they diverge
    std::map<std::string, Int> at22{{"p", 2}, {"q", 2}};
    auto nar = eval_column(
        build_triangle(make_preset("ex3_7").weights, 7).first_column(), at22, 8);
    auto bel = eval_column(
        build_triangle(make_preset("ex3_8_bell").weights, 7).first_column(), at22, 8);
    std::size_t diverge = 0;
    while (diverge < 8 && nar[diverge] == bel[diverge]) ++diverge;
    if (diverge >= 8)
        return {false, "ex3_7 and ex3_8_bell at p=q=2 coincide through n=7, "
                       "contradicting the recorded divergence"};
    std::ostringstream d;
    d << itemized.size() << " itemized prefixes and " << table_entries
      << " stored table rows match; " << corrected
      << " catalogued prefixes are asserted at their recomputed values with "
         "the discrepancy recorded; ex3_7 and ex3_8_bell share a catalogued "
         "p=q=2 prefix but diverge at n="
      << diverge << " (" << nar[diverge].str() << " vs " << bel[diverge].str()
      << ")";
    return {true, d.str()};
}

// ---------------------------------------------------------------------------
// 10. Set-partition and permutation-statistic oracles.
// ---------------------------------------------------------------------------

Outcome criterion_combinatorial_oracles() {
    // intro_bell column against Stirling sums
    auto bell = make_preset("intro_bell");
    auto Q = bell.weights.vars();
    auto btri = build_triangle(bell.weights, 10);
    for (unsigned long n = 0; n <= 10; ++n) {
        auto want = closed_form::univariate(
            [n](unsigned long k) { return stirling_oracle(n, k); }, n, Q);
        if (btri.at(n, 0) != want)
            return {false, "intro_bell column differs from Stirling sums at n=" +
                               std::to_string(n)};
    }
    // homogenized descent polynomials against two-statistic permutation
    // enumeration
    std::vector<Polynomial> useq;
    for (unsigned long n = 1; n <= 8; ++n)
        useq.push_back(eulerian_descent_polynomial(n, Q));
    auto hseq = homogenize_sequence(useq, "p");
    for (unsigned long n = 1; n <= 8; ++n)
        if (hseq[n - 1] != eulerian_oracle(n))
            return {false, "homogenized descent polynomial differs from direct "
                           "permutation enumeration at n=" + std::to_string(n)};
    // intro_eulerian column alignment: detected empirically, then asserted
    auto etri = build_triangle(make_preset("intro_eulerian").weights, 8);
    auto A = [&](unsigned long n) { return eulerian_descent_polynomial(n, Q); };
    auto q = Polynomial::variable(Q, "q");
    struct Candidate {
        std::string label;
        std::function<Polynomial(unsigned long)> value;
    };
    std::vector<Candidate> candidates{
        {"A_n", [&](unsigned long n) { return A(n); }},
        {"A_(n+1)", [&](unsigned long n) { return A(n + 1); }},
        {"q*A_n", [&](unsigned long n) { return q * A(n); }},
        {"q*A_(n+1)", [&](unsigned long n) { return q * A(n + 1); }},
    };
    const Candidate* match = nullptr;
    for (const auto& cand : candidates) {
        bool ok = true;
        for (unsigned long n = 1; ok && n <= 4; ++n)
            ok = etri.at(n, 0) == cand.value(n);
        if (ok) {
            if (match)
                return {false, "alignment ambiguous between " + match->label +
                                   " and " + cand.label};
            match = &cand;
        }
    }
    if (!match) return {false, "intro_eulerian column matches no candidate "
                               "alignment at n <= 4"};
    for (unsigned long n = 1; n <= 8; ++n)
        if (etri.at(n, 0) != match->value(n))
            return {false, "detected alignment " + match->label +
                               " breaks at n=" + std::to_string(n)};
    return {true, "intro_bell matches Stirling sums for n <= 10; homogenized "
                  "descent polynomials match two-statistic permutation "
                  "enumeration for n <= 8; intro_eulerian column aligns as "
                  "m_n = " + match->label + " (detected at n <= 4, asserted "
                  "for n <= 8)"};
}

// ---------------------------------------------------------------------------
// 11. Homogenization: worked example and lifted classical sequences.
// ---------------------------------------------------------------------------

Outcome criterion_homogenization() {
    auto X12 = make_varset({"x1", "x2"});
    auto f = Polynomial::parse("1 + x1 + x1*x2 + x1^3", X12);
    auto lifted = homogenize(f, "x0");
    auto want = Polynomial::parse("x0^3 + x0^2*x1 + x0*x1*x2 + x1^3",
                                  lifted.vars());
    if (lifted != want)
        return {false, "worked example lifts to " + compact(lifted)};

    auto Q = make_varset({"q"});
    struct Family {
        std::string label;
        std::vector<Polynomial> seq;
    };
    std::vector<Family> families;
    for (std::string name : {"intro_narayana_B", "intro_narayana_A", "intro_bell"}) {
        auto col = build_triangle(make_preset(name).weights, 6).first_column();
        families.push_back({name, std::move(col)});
    }
    std::vector<Polynomial> eul;
    for (unsigned long n = 1; n <= 7; ++n)
        eul.push_back(eulerian_descent_polynomial(n, Q));
    families.push_back({"descent polynomials (index shifted)", std::move(eul)});

    for (const auto& fam : families) {
        auto hseq = homogenize_sequence(fam.seq, "p");
        auto H = hankel(hseq, 4);
        auto rep = check_xtp(H.matrix, {.order = 4});
        if (rep.verdict == TPVerdict::Fail)
            return {false, fam.label + ": homogenized Hankel truncation N=4 "
                               "failed at order 4"};
    }
    return {true, "worked example lifts exactly; homogenized Narayana-B, "
                  "Narayana-A, Bell, and Eulerian sequences pass the N=4 "
                  "Hankel check at order 4"};
}

// ---------------------------------------------------------------------------
// 12. Truncated Hankel positivity for every catalogued family.
// ---------------------------------------------------------------------------

Outcome criterion_hankel_truncations() {
    std::size_t passed = 0;
    for (const auto& name : preset_names()) {
        if (name == "counterexample") continue;
        auto ws = make_preset(name).weights;
        auto col = build_triangle(ws, 10).first_column();
        auto H = hankel(col, 6);
        auto rep = check_xtp(H.matrix, {.order = 4, .jobs = 4});
        if (rep.verdict == TPVerdict::Fail) {
            const auto& v = rep.violations.front();
            return {false, name + ": N=6 Hankel truncation fails at order 4, "
                               "first violation rows " + render_set(v.rows) +
                               " cols " + render_set(v.cols)};
        }
        ++passed;
    }
    // The counterexample preset is excluded from the positivity requirement:
    // it exists to refute it.  Confirm that it does fail.
    auto ce = make_preset("counterexample"); // a=1, b=1
    auto col = build_triangle(ce.weights, 10).first_column();
    auto rep = check_xtp(hankel(col, 6).matrix, {.order = 4, .jobs = 4});
    if (rep.verdict != TPVerdict::Fail)
        return {false, "counterexample column unexpectedly passes the N=6 "
                       "Hankel check"};
    const auto& v = rep.violations.front();
    return {true, std::to_string(passed) +
                      " presets pass the N=6 Hankel check at order 4; the "
                      "counterexample preset is excluded as the designed "
                      "refutation and indeed fails (first violation rows " +
                      render_set(v.rows) + " cols " + render_set(v.cols) + ")"};
}

struct Criterion {
    std::string name;
    double budget_s;
    std::function<Outcome()> run;
};

} // namespace

int main() {
    const std::vector<Criterion> criteria{
        {"triangle-fidelity", 1, criterion_triangle_fidelity},
        {"counterexample-regression", 1, criterion_counterexample_regression},
        {"oracle-equivalence", 60, criterion_oracle_equivalence},
        {"hankel-factorization", 60, criterion_factorization},
        {"certificate-chain", 300, criterion_certificate_chain},
        {"pq-minor-identity", 10, criterion_pq_minor_identity},
        {"minor-recursion", 10, criterion_pk_recursion},
        {"generating-functions", 30, criterion_generating_functions},
        {"integer-specializations", 10, criterion_integer_specializations},
        {"combinatorial-oracles", 60, criterion_combinatorial_oracles},
        {"homogenization", 300, criterion_homogenization},
        {"hankel-truncations", 300, criterion_hankel_truncations},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto& c = criteria[i];
        auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count();
        bool overtime = secs > c.budget_s;
        if (overtime && out.pass) {
            out.pass = false;
            out.detail += " [exceeded time budget]";
        }
        if (!out.pass) ++failures;
        std::printf("[%s] %2zu %-26s %7.2fs (budget %4.0fs)  %s\n",
                    out.pass ? "PASS" : "FAIL", i + 1, c.name.c_str(), secs,
                    c.budget_s, out.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%zu/%zu criteria pass\n", criteria.size() - failures,
                criteria.size());
    return failures == 0 ? 0 : 1;
}
