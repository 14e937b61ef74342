#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "xtp/error.hpp"
#include "xtp/matrix.hpp"
#include "xtp/polynomial.hpp"
#include "xtp/series.hpp"
#include "xtp/total_positivity.hpp"
#include "xtp/triangle.hpp"
#include "xtp/weight_dsl.hpp"

namespace xtp {

// ---------------------------------------------------------------------------
// Small exact-arithmetic helpers
// ---------------------------------------------------------------------------

inline Int binomial(unsigned long n, unsigned long k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    Int r = 1;
    for (unsigned long i = 1; i <= k; ++i) {
        r *= Int(n - k + i);
        r /= Int(i); // exact: product of i consecutive integers is divisible by i!
    }
    return r;
}

// Divide exactly or abort: closed forms below carry 1/n- or 1/(k+1)-style
// prefactors that must cancel; a remainder means the formula was mistyped.
inline Int exact_div(const Int& num, const Int& den) {
    if (den == 0 || num % den != 0)
        throw InternalError("closed-form coefficient " + num.str() +
                            " is not divisible by " + den.str());
    return num / den;
}

// The two-variable "integer" [n] = x^{n-1} + x^{n-2}y + ... + y^{n-1} over the
// first two variables of vars (homogeneous of degree n-1, [1] = 1).
inline Polynomial pq_integer(unsigned long n, const VarSetPtr& vars) {
    if (n < 1) throw ValueError("pq_integer needs n >= 1");
    if (vars->arity() < 2)
        throw ValueError("pq_integer needs at least two variables");
    Polynomial f(vars);
    for (unsigned long i = 0; i < n; ++i) {
        Monomial m(vars->arity());
        m.exps[0] = static_cast<std::uint32_t>(n - 1 - i);
        m.exps[1] = static_cast<std::uint32_t>(i);
        f += Polynomial::from_term(vars, std::move(m), 1);
    }
    return f;
}

inline Polynomial pq_integer(unsigned long n) {
    return pq_integer(n, make_varset({"p", "q"}));
}

// ---------------------------------------------------------------------------
// Combinatorial oracles (direct enumeration; no closed forms)
// ---------------------------------------------------------------------------

// Count set partitions of {1..n} into exactly k nonempty blocks by walking
// every block assignment (restricted-growth order).
inline Int stirling_oracle(unsigned long n, unsigned long k) {
    if (n > 12) throw ValueError("stirling_oracle enumerates only n <= 12");
    if (n == 0) return k == 0 ? 1 : 0;
    if (k == 0 || k > n) return 0;
    Int count = 0;
    std::function<void(unsigned long, unsigned long)> place =
        [&](unsigned long i, unsigned long used) {
            if (used > k || used + (n - i) < k) return;
            if (i == n) {
                if (used == k) ++count;
                return;
            }
            for (unsigned long b = 0; b < used; ++b) place(i + 1, used);
            place(i + 1, used + 1);
        };
    place(0, 0);
    return count;
}

// Sum of q^(descents) * p^(ascents) over all permutations of {1..n}, where a
// descent is a position i with w_i > w_{i+1} and an ascent one with
// w_i < w_{i+1}.  Homogeneous of degree n-1.  Enumerates all n! permutations.
inline Polynomial eulerian_oracle(unsigned long n) {
    if (n < 1 || n > 9)
        throw ValueError("eulerian_oracle enumerates only 1 <= n <= 9");
    auto vars = make_varset({"p", "q"});
    std::vector<unsigned> w(n);
    std::iota(w.begin(), w.end(), 1u);
    Polynomial f(vars);
    do {
        std::uint32_t des = 0, ris = 0;
        for (std::size_t i = 0; i + 1 < n; ++i)
            (w[i] > w[i + 1] ? des : ris)++;
        f += Polynomial::from_term(vars, Monomial({ris, des}), 1);
    } while (std::next_permutation(w.begin(), w.end()));
    return f;
}

// One-variable version: sum of q^(descents) over permutations of {1..n}.
inline Polynomial eulerian_descent_polynomial(unsigned long n,
                                              const VarSetPtr& vars) {
    if (n < 1 || n > 9)
        throw ValueError("eulerian_descent_polynomial enumerates only 1 <= n <= 9");
    auto idx = vars->index_of("q");
    if (!idx) throw ValueError("eulerian_descent_polynomial needs a variable 'q'");
    std::vector<unsigned> w(n);
    std::iota(w.begin(), w.end(), 1u);
    Polynomial f(vars);
    do {
        std::uint32_t des = 0;
        for (std::size_t i = 0; i + 1 < n; ++i)
            if (w[i] > w[i + 1]) ++des;
        Monomial m(vars->arity());
        m.exps[*idx] = des;
        f += Polynomial::from_term(vars, std::move(m), 1);
    } while (std::next_permutation(w.begin(), w.end()));
    return f;
}

// Sum of weights of Motzkin paths of length n from level 0 back to level 0
// that never rise above max_height: up steps weigh 1, level steps
// level_weight, down steps down_weight.  Independent of the triangle
// recursion; used to cross-check height-capped weight systems.
inline Polynomial bounded_motzkin_column(unsigned long n,
                                         unsigned long max_height,
                                         const Polynomial& level_weight,
                                         const Polynomial& down_weight) {
    if (!same_vars(level_weight.vars(), down_weight.vars()))
        throw ValueError("bounded_motzkin_column: weights must share variables");
    auto vars = level_weight.vars();
    Polynomial total(vars);
    std::function<void(unsigned long, unsigned long, const Polynomial&)> step =
        [&](unsigned long i, unsigned long level, const Polynomial& acc) {
            if (i == n) {
                if (level == 0) total += acc;
                return;
            }
            if (level > n - i) return; // cannot get back down in time
            if (level + 1 <= max_height) step(i + 1, level + 1, acc);
            step(i + 1, level, acc * level_weight);
            if (level > 0) step(i + 1, level - 1, acc * down_weight);
        };
    step(0, 0, Polynomial::constant(vars, 1));
    return total;
}

// Swap two variables in every monomial (a ring automorphism).
inline Polynomial exchange_variables(const Polynomial& f, const std::string& x,
                                     const std::string& y) {
    auto ix = f.vars()->index_of(x), iy = f.vars()->index_of(y);
    if (!ix || !iy)
        throw ValueError("exchange_variables: unknown variable");
    Polynomial out(f.vars());
    for (const auto& [m, c] : f.terms()) {
        Monomial nm = m;
        std::swap(nm.exps[*ix], nm.exps[*iy]);
        out += Polynomial::from_term(f.vars(), std::move(nm), c);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Closed-form column formulas (independent recomputations of m_{n,0})
// ---------------------------------------------------------------------------

namespace closed_form {

// Sum over k of C(n,k)^2 q^k p^(n-k) (type-B Narayana, homogeneous).
inline Polynomial narayana_b(unsigned long n, const VarSetPtr& vars) {
    Polynomial f(vars);
    for (unsigned long k = 0; k <= n; ++k) {
        Int c = binomial(n, k);
        Monomial m(vars->arity());
        m.exps[0] = static_cast<std::uint32_t>(n - k);
        m.exps[1] = static_cast<std::uint32_t>(k);
        f += Polynomial::from_term(vars, std::move(m), c * c);
    }
    return f;
}

// Sum over k >= 1 of (1/n) C(n,k-1) C(n,k) q^k p^(n-k) (Narayana, homogeneous).
inline Polynomial narayana_a(unsigned long n, const VarSetPtr& vars) {
    if (n == 0) return Polynomial::constant(vars, 1);
    Polynomial f(vars);
    for (unsigned long k = 1; k <= n; ++k) {
        Int c = exact_div(binomial(n, k - 1) * binomial(n, k), Int(n));
        Monomial m(vars->arity());
        m.exps[0] = static_cast<std::uint32_t>(n - k);
        m.exps[1] = static_cast<std::uint32_t>(k);
        f += Polynomial::from_term(vars, std::move(m), c);
    }
    return f;
}

// Sum over k of S(n,k) q^k p^(n-k) with S from the set-partition oracle.
inline Polynomial bell(unsigned long n, const VarSetPtr& vars) {
    Polynomial f(vars);
    for (unsigned long k = 0; k <= n; ++k) {
        Int c = stirling_oracle(n, k);
        if (c == 0) continue;
        Monomial m(vars->arity());
        m.exps[0] = static_cast<std::uint32_t>(n - k);
        m.exps[1] = static_cast<std::uint32_t>(k);
        f += Polynomial::from_term(vars, std::move(m), c);
    }
    return f;
}

// One-variable specializations of the above (coefficients of q^k only).
inline Polynomial univariate(const std::function<Int(unsigned long)>& coeff,
                             unsigned long n, const VarSetPtr& vars) {
    Polynomial f(vars);
    for (unsigned long k = 0; k <= n; ++k) {
        Int c = coeff(k);
        if (c == 0) continue;
        Monomial m(vars->arity());
        m.exps[0] = static_cast<std::uint32_t>(k);
        f += Polynomial::from_term(vars, std::move(m), c);
    }
    return f;
}

// Sum over k of (1/(k+1)) C(2k,k) C(n+k,n-k) q^k (Schroeder).
inline Polynomial schroeder(unsigned long n, const VarSetPtr& vars) {
    return univariate(
        [&](unsigned long k) {
            return exact_div(binomial(2 * k, k), Int(k + 1)) * binomial(n + k, n - k);
        },
        n, vars);
}

// Sum over k of C(n+k,n-k) C(2k,k) q^k (central Delannoy).
inline Polynomial delannoy(unsigned long n, const VarSetPtr& vars) {
    return univariate(
        [&](unsigned long k) { return binomial(n + k, n - k) * binomial(2 * k, k); },
        n, vars);
}

} // namespace closed_form

// ---------------------------------------------------------------------------
// Presets
// ---------------------------------------------------------------------------

// One integer specialization of a preset column: evaluate m_{n,0} at
// `assignment` and compare against `expected`.  When the catalogued reference
// values are known to be wrong, `catalogued` keeps them as printed and
// `erratum` explains the correction; `expected` always holds the values the
// recursion must reproduce.
struct Specialization {
    std::map<std::string, Int> assignment;
    std::vector<Int> expected;
    std::string note;
    std::optional<std::vector<Int>> catalogued;
    std::string erratum;
};

struct PresetParams {
    unsigned long u = 3;                     // ex3_4 family parameter (u >= 3)
    long long a = 1;                         // counterexample parameters
    long long b = 1;                         //   (both >= 0)
    std::vector<unsigned long> thresholds{2}; // ex3_3_threshold cut points
};

struct Preset {
    std::string name;
    std::string description;
    WeightSystem weights;
    PresetParams params;
    std::optional<RiordanSpec> riordan;
    std::function<Polynomial(std::size_t)> closed_form; // null if none
    std::size_t closed_form_limit = static_cast<std::size_t>(-1);
    std::vector<Specialization> specializations;
    // Catalogued triangle entries, row by row (row n may list fewer than n+1
    // entries).  If displayed_rows_exchanged is set, the catalogued entries
    // match the triangle only after swapping the named pair of variables
    // (a known transcription slip), and displayed_rows_note documents it.
    std::vector<std::vector<Polynomial>> displayed_rows;
    std::optional<std::pair<std::string, std::string>> displayed_rows_exchanged;
    std::string displayed_rows_note;
    // Catalogued first-column values used for the Hankel regression instead
    // of the computed column (counterexample only; see hankel_override_note).
    std::optional<std::vector<Polynomial>> hankel_override;
    std::string hankel_override_note;

    Preset(std::string n, std::string d, WeightSystem w)
        : name(std::move(n)), description(std::move(d)), weights(std::move(w)) {}
};

inline std::vector<std::string> preset_names() {
    return {"ex3_1",          "ex3_2",         "ex3_3",
            "ex3_3_threshold", "ex3_4",         "ex3_5",
            "ex3_6",          "ex3_7",         "ex3_8_bell",
            "ex3_9_eulerian", "counterexample", "intro_bell",
            "intro_eulerian", "intro_qschroeder", "intro_qdelannoy",
            "intro_narayana_A", "intro_narayana_B"};
}

// The catalogued first-column values of the counterexample family, as
// printed, with the integers a, b substituted.  Note: these are NOT the
// column of the recursion — the printed list skips the true m_2 = 2q^4 and
// shows m_3, m_4, m_5 shifted up one slot.  They are kept verbatim because
// the 3x3 Hankel determinant regression below is stated about them.
inline std::vector<Polynomial> counterexample_listed_column(long long a,
                                                            long long b) {
    if (a < 0 || b < 0)
        throw ValueError("counterexample parameters must be nonnegative");
    auto vars = make_varset({"q"});
    Int A(a);
    auto term = [&](Polynomial& f, Int coeff, long long exp) {
        if (coeff == 0) return;
        Monomial m(1);
        m.exps[0] = static_cast<std::uint32_t>(exp);
        f += Polynomial::from_term(vars, std::move(m), std::move(coeff));
    };
    std::vector<Polynomial> col(5, Polynomial(vars));
    term(col[0], 1, 0);
    term(col[1], 1, 2);
    term(col[2], 1, 4), term(col[2], 4, 6), term(col[2], A, 4 + b);
    term(col[3], 1, 4), term(col[3], 5, 6), term(col[3], 9, 8);
    term(col[3], 2 * A, 4 + b), term(col[3], 4 * A, 6 + b);
    term(col[3], A * A, 4 + 2 * b);
    term(col[4], 1, 4), term(col[4], 8, 6), term(col[4], 20, 8), term(col[4], 21, 10);
    term(col[4], 3 * A, 4 + b), term(col[4], 13 * A, 6 + b), term(col[4], 15 * A, 8 + b);
    term(col[4], 3 * A * A, 4 + 2 * b), term(col[4], 5 * A * A, 6 + 2 * b);
    term(col[4], A * A * A, 4 + 3 * b);
    return col;
}

// The catalogued 3x3 Hankel determinant of that list, with a, b substituted.
inline Polynomial counterexample_displayed_determinant(long long a, long long b) {
    if (a < 0 || b < 0)
        throw ValueError("counterexample parameters must be nonnegative");
    auto vars = make_varset({"q"});
    Int A(a);
    Polynomial f(vars);
    auto term = [&](Int coeff, long long exp) {
        if (coeff == 0) return;
        Monomial m(1);
        m.exps[0] = static_cast<std::uint32_t>(exp);
        f += Polynomial::from_term(vars, std::move(m), std::move(coeff));
    };
    term(-1, 8), term(-4, 10), term(6, 12), term(36, 14), term(27, 16), term(-64, 18);
    term(-3 * A, 8 + b), term(-2 * A, 10 + b), term(27 * A, 12 + b);
    term(35 * A, 14 + b), term(-48 * A, 16 + b);
    Int A2 = A * A;
    term(-3 * A2, 8 + 2 * b), term(5 * A2, 10 + 2 * b), term(14 * A2, 12 + 2 * b);
    term(-12 * A2, 14 + 2 * b);
    Int A3 = A2 * A;
    term(-A3, 8 + 3 * b), term(3 * A3, 10 + 3 * b), term(-A3, 12 + 3 * b);
    return f;
}

// Build the 3x3 Hankel matrix of the catalogued column list and return its
// determinant.  Callers compare it against
// counterexample_displayed_determinant(a, b).
inline Polynomial counterexample_regression(long long a, long long b) {
    auto listed = counterexample_listed_column(a, b);
    return hankel(listed, 3).matrix.determinant();
}

namespace detail {

inline std::vector<std::vector<Polynomial>> parse_rows(
    const VarSetPtr& vars, const std::vector<std::vector<std::string>>& texts) {
    std::vector<std::vector<Polynomial>> rows;
    for (const auto& row : texts) {
        rows.emplace_back();
        for (const auto& t : row) rows.back().push_back(Polynomial::parse(t, vars));
    }
    return rows;
}

inline std::vector<Int> ints(std::initializer_list<long long> xs) {
    return std::vector<Int>(xs.begin(), xs.end());
}

} // namespace detail

inline Preset make_preset(const std::string& name, const PresetParams& params = {}) {
    using detail::ints;
    auto Q = make_varset({"q"});
    auto PQ = make_varset({"p", "q"});
    auto rp = [&](const std::string& t, const VarSetPtr& v) {
        return Polynomial::parse(t, v);
    };

    if (name == "ex3_1") {
        Preset pre(name, "one-variable triangle: ground level weight 1, higher level weight 1+q, down weight q",
                   WeightSystem::from_texts(Q, "1", "k=0: 1; else: 1+q", "q"));
        pre.riordan = RiordanSpec(rp("1", Q), rp("q", Q), rp("1+q", Q), rp("q", Q));
        pre.displayed_rows = detail::parse_rows(
            Q, {{"1"},
                {"1", "1"},
                {"1+q", "2+q", "1"},
                {"1+3q+q^2", "3+5q+q^2", "3+2q", "1"}});
        pre.specializations = {
            {{{"q", 1}}, ints({1, 1, 2, 5, 14, 42, 132}), "OEIS A000108 (Catalan numbers)", {}, ""},
            {{{"q", 2}}, ints({1, 1, 3, 11, 45, 197, 903, 4279}), "OEIS A001003 (little Schroeder numbers)", {}, ""},
            {{{"q", 3}}, ints({1, 1, 4, 19, 100, 562, 3304, 20071}), "OEIS A007564", {}, ""},
            {{{"q", 4}}, ints({1, 1, 5, 29, 185, 1257, 8925, 65445}), "OEIS A059231", {}, ""}};
        return pre;
    }

    if (name == "ex3_2") {
        Preset pre(name, "one-variable triangle: every level weight 1+q+q^2, down weight q",
                   WeightSystem::from_texts(Q, "1", "1+q+q^2", "q"));
        pre.riordan = RiordanSpec(rp("1+q+q^2", Q), rp("q", Q), rp("1+q+q^2", Q), rp("q", Q));
        pre.displayed_rows = detail::parse_rows(
            Q, {{"1"},
                {"1+q+q^2", "1"},
                {"1+3q+3q^2+2q^3+q^4", "2+2q+2q^2", "1"},
                {"1+6q+9q^2+10q^3+6q^4+3q^5+q^6", "3+8q+9q^2+6q^3+3q^4",
                 "3+3q+3q^2", "1"}});
        pre.specializations = {{{{"q", 1}},
                                ints({1, 3, 10, 36, 137, 543, 2219, 9285, 39587}),
                                "OEIS A002212 (restricted hexagonal polyominoes)",
                                {},
                                ""}};
        return pre;
    }

    if (name == "ex3_3") {
        Preset pre(name, "two-variable triangle: level weight 1+p+q, down weight q",
                   WeightSystem::from_texts(PQ, "1", "1+p+q", "q"));
        pre.riordan = RiordanSpec(rp("1+p+q", PQ), rp("q", PQ), rp("1+p+q", PQ), rp("q", PQ));
        pre.displayed_rows = detail::parse_rows(
            PQ, {{"1"},
                 {"1+p+q", "1"},
                 {"1+3p+2q+2p*q+p^2+q^2", "2+2p+2q", "1"},
                 {"1+6p+3q+6p^2+9p*q+3q^2+p^3+3p^2*q+3p*q^2+q^3",
                  "3+8p+6q+3p^2+6p*q+3q^2", "3+3p+3q", "1"}});
        pre.displayed_rows_exchanged = {{"p", "q"}};
        pre.displayed_rows_note =
            "the catalogued entries match the recursion only after exchanging p "
            "and q (the down weight of the displayed triangle is p, not the "
            "stated q); asserted after the exchange";
        pre.specializations = {
            {{{"p", 1}, {"q", 1}},
             ints({1, 3, 10, 36, 137, 543, 2219, 9285, 39587}),
             "OEIS A002212", {}, ""},
            {{{"p", 1}, {"q", 2}},
             ints({1, 4, 18, 88, 456, 2464, 13736, 78432, 456416}),
             "OEIS A024175", {}, ""},
            {{{"p", 2}, {"q", 2}},
             ints({1, 5, 27, 155, 933, 5825, 37415}),
             "recomputed from the recursion",
             ints({1, 4, 20, 112, 672, 4224}),
             "catalogued values are 2^n*C(n+1) (OEIS A003645), which this weight "
             "system cannot produce: m_1 = 1+p+q = 5 at p=q=2, not 4; the "
             "recomputed column is asserted"}};
        return pre;
    }

    if (name == "ex3_3_threshold") {
        const auto& th = params.thresholds;
        if (th.empty()) throw ValueError("ex3_3_threshold needs at least one threshold");
        for (std::size_t i = 0; i < th.size(); ++i) {
            if (th[i] < 1) throw ValueError("thresholds must be >= 1");
            if (i && th[i] <= th[i - 1])
                throw ValueError("thresholds must be strictly increasing");
        }
        std::vector<std::string> names;
        std::string svar_sum = "1";
        if (th.size() == 1) {
            names = {"p", "q"};
            svar_sum = "1+p+q";
        } else {
            for (std::size_t i = 1; i <= th.size() + 1; ++i)
                names.push_back("x" + std::to_string(i));
            for (const auto& n : names) svar_sum += "+" + n;
        }
        auto vars = make_varset(names);
        std::string t_text;
        if (th.size() == 1) {
            t_text = "k<=" + std::to_string(th[0]) + ": q; else: p";
        } else {
            for (std::size_t i = 0; i < th.size(); ++i)
                t_text += "k<=" + std::to_string(th[i]) + ": x" + std::to_string(i + 1) + "; ";
            t_text += "else: x" + std::to_string(th.size() + 1);
        }
        Preset pre(name,
                   "threshold family: level weight 1+(sum of all variables); the down weight "
                   "switches variable as the level passes each threshold",
                   WeightSystem::from_texts(vars, "1", svar_sum, t_text));
        pre.params = params;
        if (th.size() == 1)
            pre.specializations = {{{{"p", 1}, {"q", 1}},
                                    ints({1, 3, 10, 36, 137, 543, 2219, 9285, 39587}),
                                    "OEIS A002212 (threshold invisible at p=q=1)",
                                    {},
                                    ""}};
        return pre;
    }

    if (name == "ex3_4") {
        if (params.u < 3) throw ValueError("ex3_4 needs u >= 3");
        unsigned long u = params.u;
        auto s0 = pq_integer(u, PQ);
        auto t1 = rp("p*q", PQ) * pq_integer(u - 1, PQ);
        std::string s_text = "k=0: " + s0.to_string(TextStyle::ExplicitOps) + "; else: p+q";
        std::string t_text = "k=1: " + t1.to_string(TextStyle::ExplicitOps) + "; else: p*q";
        Preset pre(name,
                   "two-variable family (parameter u): ground weights [u], pq[u-1]; higher "
                   "weights p+q, pq, where [n] = p^(n-1)+p^(n-2)q+...+q^(n-1)",
                   WeightSystem::from_texts(PQ, "1", s_text, t_text));
        pre.params = params;
        pre.riordan = RiordanSpec(s0, t1, rp("p+q", PQ), rp("p*q", PQ));
        if (u == 3) {
            pre.displayed_rows = detail::parse_rows(
                PQ, {{"1"},
                     {"p^2+p*q+q^2", "1"},
                     {"p^4+2p^3*q+3p^2*q^2+2p*q^3+q^4+p^2*q+p*q^2",
                      "p^2+p*q+q^2+p+q", "1"}});
            pre.specializations = {{{{"p", 1}, {"q", 1}},
                                    ints({1, 3, 11, 43, 173, 707, 2917}),
                                    "OEIS A026671", {}, ""}};
        }
        return pre;
    }

    if (name == "ex3_5") {
        auto PQR = make_varset({"p", "q", "r"});
        Preset pre(name,
                   "three-variable triangle: ground level weight q+r, higher level weight "
                   "p+q+r, down weight q(p+r)",
                   WeightSystem::from_texts(PQR, "1", "k=0: q+r; else: p+q+r", "q*(p+r)"));
        pre.riordan = RiordanSpec(rp("q+r", PQR), rp("p*q+q*r", PQR),
                                  rp("p+q+r", PQR), rp("p*q+q*r", PQR));
        pre.displayed_rows = detail::parse_rows(
            PQR,
            {{"1"},
             {"q+r", "1"},
             {"p*q+q^2+3q*r+r^2", "p+2q+2r", "1"},
             {"p^2*q+3p*q^2+q^3+4p*q*r+6q^2*r+6q*r^2+r^3",
              "p^2+5p*q+3q^2+3p*r+8q*r+3r^2", "2p+3q+3r", "1"},
             {"p^3*q+6p^2*q^2+6p*q^3+q^4+5p^2*q*r+20p*q^2*r+10q^3*r+10p*q*r^2+"
              "20q^2*r^2+10q*r^3+r^4"}});
        pre.specializations = {
            {{{"p", 1}, {"q", 1}, {"r", 0}},
             ints({1, 1, 2, 5, 14, 42, 132}), "OEIS A000108 (Catalan numbers)", {}, ""},
            {{{"p", 1}, {"q", 1}, {"r", 1}},
             ints({1, 2, 6, 22, 90, 394, 1806}), "OEIS A006318 (large Schroeder numbers)", {}, ""},
            {{{"p", 1}, {"q", 1}, {"r", 2}},
             ints({1, 3, 12, 57, 300, 1686, 9912, 60213, 374988}),
             "OEIS A047891", {}, ""},
            {{{"p", 1}, {"q", 2}, {"r", 1}},
             ints({1, 3, 13, 67, 381, 2307, 14589}),
             "OEIS A064062 (generalized Catalan numbers)",
             ints({1, 3, 13, 67, 381, 2307, 14598}),
             "catalogued prefix ends 14598; the sequence value is 14589 and the "
             "recursion reproduces 14589, which is asserted"}};
        return pre;
    }

    if (name == "ex3_6") {
        Preset pre(name,
                   "homogenized type-B Narayana family: column n is the sum over k of "
                   "C(n,k)^2 q^k p^(n-k)",
                   WeightSystem::from_texts(PQ, "1", "p+q", "k=1: 2*p*q; else: p*q"));
        pre.riordan = RiordanSpec(rp("p+q", PQ), rp("2*p*q", PQ), rp("p+q", PQ), rp("p*q", PQ));
        pre.closed_form = [PQ](std::size_t n) { return closed_form::narayana_b(n, PQ); };
        pre.specializations = {
            {{{"p", 1}, {"q", 1}},
             ints({1, 2, 6, 20, 70, 252, 924, 3432, 12870}),
             "OEIS A000984 (central binomial coefficients; the catalogued "
             "cross-reference A001850 belongs to the p=2,q=1 row)", {}, ""},
            {{{"p", 2}, {"q", 1}},
             ints({1, 3, 13, 63, 321, 1683, 8989, 48639, 265729}),
             "OEIS A001850 (central Delannoy numbers; the catalogued "
             "cross-reference A000984 belongs to the p=q=1 row)", {}, ""},
            {{{"p", 2}, {"q", 2}}, ints({1, 4, 24, 160, 1120, 8064}), "OEIS A059304", {}, ""},
            {{{"p", 2}, {"q", 4}}, ints({1, 6, 52, 504, 5136}), "OEIS A084773", {}, ""}};
        return pre;
    }

    if (name == "ex3_7") {
        Preset pre(name,
                   "homogenized Narayana family: column n is the sum over k of "
                   "(1/n) C(n,k-1) C(n,k) q^k p^(n-k)",
                   WeightSystem::from_texts(PQ, "1", "k=0: q; else: p+q", "p*q"));
        pre.riordan = RiordanSpec(rp("q", PQ), rp("p*q", PQ), rp("p+q", PQ), rp("p*q", PQ));
        pre.closed_form = [PQ](std::size_t n) { return closed_form::narayana_a(n, PQ); };
        pre.specializations = {
            {{{"p", 1}, {"q", 1}},
             ints({1, 1, 2, 5, 14, 42, 132, 429}), "OEIS A000108 (Catalan numbers)", {}, ""},
            {{{"p", 2}, {"q", 1}},
             ints({1, 1, 3, 11, 45, 197, 903, 4279}),
             "OEIS A001003 (little Schroeder numbers)",
             ints({1, 1, 3, 11, 45, 19, 903, 4279}),
             "catalogued prefix prints 19 where the little Schroeder number is "
             "197; the corrected value is asserted"},
            {{{"p", 1}, {"q", 2}},
             ints({1, 2, 6, 22, 90, 394, 1806}), "OEIS A006318 (large Schroeder numbers)", {}, ""},
            {{{"p", 2}, {"q", 2}},
             ints({1, 2, 8, 40, 224, 1344, 8448, 54912}),
             "OEIS A151374 (= 2^n C_n)", {}, ""}};
        return pre;
    }

    if (name == "ex3_8_bell") {
        Preset pre(name,
                   "homogenized Bell family: column n is the sum over k of "
                   "S(n,k) q^k p^(n-k) with Stirling set numbers S",
                   WeightSystem::from_texts(PQ, "1", "k*p+q", "k*p*q"));
        pre.closed_form = [PQ](std::size_t n) { return closed_form::bell(n, PQ); };
        pre.closed_form_limit = 12;
        pre.specializations = {
            {{{"p", 1}, {"q", 1}},
             ints({1, 1, 2, 5, 15, 52, 203, 877}), "OEIS A000110 (Bell numbers)", {}, ""},
            {{{"p", 2}, {"q", 1}},
             ints({1, 1, 3, 11, 49, 257, 1539}), "OEIS A004211", {}, ""},
            {{{"p", 1}, {"q", 2}},
             ints({1, 2, 6, 22, 94, 454, 2430}), "OEIS A001861", {}, ""},
            {{{"p", 2}, {"q", 2}},
             ints({1, 2, 8, 40, 240, 1664, 12992, 112256}),
             "2^n B_n (OEIS A055882)",
             ints({1, 2, 8, 40, 224, 1344, 8448, 54912}),
             "catalogued prefix repeats the 2^n C_n values of the neighbouring "
             "family; this column is 2^n B_n, diverging at index 4 (240, not "
             "224); the recomputed values are asserted"},
            {{{"p", 3}, {"q", 3}},
             ints({1, 3, 18, 135, 1215, 12636, 147987}), "3^n B_n", {}, ""}};
        return pre;
    }

    if (name == "ex3_9_eulerian") {
        Preset pre(name,
                   "homogenized Eulerian family: column n is q times the sum over "
                   "permutations of {1..n} of q^(descents) p^(ascents)",
                   WeightSystem::from_texts(PQ, "1", "(k+1)*q+k*p", "k^2*p*q"));
        pre.closed_form = [PQ](std::size_t n) {
            if (n == 0) return Polynomial::constant(PQ, 1);
            return Polynomial::variable(PQ, "q") * eulerian_oracle(n);
        };
        pre.closed_form_limit = 9;
        pre.specializations = {{{{"p", 1}, {"q", 1}},
                                ints({1, 1, 2, 6, 24, 120, 720}),
                                "factorials (OEIS A000142)", {}, ""}};
        return pre;
    }

    if (name == "counterexample") {
        if (params.a < 0 || params.b < 0)
            throw ValueError("counterexample parameters must be nonnegative");
        std::string s_text = "k=0: q^2; else: 1+q^2";
        if (params.a > 0)
            s_text += "+" + std::to_string(params.a) + "*q^" + std::to_string(params.b);
        Preset pre(name,
                   "weight family outside the sufficient positivity conditions (s_0 = q^2 "
                   "has no constant term); its column is not Hankel x-totally positive "
                   "(parameters a, b)",
                   WeightSystem::from_texts(Q, "1", s_text, "k=1: q^4; else: q^2+q^4"));
        pre.params = params;
        Polynomial c = rp("1+q^2", Q);
        if (params.a > 0) {
            Monomial m(1);
            m.exps[0] = static_cast<std::uint32_t>(params.b);
            c += Polynomial::from_term(Q, std::move(m), Int(params.a));
        }
        pre.riordan = RiordanSpec(rp("q^2", Q), rp("q^4", Q), c, rp("q^2+q^4", Q));
        pre.hankel_override = counterexample_listed_column(params.a, params.b);
        pre.hankel_override_note =
            "the catalogued column list skips the true m_2 = 2q^4 (its entries 2..4 "
            "are the true m_3, m_4, m_5); the Hankel regression runs on the list as "
            "catalogued, whose 3x3 determinant has the displayed negative "
            "coefficients";
        return pre;
    }

    if (name == "intro_bell") {
        Preset pre(name, "Bell polynomials: column n is the sum over k of S(n,k) q^k",
                   WeightSystem::from_texts(Q, "1", "k+q", "k*q"));
        pre.closed_form = [Q](std::size_t n) {
            return closed_form::univariate(
                [&](unsigned long k) { return stirling_oracle(n, k); }, n, Q);
        };
        pre.closed_form_limit = 12;
        pre.specializations = {{{{"q", 1}},
                                ints({1, 1, 2, 5, 15, 52, 203, 877, 4140}),
                                "OEIS A000110 (Bell numbers)", {}, ""}};
        return pre;
    }

    if (name == "intro_eulerian") {
        Preset pre(name,
                   "Eulerian polynomials: column n is q times the descent polynomial of "
                   "permutations of {1..n}",
                   WeightSystem::from_texts(Q, "1", "(k+1)*q+k", "k^2*q"));
        pre.closed_form = [Q](std::size_t n) {
            if (n == 0) return Polynomial::constant(Q, 1);
            return Polynomial::variable(Q, "q") * eulerian_descent_polynomial(n, Q);
        };
        pre.closed_form_limit = 9;
        pre.specializations = {{{{"q", 1}},
                                ints({1, 1, 2, 6, 24, 120, 720, 5040}),
                                "factorials (OEIS A000142)", {}, ""}};
        return pre;
    }

    if (name == "intro_qschroeder") {
        Preset pre(name,
                   "q-Schroeder numbers: column n is the sum over k of "
                   "(1/(k+1)) C(2k,k) C(n+k,n-k) q^k",
                   WeightSystem::from_texts(Q, "1", "k=0: 1+q; else: 1+2*q", "q*(1+q)"));
        pre.riordan = RiordanSpec(rp("1+q", Q), rp("q+q^2", Q), rp("1+2q", Q), rp("q+q^2", Q));
        pre.closed_form = [Q](std::size_t n) { return closed_form::schroeder(n, Q); };
        pre.specializations = {{{{"q", 1}},
                                ints({1, 2, 6, 22, 90, 394, 1806}),
                                "OEIS A006318 (large Schroeder numbers)", {}, ""}};
        return pre;
    }

    if (name == "intro_qdelannoy") {
        Preset pre(name,
                   "q-central-Delannoy numbers: column n is the sum over k of "
                   "C(n+k,n-k) C(2k,k) q^k",
                   WeightSystem::from_texts(Q, "1", "1+2*q",
                                            "k=1: 2*q+2*q^2; else: q+q^2"));
        pre.riordan = RiordanSpec(rp("1+2q", Q), rp("2q+2q^2", Q), rp("1+2q", Q), rp("q+q^2", Q));
        pre.closed_form = [Q](std::size_t n) { return closed_form::delannoy(n, Q); };
        pre.specializations = {{{{"q", 1}},
                                ints({1, 3, 13, 63, 321, 1683, 8989}),
                                "OEIS A001850 (central Delannoy numbers)", {}, ""}};
        return pre;
    }

    if (name == "intro_narayana_A") {
        Preset pre(name,
                   "Narayana polynomials: column n is the sum over k of "
                   "(1/n) C(n,k) C(n,k-1) q^k",
                   WeightSystem::from_texts(Q, "1", "k=0: q; else: 1+q", "q"));
        pre.riordan = RiordanSpec(rp("q", Q), rp("q", Q), rp("1+q", Q), rp("q", Q));
        pre.closed_form = [Q](std::size_t n) {
            if (n == 0) return Polynomial::constant(Q, 1);
            return closed_form::univariate(
                [&](unsigned long k) {
                    if (k == 0) return Int(0);
                    return exact_div(binomial(n, k) * binomial(n, k - 1), Int(n));
                },
                n, Q);
        };
        pre.specializations = {{{{"q", 1}},
                                ints({1, 1, 2, 5, 14, 42, 132}),
                                "OEIS A000108 (Catalan numbers)", {}, ""}};
        return pre;
    }

    if (name == "intro_narayana_B") {
        Preset pre(name,
                   "type-B Narayana polynomials: column n is the sum over k of C(n,k)^2 q^k",
                   WeightSystem::from_texts(Q, "1", "1+q", "k=1: 2*q; else: q"));
        pre.riordan = RiordanSpec(rp("1+q", Q), rp("2q", Q), rp("1+q", Q), rp("q", Q));
        pre.closed_form = [Q](std::size_t n) {
            return closed_form::univariate(
                [&](unsigned long k) {
                    Int c = binomial(n, k);
                    return c * c;
                },
                n, Q);
        };
        pre.specializations = {{{{"q", 1}},
                                ints({1, 2, 6, 20, 70, 252, 924}),
                                "OEIS A000984 (central binomial coefficients)", {}, ""}};
        return pre;
    }

    std::string known;
    for (const auto& n : preset_names()) known += (known.empty() ? "" : ", ") + n;
    throw ValueError("unknown preset '" + name + "' (known: " + known + ")");
}

// ---------------------------------------------------------------------------
// Leading-minor identities of the two special Jacobi families
// ---------------------------------------------------------------------------

// For the ex3_4 family: the k-th leading principal minor of its Jacobi matrix
// must equal the two-variable integer [k+u-1].
inline bool leading_minor_pq_identity(unsigned long u, std::size_t K) {
    if (u < 3) throw ValueError("leading_minor_pq_identity needs u >= 3");
    if (K < 1) throw ValueError("leading_minor_pq_identity needs K >= 1");
    PresetParams params;
    params.u = u;
    auto pre = make_preset("ex3_4", params);
    auto J = jacobi_matrix(pre.weights, K);
    std::vector<std::size_t> idx;
    for (std::size_t k = 1; k <= K; ++k) {
        idx.push_back(k - 1);
        if (J.submatrix(idx, idx).determinant() !=
            pq_integer(k + u - 1, pre.weights.vars()))
            return false;
    }
    return true;
}

// For the ex3_5 family: the leading principal minors P_k of its Jacobi matrix
// satisfy P_1 = q+r, P_2 = q^2+(p+q)r+r^2, the two-term recursion
// P_k = (p+q+r) P_{k-1} - q(p+r) P_{k-2}, and each P_k is x-nonnegative.
inline bool leading_minor_recursion(std::size_t K) {
    if (K < 2) throw ValueError("leading_minor_recursion needs K >= 2");
    auto pre = make_preset("ex3_5");
    auto vars = pre.weights.vars();
    auto J = jacobi_matrix(pre.weights, K);
    std::vector<Polynomial> P{Polynomial::constant(vars, 1)};
    std::vector<std::size_t> idx;
    for (std::size_t k = 1; k <= K; ++k) {
        idx.push_back(k - 1);
        P.push_back(J.submatrix(idx, idx).determinant());
    }
    if (P[1] != Polynomial::parse("q+r", vars)) return false;
    if (P[2] != Polynomial::parse("q^2+p*r+q*r+r^2", vars)) return false;
    auto S = Polynomial::parse("p+q+r", vars);
    auto T = Polynomial::parse("p*q+q*r", vars);
    for (std::size_t k = 2; k <= K; ++k) {
        if (P[k] != S * P[k - 1] - T * P[k - 2]) return false;
        if (!P[k].is_x_nonnegative()) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Preset verification suite
// ---------------------------------------------------------------------------

struct SuiteCheck {
    std::string name;
    bool pass;
    std::string detail;
};

struct SuiteReport {
    std::string preset;
    std::size_t depth = 0;
    std::vector<SuiteCheck> checks;
    bool all_pass() const {
        return std::all_of(checks.begin(), checks.end(),
                           [](const SuiteCheck& c) { return c.pass; });
    }
};

namespace detail {

inline std::string render_assignment(const std::map<std::string, Int>& a) {
    std::string s;
    for (const auto& [k, v] : a) s += (s.empty() ? "" : ",") + k + "=" + v.str();
    return s;
}

inline std::string render_ints(const std::vector<Int>& xs) {
    std::string s;
    for (const auto& x : xs) s += (s.empty() ? "" : ",") + x.str();
    return s;
}

} // namespace detail

// Run every registered cross-check of one preset to depth N: triangle versus
// catalogued rows, path-oracle spot checks, Hankel x-TP of the column,
// H = M T M^t factorization, Riordan column/recurrence checks, closed-form
// recomputation, and all integer specializations.  Failures become report
// entries, never exceptions.
inline SuiteReport run_preset_suite(const Preset& pre, std::size_t N,
                                    std::size_t order = 0, std::size_t jobs = 1) {
    if (N < 1) throw ValueError("run_preset_suite needs N >= 1");
    SuiteReport rep;
    rep.preset = pre.name;
    rep.depth = N;

    std::size_t hankel_N = (N + 2) / 2;
    if (pre.hankel_override)
        hankel_N = std::min(hankel_N, (pre.hankel_override->size() + 1) / 2);
    std::size_t fact_N = (N + 2) / 2;
    std::size_t rows = std::max({N, 2 * hankel_N - 2, 2 * fact_N - 2});
    for (const auto& s : pre.specializations)
        rows = std::max(rows, s.expected.size() - 1);
    auto tri = build_triangle(pre.weights, rows);
    auto col = tri.first_column();

    if (!pre.displayed_rows.empty()) {
        bool ok = true;
        std::string detail = pre.displayed_rows_note;
        for (std::size_t n = 0; ok && n < pre.displayed_rows.size(); ++n) {
            const auto& row = pre.displayed_rows[n];
            for (std::size_t k = 0; ok && k < row.size(); ++k) {
                Polynomial expect = row[k];
                if (pre.displayed_rows_exchanged)
                    expect = exchange_variables(expect,
                                                pre.displayed_rows_exchanged->first,
                                                pre.displayed_rows_exchanged->second);
                if (expect != tri.at(n, k)) {
                    ok = false;
                    detail = "entry (" + std::to_string(n) + "," + std::to_string(k) +
                             ") differs: catalogued " + row[k].to_string() +
                             ", computed " + tri.at(n, k).to_string();
                }
            }
        }
        rep.checks.push_back({"displayed-rows", ok, detail});
    }

    {
        bool ok = true;
        std::string detail;
        std::size_t limit = std::min<std::size_t>(N, 6);
        for (std::size_t n = 0; ok && n <= limit; ++n)
            for (std::size_t k = 0; ok && k <= n; ++k)
                if (motzkin_oracle(pre.weights, n, k) != tri.at(n, k)) {
                    ok = false;
                    detail = "path oracle differs from recursion at (" +
                             std::to_string(n) + "," + std::to_string(k) + ")";
                }
        if (ok) detail = "recursion matches path enumeration for n <= " +
                         std::to_string(limit);
        rep.checks.push_back({"path-oracle", ok, detail});
    }

    {
        const auto& seq = pre.hankel_override ? *pre.hankel_override : col;
        auto H = hankel(seq, hankel_N);
        CheckOptions opt;
        opt.order = order;
        opt.jobs = jobs;
        auto tp = check_xtp(H.matrix, opt);
        std::string detail = "N=" + std::to_string(hankel_N) + ", verdict " +
                             tp.verdict_string() + " (" +
                             std::to_string(tp.minors_evaluated) + " minors)";
        if (!tp.violations.empty()) {
            const auto& v = tp.violations.front();
            detail += "; first violation rows{";
            for (auto r : v.rows) detail += std::to_string(r) + " ";
            detail += "} cols{";
            for (auto c : v.cols) detail += std::to_string(c) + " ";
            detail += "} det " + v.det.to_string();
        }
        if (pre.hankel_override) detail += "; " + pre.hankel_override_note;
        rep.checks.push_back({"hankel-xtp", tp.pass(), detail});
    }

    {
        bool ok = verify_factorization(pre.weights, fact_N);
        rep.checks.push_back({"factorization", ok,
                              "H = M T M^t at N=" + std::to_string(fact_N)});
    }

    if (pre.riordan) {
        bool okc = verify_riordan_column(*pre.riordan, pre.weights, N);
        rep.checks.push_back({"riordan-column", okc,
                              "column generating function to order " + std::to_string(N)});
        bool okr = verify_AZ_recurrences(tri, *pre.riordan);
        rep.checks.push_back({"riordan-az", okr,
                              "entrywise A/Z recurrences on all computed rows"});
    }

    if (pre.name == "ex3_4") {
        std::size_t K = std::min<std::size_t>(N, 8);
        bool ok = leading_minor_pq_identity(pre.params.u, K);
        rep.checks.push_back(
            {"leading-minors", ok,
             "k-th leading principal minor of the Jacobi matrix equals "
             "[k+u-1] for k <= " + std::to_string(K)});
    }
    if (pre.name == "ex3_5") {
        std::size_t K = std::max<std::size_t>(2, std::min<std::size_t>(N, 8));
        bool ok = leading_minor_recursion(K);
        rep.checks.push_back(
            {"leading-minor-recursion", ok,
             "leading principal minors are x-nonnegative and satisfy the "
             "two-term recursion for k <= " + std::to_string(K)});
    }

    if (pre.closed_form) {
        bool ok = true;
        std::size_t limit = std::min(N, pre.closed_form_limit);
        std::string detail = "closed form reproduces the column for n <= " +
                             std::to_string(limit);
        for (std::size_t n = 0; ok && n <= limit; ++n)
            if (pre.closed_form(n) != col[n]) {
                ok = false;
                detail = "closed form differs at n=" + std::to_string(n) + ": " +
                         pre.closed_form(n).to_string() + " vs " + col[n].to_string();
            }
        rep.checks.push_back({"closed-form", ok, detail});
    }

    for (const auto& sp : pre.specializations) {
        bool ok = true;
        std::string msg;
        std::vector<Int> got;
        for (std::size_t n = 0; n < sp.expected.size(); ++n)
            got.push_back(col[n].evaluate(sp.assignment));
        if (got != sp.expected) {
            ok = false;
            for (std::size_t n = 0; n < sp.expected.size(); ++n)
                if (got[n] != sp.expected[n]) {
                    msg = "mismatch at n=" + std::to_string(n) + ": expected " +
                          sp.expected[n].str() + ", computed " + got[n].str();
                    break;
                }
        } else {
            msg = detail::render_ints(got) + " -- " + sp.note;
            if (!sp.erratum.empty()) msg += "; " + sp.erratum;
        }
        rep.checks.push_back(
            {"specialization " + detail::render_assignment(sp.assignment), ok, msg});
    }

    return rep;
}

inline SuiteReport run_preset_suite(const std::string& name, std::size_t N,
                                    const PresetParams& params = {},
                                    std::size_t order = 0, std::size_t jobs = 1) {
    return run_preset_suite(make_preset(name, params), N, order, jobs);
}

} // namespace xtp
