#pragma once

#include <string>
#include <vector>

#include "xtp/triangle.hpp"

namespace xtp {

// ---------------------------------------------------------------------------
// PolySeries: a power series in one distinguished (unnamed) variable,
// truncated at degree T, whose coefficients are Polynomials.
// ---------------------------------------------------------------------------
struct PolySeries {
    VarSetPtr vars;
    std::vector<Polynomial> coeffs; // c_0 .. c_T

    PolySeries(VarSetPtr v, std::size_t T)
        : vars(std::move(v)), coeffs(T + 1, Polynomial(vars)) {}

    explicit PolySeries(std::vector<Polynomial> c)
        : vars(c.at(0).vars()), coeffs(std::move(c)) {}

    std::size_t truncation() const { return coeffs.size() - 1; }

    const Polynomial& at(std::size_t n) const { return coeffs.at(n); }

    static PolySeries constant(VarSetPtr v, Int value, std::size_t T) {
        PolySeries s(std::move(v), T);
        s.coeffs[0] = Polynomial::constant(s.vars, std::move(value));
        return s;
    }

    bool operator==(const PolySeries& o) const { return coeffs == o.coeffs; }
    bool operator!=(const PolySeries& o) const { return !(*this == o); }
};

// Product of two series with the same truncation order.
inline PolySeries series_mul(const PolySeries& a, const PolySeries& b) {
    if (a.truncation() != b.truncation())
        throw ValueError("series_mul requires equal truncation orders");
    if (!same_vars(a.vars, b.vars))
        throw ValueError("series are over different variable sets");
    PolySeries r(a.vars, a.truncation());
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
        if (a.coeffs[i].is_zero()) continue;
        for (std::size_t j = 0; i + j < b.coeffs.size(); ++j)
            r.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
    }
    return r;
}

// Multiplicative inverse of a series with constant term exactly 1:
//   g_0 = 1,  g_n = -sum_{i=1..n} f_i g_{n-i}.
inline PolySeries series_inverse(const PolySeries& f) {
    if (f.coeffs[0] != Polynomial::constant(f.vars, 1))
        throw ValueError("series_inverse requires constant term exactly 1, got " +
                         f.coeffs[0].to_string());
    PolySeries g(f.vars, f.truncation());
    g.coeffs[0] = Polynomial::constant(f.vars, 1);
    for (std::size_t n = 1; n < f.coeffs.size(); ++n) {
        Polynomial acc(f.vars);
        for (std::size_t i = 1; i <= n; ++i) acc += f.coeffs[i] * g.coeffs[n - i];
        g.coeffs[n] = -acc;
    }
    return g;
}

// ---------------------------------------------------------------------------
// Riordan-style generating-function data: Z(x) = a + b x drives column 0 and
// A(x) = 1 + c x + e x^2 drives the remaining columns.  All four entries must
// be coefficient-wise nonnegative.
//
// The matching weight system is s_0 = a, t_1 = b, s_k = c (k >= 1),
// t_k = e (k >= 2), r == 1.
// ---------------------------------------------------------------------------
struct RiordanSpec {
    Polynomial a, b, c, e;

    RiordanSpec(Polynomial a_, Polynomial b_, Polynomial c_, Polynomial e_)
        : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), e(std::move(e_)) {
        const VarSetPtr& v = a.vars();
        if (!same_vars(v, b.vars()) || !same_vars(v, c.vars()) ||
            !same_vars(v, e.vars()))
            throw ValueError("Riordan data must share one variable set");
        for (const auto* p : {&a, &b, &c, &e})
            if (!p->is_x_nonnegative())
                throw ValueError("Riordan data must be coefficient-wise "
                                 "nonnegative, got " + p->to_string());
    }

    const VarSetPtr& vars() const { return a.vars(); }
};

// Solve  h = 1 + c x h + e x^2 h^2  by coefficient extraction:
//   h_0 = 1,  h_n = c h_{n-1} + e sum_{i+j=n-2} h_i h_j.
inline PolySeries solve_h(const RiordanSpec& spec, std::size_t T) {
    PolySeries h(spec.vars(), T);
    h.coeffs[0] = Polynomial::constant(spec.vars(), 1);
    for (std::size_t n = 1; n <= T; ++n) {
        Polynomial acc = spec.c * h.coeffs[n - 1];
        if (n >= 2) {
            Polynomial conv(spec.vars());
            for (std::size_t i = 0; i + 2 <= n; ++i)
                conv += h.coeffs[i] * h.coeffs[n - 2 - i];
            acc += spec.e * conv;
        }
        h.coeffs[n] = acc;
    }
    return h;
}

// Solve  d = 1 / (1 - x (a + b x h))  for the column-0 generating function.
inline PolySeries solve_d(const RiordanSpec& spec, std::size_t T) {
    PolySeries h = solve_h(spec, T);
    PolySeries denom(spec.vars(), T);
    denom.coeffs[0] = Polynomial::constant(spec.vars(), 1);
    if (T >= 1) denom.coeffs[1] = -spec.a;
    for (std::size_t n = 2; n <= T; ++n) denom.coeffs[n] = -(spec.b * h.coeffs[n - 2]);
    return series_inverse(denom);
}

// Check that a weight system is exactly the one induced by the Riordan data
// (depth-limited: indices up to max(T, 2) are inspected).
inline void require_matching_weights(const RiordanSpec& spec,
                                     const WeightSystem& ws, std::size_t T) {
    if (!same_vars(spec.vars(), ws.vars()))
        throw ValueError("weight system and Riordan data use different variables");
    const Polynomial one = Polynomial::constant(ws.vars(), 1);
    auto mismatch = [](const std::string& what) {
        throw ValueError("weight system does not match the Riordan data: " + what);
    };
    if (ws.s_at(0) != spec.a) mismatch("s(0) != a");
    if (ws.t_at(1) != spec.b) mismatch("t(1) != b");
    std::size_t depth = std::max<std::size_t>(T, 2);
    for (std::size_t k = 1; k <= depth; ++k) {
        if (ws.r_at(k) != one) mismatch("r(" + std::to_string(k) + ") != 1");
        if (ws.s_at(k) != spec.c) mismatch("s(" + std::to_string(k) + ") != c");
        if (k >= 2 && ws.t_at(k) != spec.e)
            mismatch("t(" + std::to_string(k) + ") != e");
    }
}

// Verify that the column-0 generating function of the Riordan data reproduces
// the first column of the weight-system triangle through degree T.
inline bool verify_riordan_column(const RiordanSpec& spec, const WeightSystem& ws,
                                  std::size_t T) {
    require_matching_weights(spec, ws, T);
    PolySeries d = solve_d(spec, T);
    auto col = build_triangle(ws, T).first_column();
    for (std::size_t n = 0; n <= T; ++n)
        if (d.coeffs[n] != col[n]) return false;
    return true;
}

// Verify the Z- and A-recurrences on every triangle entry:
//   m[n+1][0]   = a m[n][0] + b m[n][1]
//   m[n+1][k+1] =   m[n][k] + c m[n][k+1] + e m[n][k+2]
inline bool verify_AZ_recurrences(const RecursiveTriangle& tri,
                                  const RiordanSpec& spec) {
    const auto& vars = tri.weights.vars();
    if (!same_vars(vars, spec.vars()))
        throw ValueError("triangle and Riordan data use different variables");
    auto entry = [&](std::size_t n, std::size_t k) -> Polynomial {
        if (n >= tri.rows.size() || k >= tri.rows[n].size())
            return Polynomial(vars);
        return tri.rows[n][k];
    };
    for (std::size_t n = 0; n + 1 < tri.rows.size(); ++n) {
        if (entry(n + 1, 0) != spec.a * entry(n, 0) + spec.b * entry(n, 1))
            return false;
        for (std::size_t k = 0; k <= n + 1; ++k) {
            Polynomial rhs = entry(n, k) + spec.c * entry(n, k + 1) +
                             spec.e * entry(n, k + 2);
            if (entry(n + 1, k + 1) != rhs) return false;
        }
    }
    return true;
}

// The series  1 + sum_{k>=1} q^k x^k / ((1-px)(1-2px)...(1-kpx))  truncated
// at degree T; its x^n coefficient is the homogeneous two-variable Bell
// polynomial (Stirling subset counts weighted q^{blocks} p^{n-blocks}).
inline PolySeries bell_gf_series(std::size_t T) {
    auto vars = make_varset({"p", "q"});
    Polynomial p = Polynomial::variable(vars, "p");
    Polynomial q = Polynomial::variable(vars, "q");
    PolySeries total = PolySeries::constant(vars, 1, T);
    PolySeries denom = PolySeries::constant(vars, 1, T);
    Polynomial qpow = Polynomial::constant(vars, 1);
    for (std::size_t k = 1; k <= T; ++k) {
        // extend the running product (1-px)...(1-kpx)
        PolySeries factor(vars, T);
        factor.coeffs[0] = Polynomial::constant(vars, 1);
        if (T >= 1) factor.coeffs[1] = -(Int(k) * p);
        denom = series_mul(denom, factor);
        PolySeries inv = series_inverse(denom);
        qpow *= q;
        for (std::size_t n = k; n <= T; ++n)
            total.coeffs[n] += qpow * inv.coeffs[n - k];
    }
    return total;
}

} // namespace xtp
