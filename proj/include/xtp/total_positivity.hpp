#pragma once

#include <cstdint>
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "xtp/matrix.hpp"
#include "xtp/weight_dsl.hpp"

namespace xtp {

// ---------------------------------------------------------------------------
// Coefficient-wise total positivity: a matrix of polynomials is x-TP up to
// order r when every k x k minor (k <= r) has a coefficient-wise nonnegative
// determinant.
// ---------------------------------------------------------------------------

struct MinorViolation {
    std::vector<std::size_t> rows;
    std::vector<std::size_t> cols;
    Polynomial det;
};

enum class TPVerdict { Pass, Fail, PassUpToOrder };

struct TPReport {
    TPVerdict verdict = TPVerdict::Pass;
    unsigned order_checked = 0;
    std::vector<MinorViolation> violations;
    std::uint64_t minors_evaluated = 0;

    bool pass() const { return verdict != TPVerdict::Fail; }

    std::string verdict_string() const {
        switch (verdict) {
            case TPVerdict::Pass: return "pass";
            case TPVerdict::Fail: return "fail";
            case TPVerdict::PassUpToOrder:
                return "pass-up-to-order-" + std::to_string(order_checked);
        }
        return "fail";
    }
};

struct CheckOptions {
    // Largest minor size to test; 0 means min(4, min(rows, cols)).
    unsigned order = 0;
    // Collect every violation instead of stopping at the first.
    bool exhaustive = false;
    // On an exactly symmetric matrix, minors (R, C) and (C, R) are equal, so
    // only the pairs with R <= C (lexicographically) are evaluated.
    bool use_symmetry = true;
    // Worker threads for minor evaluation.  The report is identical for any
    // value: minors are compared in canonical order regardless.
    unsigned jobs = 1;
};

namespace detail {

// Lexicographically first k-subset of {0..n-1}.
inline std::vector<std::size_t> first_subset(std::size_t k) {
    std::vector<std::size_t> s(k);
    for (std::size_t i = 0; i < k; ++i) s[i] = i;
    return s;
}

// Advance to the next k-subset of {0..n-1} in lexicographic order.
inline bool next_subset(std::vector<std::size_t>& s, std::size_t n) {
    std::size_t k = s.size();
    for (std::size_t i = k; i-- > 0;) {
        if (s[i] < n - k + i) {
            ++s[i];
            for (std::size_t j = i + 1; j < k; ++j) s[j] = s[j - 1] + 1;
            return true;
        }
    }
    return false;
}

// Confirm a violating minor with the independent permutation-sum
// determinant; a disagreement means the fast determinant is buggy.
inline void reverify_violation(const PolyMatrix& m, const MinorViolation& v) {
    Polynomial again = m.submatrix(v.rows, v.cols).naive_determinant();
    if (again != v.det)
        throw InternalError(
            "minor violation failed re-verification: fast determinant " +
            v.det.to_string() + " vs permutation-sum determinant " +
            again.to_string());
}

} // namespace detail

// Test all minors of order 1..r for coefficient-wise nonnegativity.
// Minors are enumerated in canonical order (increasing size, then row sets
// lexicographically, then column sets lexicographically); by default the
// check stops at the first violation.  Every reported violation is
// re-verified against the permutation-sum determinant.
//
// minors_evaluated counts the minors inspected in canonical order this run
// (with use_symmetry on a symmetric matrix, mirrored minors are skipped and
// not counted).  The full report is deterministic and independent of jobs.
inline TPReport check_xtp(const PolyMatrix& m, const CheckOptions& opts = {}) {
    std::size_t max_order = std::min(m.rows(), m.cols());
    if (max_order == 0) throw ValueError("matrix is empty");
    unsigned order = opts.order == 0
                         ? static_cast<unsigned>(std::min<std::size_t>(4, max_order))
                         : static_cast<unsigned>(
                               std::min<std::size_t>(opts.order, max_order));
    bool symmetric = opts.use_symmetry && m.is_symmetric();

    TPReport report;
    report.order_checked = order;
    report.verdict = order < max_order ? TPVerdict::PassUpToOrder : TPVerdict::Pass;

    unsigned jobs = std::max(1u, opts.jobs);
    for (unsigned k = 1; k <= order; ++k) {
        // canonical list of (rows, cols) selections of size k
        std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> pairs;
        auto rows = detail::first_subset(k);
        do {
            auto cols = detail::first_subset(k);
            do {
                if (symmetric &&
                    std::lexicographical_compare(cols.begin(), cols.end(),
                                                 rows.begin(), rows.end()))
                    continue; // mirror of an earlier (R, C) with R <= C
                pairs.emplace_back(rows, cols);
            } while (detail::next_subset(cols, m.cols()));
        } while (detail::next_subset(rows, m.rows()));

        std::size_t chunk = jobs == 1 ? pairs.size()
                                      : std::max<std::size_t>(32, jobs * 8);
        for (std::size_t start = 0; start < pairs.size(); start += chunk) {
            std::size_t stop = std::min(pairs.size(), start + chunk);
            std::vector<Polynomial> dets(stop - start, Polynomial(m.vars()));
            if (jobs == 1) {
                for (std::size_t i = start; i < stop; ++i)
                    dets[i - start] =
                        m.submatrix(pairs[i].first, pairs[i].second).determinant();
            } else {
                std::vector<std::thread> workers;
                std::vector<std::exception_ptr> errors(jobs);
                for (unsigned w = 0; w < jobs; ++w) {
                    workers.emplace_back([&, w] {
                        try {
                            for (std::size_t i = start + w; i < stop; i += jobs)
                                dets[i - start] =
                                    m.submatrix(pairs[i].first, pairs[i].second)
                                        .determinant();
                        } catch (...) {
                            errors[w] = std::current_exception();
                        }
                    });
                }
                for (auto& t : workers) t.join();
                for (auto& e : errors)
                    if (e) std::rethrow_exception(e);
            }
            // merge scan in canonical order
            for (std::size_t i = start; i < stop; ++i) {
                ++report.minors_evaluated;
                if (!dets[i - start].is_x_nonnegative()) {
                    MinorViolation v{pairs[i].first, pairs[i].second,
                                     dets[i - start]};
                    detail::reverify_violation(m, v);
                    report.violations.push_back(std::move(v));
                    report.verdict = TPVerdict::Fail;
                    if (!opts.exhaustive) return report;
                }
            }
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Tridiagonal specialization.  For a tridiagonal matrix with coefficient-wise
// nonnegative entries, x-TP of every order is equivalent to the nonnegativity
// of the minors over consecutive index windows (rows i..i+l-1 against columns
// j..j+l-1, including the shifted ones); this check enumerates exactly those.
// ---------------------------------------------------------------------------
inline TPReport check_tridiagonal_xtp(const PolyMatrix& m) {
    if (!m.is_square() || !m.is_tridiagonal())
        throw ValueError("check_tridiagonal_xtp requires a tridiagonal matrix");
    std::size_t n = m.rows();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!m.at(i, j).is_x_nonnegative())
                throw ValueError(
                    "tridiagonal entry (" + std::to_string(i) + ", " +
                    std::to_string(j) +
                    ") has a negative coefficient: " + m.at(i, j).to_string());

    TPReport report;
    report.order_checked = static_cast<unsigned>(n);
    report.verdict = TPVerdict::Pass;
    for (std::size_t l = 1; l <= n; ++l) {
        for (std::size_t i = 0; i + l <= n; ++i) {
            for (std::size_t j = 0; j + l <= n; ++j) {
                std::vector<std::size_t> rows(l), cols(l);
                for (std::size_t a = 0; a < l; ++a) {
                    rows[a] = i + a;
                    cols[a] = j + a;
                }
                Polynomial det = m.submatrix(rows, cols).determinant();
                ++report.minors_evaluated;
                if (!det.is_x_nonnegative()) {
                    MinorViolation v{std::move(rows), std::move(cols),
                                     std::move(det)};
                    detail::reverify_violation(m, v);
                    report.violations.push_back(std::move(v));
                    report.verdict = TPVerdict::Fail;
                }
            }
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Sufficient inequality certificate on a weight system.  All of
//   (1)  s_0 - 1                                  >=_x 0
//   (2)  s_i * s_{i+1} - t_{i+1} * r_{i+1}        >=_x 0   (0 <= i < K)
//   (3)  s_{i+1} - t_{i+1} * r_{i+1} - 1          >=_x 0   (0 <= i < K)
// certify that the associated tridiagonal matrices are x-TP.  The conditions
// are sufficient, not necessary: systems failing them may still be x-TP.
// ---------------------------------------------------------------------------
struct WeightConditionFailure {
    int condition = 0;        // 1, 2 or 3
    unsigned long index = 0;  // the i at which it fails
    Polynomial witness;       // the non-nonnegative difference
};

struct WeightConditionReport {
    bool pass = true;
    std::optional<WeightConditionFailure> first_failure;
};

inline WeightConditionReport check_weight_conditions(const WeightSystem& ws,
                                                     unsigned long K) {
    WeightConditionReport report;
    auto fail = [&](int cond, unsigned long i, Polynomial w) {
        report.pass = false;
        report.first_failure = WeightConditionFailure{cond, i, std::move(w)};
    };
    const Polynomial one = Polynomial::constant(ws.vars(), 1);
    Polynomial s_i = ws.s_at(0);
    if (!(s_i - one).is_x_nonnegative()) {
        fail(1, 0, s_i - one);
        return report;
    }
    for (unsigned long i = 0; i < K; ++i) {
        Polynomial s_next = ws.s_at(i + 1);
        Polynomial tr = ws.t_at(i + 1) * ws.r_at(i + 1);
        Polynomial c2 = s_i * s_next - tr;
        if (!c2.is_x_nonnegative()) {
            fail(2, i, std::move(c2));
            return report;
        }
        Polynomial c3 = s_next - tr - one;
        if (!c3.is_x_nonnegative()) {
            fail(3, i, std::move(c3));
            return report;
        }
        s_i = std::move(s_next);
    }
    return report;
}

// ---------------------------------------------------------------------------
// Verify a product decomposition witness (b, c) for a weight system with
// r == 1:
//   s_k == b_{k+1} + c_{k+1}   (0 <= k <= K)
//   t_k == c_k * b_{k+1}       (1 <= k <= K)
// b and c must evaluate coefficient-wise nonnegative for 1 <= k <= K + 1.
// Such a witness certifies x-TP of the tridiagonal matrices.  This verifies
// a *given* candidate; it does not search for one.
// ---------------------------------------------------------------------------
inline bool check_product_decomposition(const WeightFormula& b,
                                        const WeightFormula& c,
                                        const WeightSystem& ws,
                                        unsigned long K) {
    if (!same_vars(b.vars(), ws.vars()) || !same_vars(c.vars(), ws.vars()))
        throw ValueError("decomposition witness uses a different variable set");
    for (unsigned long k = 1; k <= K + 1; ++k) {
        if (!b.eval_raw(k).is_x_nonnegative())
            throw ValueError("decomposition witness b(" + std::to_string(k) +
                             ") has a negative coefficient: " +
                             b.eval_raw(k).to_string());
        if (!c.eval_raw(k).is_x_nonnegative())
            throw ValueError("decomposition witness c(" + std::to_string(k) +
                             ") has a negative coefficient: " +
                             c.eval_raw(k).to_string());
    }
    const Polynomial one = Polynomial::constant(ws.vars(), 1);
    for (unsigned long k = 1; k <= K; ++k)
        if (ws.r_at(k) != one) return false; // decomposition needs r == 1
    for (unsigned long k = 0; k <= K; ++k)
        if (ws.s_at(k) != b.eval_raw(k + 1) + c.eval_raw(k + 1)) return false;
    for (unsigned long k = 1; k <= K; ++k)
        if (ws.t_at(k) != c.eval_raw(k) * b.eval_raw(k + 1)) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Strong coefficient-wise log-convexity of a sequence:
//   f_{n+1} * f_{m-1} - f_n * f_m  >=_x 0   for all n >= m >= 1.
// (At n == m this is plain log-convexity; larger n spreads the indices
// further apart.)  Every such difference is also a 2 x 2 minor of the Hankel
// matrix of the sequence, taken from columns {0, 1}, so Hankel x-TP of order
// 2 implies this check.  Scanned for n = 1, 2, ... and m = 1..n; reports the
// first failure.
// ---------------------------------------------------------------------------
struct LogConvexityFailure {
    std::size_t m = 0, n = 0;
    Polynomial witness;
};

struct LogConvexityReport {
    bool pass = true;
    std::optional<LogConvexityFailure> first_failure;
};

inline LogConvexityReport check_strong_log_convexity(
    const std::vector<Polynomial>& seq) {
    LogConvexityReport report;
    if (seq.size() < 3) return report;
    for (std::size_t n = 1; n + 1 < seq.size(); ++n) {
        for (std::size_t m = 1; m <= n; ++m) {
            Polynomial diff = seq[n + 1] * seq[m - 1] - seq[n] * seq[m];
            if (!diff.is_x_nonnegative()) {
                report.pass = false;
                report.first_failure = LogConvexityFailure{m, n, std::move(diff)};
                return report;
            }
        }
    }
    return report;
}

} // namespace xtp
