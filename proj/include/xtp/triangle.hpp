#pragma once

#include <vector>

#include "xtp/matrix.hpp"
#include "xtp/weight_dsl.hpp"

namespace xtp {

// ---------------------------------------------------------------------------
// The weighted recursive triangle m[n][k] defined by
//
//   m[0][0] = 1,   m[n][k] = 0 unless 0 <= k <= n,
//   m[n+1][k] = r_k * m[n][k-1] + s_k * m[n][k] + t_{k+1} * m[n][k+1]
//
// rows() holds rows 0..N, row n having entries k = 0..n.
// ---------------------------------------------------------------------------
struct RecursiveTriangle {
    WeightSystem weights;
    std::vector<std::vector<Polynomial>> rows;

    std::size_t max_row() const { return rows.empty() ? 0 : rows.size() - 1; }

    const Polynomial& at(std::size_t n, std::size_t k) const {
        return rows.at(n).at(k);
    }

    // Column k = 0: the sequence (m[0][0], m[1][0], ..., m[N][0]).
    std::vector<Polynomial> first_column() const {
        std::vector<Polynomial> col;
        col.reserve(rows.size());
        for (const auto& row : rows) col.push_back(row.front());
        return col;
    }
};

// Build rows 0..N bottom-up.
inline RecursiveTriangle build_triangle(const WeightSystem& ws, std::size_t N) {
    const auto& vars = ws.vars();
    std::vector<std::vector<Polynomial>> rows;
    rows.reserve(N + 1);
    rows.push_back({Polynomial::constant(vars, 1)});
    // cache weights up to the largest index used
    std::vector<Polynomial> r{Polynomial(vars)}, s, t{Polynomial(vars)};
    for (std::size_t k = 1; k <= N; ++k) r.push_back(ws.r_at(k));
    for (std::size_t k = 0; k <= N; ++k) s.push_back(ws.s_at(k));
    for (std::size_t k = 1; k <= N; ++k) t.push_back(ws.t_at(k));
    for (std::size_t n = 0; n < N; ++n) {
        const auto& prev = rows.back();
        std::vector<Polynomial> next(n + 2, Polynomial(vars));
        for (std::size_t k = 0; k <= n + 1; ++k) {
            Polynomial v(vars);
            if (k >= 1 && k - 1 <= n) v += r[k] * prev[k - 1];
            if (k <= n) v += s[k] * prev[k];
            if (k + 1 <= n) v += t[k + 1] * prev[k + 1];
            next[k] = v;
        }
        rows.push_back(std::move(next));
    }
    return RecursiveTriangle{ws, std::move(rows)};
}

// The triangle as a square lower-triangular (N+1) x (N+1) matrix.
inline PolyMatrix triangle_matrix(const RecursiveTriangle& tri) {
    std::size_t n = tri.rows.size();
    PolyMatrix m(tri.weights.vars(), n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) m.at(i, j) = tri.rows[i][j];
    return m;
}

// ---------------------------------------------------------------------------
// Weighted-lattice-path reference for m[n][k]: enumerate every length-n path
// 0 = l_0, l_1, ..., l_n = k with steps in {-1, 0, +1} and levels >= 0,
// weighting an up-step ending at level j by r_j, a flat step at level j by
// s_j, and a down-step ending at level j by t_{j+1}; sum the products.
//
// This is a deliberate brute-force enumeration, sharing no code with
// build_triangle and memoizing nothing, so the two can cross-check each
// other.  Cost grows like 3^n; intended for n <= 10.
// ---------------------------------------------------------------------------
inline Polynomial motzkin_oracle(const WeightSystem& ws, std::size_t n,
                                 std::size_t k) {
    const auto& vars = ws.vars();
    if (k > n) return Polynomial(vars);
    // per-level step weights, fetched once (levels reachable in n steps)
    std::vector<Polynomial> up, flat, down_to;
    for (std::size_t lvl = 0; lvl <= n; ++lvl) {
        up.push_back(lvl >= 1 ? ws.r_at(lvl) : Polynomial(vars)); // ends at lvl
        flat.push_back(ws.s_at(lvl));
        down_to.push_back(ws.t_at(lvl + 1)); // step ending at lvl
    }
    Polynomial total(vars);
    // depth-first walk over all paths, carrying the running product
    struct Walker {
        std::size_t n, k;
        const std::vector<Polynomial>*up, *flat, *down_to;
        Polynomial* total;

        void step(std::size_t i, std::size_t level, const Polynomial& acc) {
            if (i == n) {
                if (level == k) *total += acc;
                return;
            }
            std::size_t remaining = n - i;
            // prune branches that can no longer reach level k at time n
            if (level > k + remaining || k > level + remaining) return;
            step(i + 1, level + 1, acc * (*up)[level + 1]);
            step(i + 1, level, acc * (*flat)[level]);
            if (level > 0) step(i + 1, level - 1, acc * (*down_to)[level - 1]);
        }
    };
    Walker w{n, k, &up, &flat, &down_to, &total};
    w.step(0, 0, Polynomial::constant(vars, 1));
    return total;
}

// ---------------------------------------------------------------------------
// Matrices attached to a weight system / sequence.
// ---------------------------------------------------------------------------

// N x N tridiagonal matrix: diagonal s_0..s_{N-1}, superdiagonal r_1..r_{N-1},
// subdiagonal t_1..t_{N-1}.
inline PolyMatrix jacobi_matrix(const WeightSystem& ws, std::size_t N) {
    if (N == 0) throw ValueError("jacobi_matrix needs N >= 1");
    PolyMatrix j(ws.vars(), N, N);
    for (std::size_t i = 0; i < N; ++i) {
        j.at(i, i) = ws.s_at(i);
        if (i + 1 < N) {
            j.at(i, i + 1) = ws.r_at(i + 1);
            j.at(i + 1, i) = ws.t_at(i + 1);
        }
    }
    return j;
}

// Symmetric N x N Hankel matrix of a sequence: entry (i, j) = seq[i + j].
// Needs at least 2N - 1 sequence entries.
struct HankelTruncation {
    std::vector<Polynomial> sequence;
    PolyMatrix matrix;
};

inline HankelTruncation hankel(const std::vector<Polynomial>& seq, std::size_t N) {
    if (N == 0) throw ValueError("hankel needs N >= 1");
    if (seq.size() < 2 * N - 1)
        throw ValueError("hankel needs at least " + std::to_string(2 * N - 1) +
                         " sequence entries, got " + std::to_string(seq.size()));
    PolyMatrix m(seq.front().vars(), N, N);
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) m.at(i, j) = seq[i + j];
    return HankelTruncation{
        std::vector<Polynomial>(seq.begin(), seq.begin() + (2 * N - 1)),
        std::move(m)};
}

// Diagonal matrix diag(T_0, ..., T_{N-1}) with T_0 = 1 and T_k = t_1 ... t_k.
inline PolyMatrix diagonal_T(const WeightSystem& ws, std::size_t N) {
    if (N == 0) throw ValueError("diagonal_T needs N >= 1");
    PolyMatrix d(ws.vars(), N, N);
    Polynomial prod = Polynomial::constant(ws.vars(), 1);
    d.at(0, 0) = prod;
    for (std::size_t k = 1; k < N; ++k) {
        prod *= ws.t_at(k);
        d.at(k, k) = prod;
    }
    return d;
}

// Check the exact identity  H_N == M_N * T_N * M_N^t, where M_N is the
// leading N x N block of the triangle and H_N the Hankel matrix of its first
// column.  The identity requires r == 1 identically; with general r it is
// simply false, and this check reports that honestly.
inline bool verify_factorization(const WeightSystem& ws, std::size_t N) {
    if (N == 0) throw ValueError("verify_factorization needs N >= 1");
    auto tri = build_triangle(ws, 2 * N - 2);
    auto col = tri.first_column(); // 2N - 1 entries
    auto h = hankel(col, N);
    PolyMatrix m(ws.vars(), N, N);
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j <= i; ++j) m.at(i, j) = tri.rows[i][j];
    auto t = diagonal_T(ws, N);
    return h.matrix == m * t * m.transpose();
}

} // namespace xtp
