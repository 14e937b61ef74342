#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "xtp/polynomial.hpp"

namespace xtp {

// ---------------------------------------------------------------------------
// PolyMatrix: a dense rows x cols matrix of Polynomials over one VarSet.
// ---------------------------------------------------------------------------
class PolyMatrix {
public:
    PolyMatrix(VarSetPtr vars, std::size_t rows, std::size_t cols)
        : vars_(std::move(vars)), rows_(rows), cols_(cols),
          entries_(rows * cols, Polynomial(vars_)) {
        if (!vars_) throw ValueError("matrix requires a variable set");
    }

    static PolyMatrix identity(VarSetPtr vars, std::size_t n) {
        PolyMatrix m(std::move(vars), n, n);
        for (std::size_t i = 0; i < n; ++i)
            m.at(i, i) = Polynomial::constant(m.vars_, 1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const VarSetPtr& vars() const { return vars_; }

    Polynomial& at(std::size_t i, std::size_t j) {
        check_index(i, j);
        return entries_[i * cols_ + j];
    }
    const Polynomial& at(std::size_t i, std::size_t j) const {
        check_index(i, j);
        return entries_[i * cols_ + j];
    }

    bool operator==(const PolyMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && entries_ == o.entries_;
    }
    bool operator!=(const PolyMatrix& o) const { return !(*this == o); }

    PolyMatrix transpose() const {
        PolyMatrix t(vars_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
        if (a.cols_ != b.rows_)
            throw ValueError("matrix product dimension mismatch: " +
                             std::to_string(a.cols_) + " vs " +
                             std::to_string(b.rows_));
        if (!same_vars(a.vars_, b.vars_))
            throw ValueError("matrices are over different variable sets");
        PolyMatrix r(a.vars_, a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (a.at(i, k).is_zero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    if (b.at(k, j).is_zero()) continue;
                    r.at(i, j) += a.at(i, k) * b.at(k, j);
                }
            }
        return r;
    }

    // Submatrix from strictly increasing, in-range row/column index lists.
    PolyMatrix submatrix(const std::vector<std::size_t>& row_idx,
                         const std::vector<std::size_t>& col_idx) const {
        validate_selection(row_idx, rows_, "row");
        validate_selection(col_idx, cols_, "column");
        PolyMatrix s(vars_, row_idx.size(), col_idx.size());
        for (std::size_t i = 0; i < row_idx.size(); ++i)
            for (std::size_t j = 0; j < col_idx.size(); ++j)
                s.at(i, j) = at(row_idx[i], col_idx[j]);
        return s;
    }

    bool is_square() const { return rows_ == cols_; }

    bool is_symmetric() const {
        if (!is_square()) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i + 1; j < cols_; ++j)
                if (at(i, j) != at(j, i)) return false;
        return true;
    }

    bool is_tridiagonal() const {
        if (!is_square()) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if ((i > j ? i - j : j - i) > 1 && !at(i, j).is_zero())
                    return false;
        return true;
    }

    // Entry-wise partial evaluation (see Polynomial::substitute).
    PolyMatrix substitute(const std::map<std::string, Int>& assignment) const {
        PolyMatrix r(vars_, rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                r.at(i, j) = at(i, j).substitute(assignment);
        return r;
    }

    // Exact determinant.  Dispatches on size: cofactor expansion along the
    // structurally sparsest row or column for n <= 4, fraction-free Bareiss
    // elimination with exact division above that.
    Polynomial determinant() const {
        require_square("determinant");
        if (rows_ == 0) return Polynomial::constant(vars_, 1);
        if (rows_ <= 4) return cofactor_det();
        return bareiss_det();
    }

    // Reference determinant: direct signed sum over all permutations.
    // Deliberately independent of determinant(); used to cross-check it and
    // to re-verify reported minor violations.
    Polynomial naive_determinant() const {
        require_square("determinant");
        std::size_t n = rows_;
        Polynomial total(vars_);
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        do {
            // parity by inversion count
            unsigned inversions = 0;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j)
                    if (perm[i] > perm[j]) ++inversions;
            Polynomial prod = Polynomial::constant(vars_, (inversions % 2) ? -1 : 1);
            for (std::size_t i = 0; i < n && !prod.is_zero(); ++i)
                prod *= at(i, perm[i]);
            total += prod;
        } while (std::next_permutation(perm.begin(), perm.end()));
        return total;
    }

private:
    void check_index(std::size_t i, std::size_t j) const {
        if (i >= rows_ || j >= cols_)
            throw ValueError("matrix index (" + std::to_string(i) + ", " +
                             std::to_string(j) + ") out of range for " +
                             std::to_string(rows_) + "x" + std::to_string(cols_));
    }

    void require_square(const char* op) const {
        if (!is_square())
            throw ValueError(std::string(op) + " requires a square matrix, got " +
                             std::to_string(rows_) + "x" + std::to_string(cols_));
    }

    static void validate_selection(const std::vector<std::size_t>& idx,
                                   std::size_t bound, const char* what) {
        for (std::size_t i = 0; i < idx.size(); ++i) {
            if (idx[i] >= bound)
                throw ValueError(std::string(what) + " index " +
                                 std::to_string(idx[i]) + " out of range");
            if (i > 0 && idx[i] <= idx[i - 1])
                throw ValueError(std::string(what) +
                                 " indices must be strictly increasing");
        }
    }

    // Number of structural zeros in row i / column j.
    std::size_t row_zeros(std::size_t i) const {
        std::size_t z = 0;
        for (std::size_t j = 0; j < cols_; ++j)
            if (at(i, j).is_zero()) ++z;
        return z;
    }
    std::size_t col_zeros(std::size_t j) const {
        std::size_t z = 0;
        for (std::size_t i = 0; i < rows_; ++i)
            if (at(i, j).is_zero()) ++z;
        return z;
    }

    Polynomial cofactor_det() const {
        std::size_t n = rows_;
        if (n == 1) return at(0, 0);
        // expand along the line (row or column) with the most zeros
        std::size_t best_line = 0, best_zeros = 0;
        bool best_is_row = true;
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t z = row_zeros(i);
            if (z >= best_zeros) { best_zeros = z; best_line = i; best_is_row = true; }
        }
        for (std::size_t j = 0; j < n; ++j) {
            std::size_t z = col_zeros(j);
            if (z > best_zeros) { best_zeros = z; best_line = j; best_is_row = false; }
        }
        Polynomial total(vars_);
        std::vector<std::size_t> all(n);
        std::iota(all.begin(), all.end(), 0);
        for (std::size_t k = 0; k < n; ++k) {
            const Polynomial& pivot =
                best_is_row ? at(best_line, k) : at(k, best_line);
            if (pivot.is_zero()) continue;
            std::vector<std::size_t> rs, cs;
            for (std::size_t t : all) {
                if (best_is_row) {
                    if (t != best_line) rs.push_back(t);
                    if (t != k) cs.push_back(t);
                } else {
                    if (t != k) rs.push_back(t);
                    if (t != best_line) cs.push_back(t);
                }
            }
            Polynomial minor = submatrix(rs, cs).cofactor_det();
            if ((best_line + k) % 2)
                total -= pivot * minor;
            else
                total += pivot * minor;
        }
        return total;
    }

    Polynomial bareiss_det() const {
        std::size_t n = rows_;
        std::vector<std::vector<Polynomial>> m(n, std::vector<Polynomial>(n, Polynomial(vars_)));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m[i][j] = at(i, j);
        int sign = 1;
        Polynomial denom = Polynomial::constant(vars_, 1);
        for (std::size_t k = 0; k + 1 < n; ++k) {
            // choose the structurally sparsest nonzero pivot in column k
            std::size_t pivot = n;
            std::size_t pivot_terms = 0;
            for (std::size_t i = k; i < n; ++i) {
                if (m[i][k].is_zero()) continue;
                std::size_t t = m[i][k].num_terms();
                if (pivot == n || t < pivot_terms) { pivot = i; pivot_terms = t; }
            }
            if (pivot == n) return Polynomial(vars_); // zero column => det 0
            if (pivot != k) {
                std::swap(m[pivot], m[k]);
                sign = -sign;
            }
            for (std::size_t i = k + 1; i < n; ++i) {
                for (std::size_t j = k + 1; j < n; ++j) {
                    Polynomial num = m[k][k] * m[i][j] - m[i][k] * m[k][j];
                    m[i][j] = num.divide_exact(denom);
                }
                m[i][k] = Polynomial(vars_);
            }
            denom = m[k][k];
        }
        Polynomial det = m[n - 1][n - 1];
        return sign < 0 ? -det : det;
    }

    VarSetPtr vars_;
    std::size_t rows_, cols_;
    std::vector<Polynomial> entries_;
};

} // namespace xtp
