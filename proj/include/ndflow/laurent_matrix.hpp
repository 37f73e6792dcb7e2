#ifndef NDFLOW_LAURENT_MATRIX_HPP
#define NDFLOW_LAURENT_MATRIX_HPP

#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "laurent.hpp"

namespace ndflow {

/// Dense matrix of Laurent polynomials sharing one variable count. Zero
/// rows or columns are allowed (empty relation matrices are common).
class LaurentMatrix {
   public:
    LaurentMatrix() = default;
    LaurentMatrix(std::size_t rows, std::size_t cols, int nvars)
        : rows_(rows), cols_(cols), nvars_(nvars), data_(rows * cols, LaurentPolynomial(nvars)) {}

    static LaurentMatrix identity(std::size_t n, int nvars) {
        LaurentMatrix m(n, n, nvars);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = LaurentPolynomial::constant(nvars, 1);
        return m;
    }

    static LaurentMatrix from_rows(const std::vector<LaurentVector>& rows, std::size_t cols, int nvars) {
        LaurentMatrix m(rows.size(), cols, nvars);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols) throw PreconditionError("ragged matrix rows");
            for (std::size_t j = 0; j < cols; ++j) {
                if (rows[i][j].nvars() != nvars) throw PreconditionError("matrix entries disagree on variable count");
                m(i, j) = rows[i][j];
            }
        }
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    int nvars() const noexcept { return nvars_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

    LaurentPolynomial& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const LaurentPolynomial& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    LaurentVector row(std::size_t i) const {
        return LaurentVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                             data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
    }
    std::vector<LaurentVector> row_list() const {
        std::vector<LaurentVector> out;
        for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
        return out;
    }

    LaurentMatrix transpose() const {
        LaurentMatrix t(cols_, rows_, nvars_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    bool is_zero() const {
        for (const auto& p : data_)
            if (!p.is_zero()) return false;
        return true;
    }

    friend bool operator==(const LaurentMatrix& a, const LaurentMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.nvars_ == b.nvars_ && a.data_ == b.data_;
    }
    friend bool operator!=(const LaurentMatrix& a, const LaurentMatrix& b) { return !(a == b); }

    friend LaurentMatrix operator*(const LaurentMatrix& a, const LaurentMatrix& b) {
        if (a.cols_ != b.rows_) throw PreconditionError("matrix product dimension mismatch");
        if (a.nvars_ != b.nvars_) throw PreconditionError("matrix product variable count mismatch");
        LaurentMatrix r(a.rows_, b.cols_, a.nvars_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const auto& aik = a(i, k);
                if (aik.is_zero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    if (!b(k, j).is_zero()) r(i, j) += aik * b(k, j);
            }
        return r;
    }
    friend LaurentMatrix operator+(LaurentMatrix a, const LaurentMatrix& b) {
        a.check_shape(b);
        for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
        return a;
    }
    friend LaurentMatrix operator-(LaurentMatrix a, const LaurentMatrix& b) {
        a.check_shape(b);
        for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
        return a;
    }
    friend LaurentMatrix operator*(const LaurentPolynomial& s, LaurentMatrix a) {
        for (auto& p : a.data_) p = s * p;
        return a;
    }

    /// Row vector times matrix.
    friend LaurentVector operator*(const LaurentVector& v, const LaurentMatrix& m) {
        if (v.size() != m.rows_) throw PreconditionError("vector-matrix dimension mismatch");
        LaurentVector r = zero_vector(m.nvars_, m.cols_);
        for (std::size_t k = 0; k < m.rows_; ++k) {
            if (v[k].is_zero()) continue;
            for (std::size_t j = 0; j < m.cols_; ++j)
                if (!m(k, j).is_zero()) r[j] += v[k] * m(k, j);
        }
        return r;
    }

    LaurentMatrix submatrix(const std::vector<std::size_t>& rs, const std::vector<std::size_t>& cs) const {
        LaurentMatrix s(rs.size(), cs.size(), nvars_);
        for (std::size_t i = 0; i < rs.size(); ++i)
            for (std::size_t j = 0; j < cs.size(); ++j) s(i, j) = (*this)(rs[i], cs[j]);
        return s;
    }

    /// Applies f entry-wise.
    LaurentMatrix map(const std::function<LaurentPolynomial(const LaurentPolynomial&)>& f, int new_nvars) const {
        LaurentMatrix r(rows_, cols_, new_nvars);
        for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = f(data_[i]);
        return r;
    }

    LaurentMatrix extend(int new_nvars) const {
        return map([&](const LaurentPolynomial& p) { return p.extend(new_nvars); }, new_nvars);
    }

    /// Vertical concatenation.
    static LaurentMatrix stack(const std::vector<LaurentMatrix>& blocks) {
        if (blocks.empty()) return {};
        std::size_t cols = blocks.front().cols_, rows = 0;
        int nv = blocks.front().nvars_;
        for (const auto& b : blocks) {
            if (b.cols_ != cols || b.nvars_ != nv) throw PreconditionError("stack: incompatible blocks");
            rows += b.rows_;
        }
        LaurentMatrix r(rows, cols, nv);
        std::size_t at = 0;
        for (const auto& b : blocks)
            for (std::size_t i = 0; i < b.rows_; ++i, ++at)
                for (std::size_t j = 0; j < cols; ++j) r(at, j) = b(i, j);
        return r;
    }

   private:
    void check_shape(const LaurentMatrix& b) const {
        if (rows_ != b.rows_ || cols_ != b.cols_ || nvars_ != b.nvars_) throw PreconditionError("matrix shape mismatch");
    }

    std::size_t rows_ = 0, cols_ = 0;
    int nvars_ = 0;
    std::vector<LaurentPolynomial> data_;
};

namespace detail {

inline LaurentPolynomial exact_quotient(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    auto q = divide_exact(a, b);
    if (!q) throw InternalError("fraction-free elimination produced an inexact division");
    return *std::move(q);
}

inline LaurentPolynomial det_cofactor(const LaurentMatrix& m) {
    const std::size_t n = m.rows();
    const int nv = m.nvars();
    if (n == 0) return LaurentPolynomial::constant(nv, 1);
    if (n == 1) return m(0, 0);
    if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    LaurentPolynomial sum(nv);
    for (std::size_t j = 0; j < n; ++j) {
        if (m(0, j).is_zero()) continue;
        std::vector<std::size_t> rs, cs;
        for (std::size_t i = 1; i < n; ++i) rs.push_back(i);
        for (std::size_t k = 0; k < n; ++k)
            if (k != j) cs.push_back(k);
        LaurentPolynomial term = m(0, j) * det_cofactor(m.submatrix(rs, cs));
        if (j % 2 == 0)
            sum += term;
        else
            sum -= term;
    }
    return sum;
}

// Bareiss elimination in place; returns the pivot columns. On return the
// last pivot entry of a square full-rank matrix is +/- the determinant.
inline std::vector<std::size_t> bareiss(LaurentMatrix& m, int& sign) {
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<std::size_t> pivots;
    LaurentPolynomial prev = LaurentPolynomial::constant(m.nvars(), 1);
    std::size_t r = 0;
    sign = 1;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        // Prefer the sparsest nonzero pivot to keep intermediate growth small.
        bool found = false;
        for (std::size_t i = r; i < rows; ++i) {
            if (m(i, c).is_zero()) continue;
            if (!found || m(i, c).size() < m(p, c).size()) p = i;
            found = true;
        }
        if (!found) continue;
        if (p != r) {
            for (std::size_t j = 0; j < cols; ++j) std::swap(m(p, j), m(r, j));
            sign = -sign;
        }
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j)
                m(i, j) = exact_quotient(m(i, j) * m(r, c) - m(i, c) * m(r, j), prev);
            m(i, c) = LaurentPolynomial(m.nvars());
        }
        prev = m(r, c);
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace detail

/// Determinant: cofactor expansion up to 4x4, fraction-free elimination above.
inline LaurentPolynomial det(const LaurentMatrix& m) {
    if (m.rows() != m.cols()) throw PreconditionError("determinant of a non-square matrix");
    if (m.rows() <= 4) return detail::det_cofactor(m);
    LaurentMatrix w = m;
    int sign = 1;
    auto piv = detail::bareiss(w, sign);
    if (piv.size() < m.rows()) return LaurentPolynomial(m.nvars());
    LaurentPolynomial d = w(m.rows() - 1, m.cols() - 1);
    return sign < 0 ? -d : d;
}

/// Rank over the field of fractions.
inline std::size_t rank(const LaurentMatrix& m) {
    LaurentMatrix w = m;
    int sign = 1;
    return detail::bareiss(w, sign).size();
}

inline LaurentMatrix adjugate(const LaurentMatrix& m) {
    const std::size_t n = m.rows();
    if (n != m.cols()) throw PreconditionError("adjugate of a non-square matrix");
    LaurentMatrix adj(n, n, m.nvars());
    if (n == 1) {
        adj(0, 0) = LaurentPolynomial::constant(m.nvars(), 1);
        return adj;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<std::size_t> rs, cs;
            for (std::size_t k = 0; k < n; ++k) {
                if (k != j) rs.push_back(k);
                if (k != i) cs.push_back(k);
            }
            LaurentPolynomial minor = det(m.submatrix(rs, cs));
            adj(i, j) = (i + j) % 2 == 0 ? minor : -minor;
        }
    return adj;
}

/// Inverse over the Laurent ring; requires a unit determinant.
inline LaurentMatrix inverse(const LaurentMatrix& m) {
    LaurentPolynomial d = det(m);
    if (!d.is_unit()) throw PreconditionError("matrix is not unimodular over the ring (det = non-unit)");
    return d.unit_inverse() * adjugate(m);
}

/// All k x k minors, in lexicographic order of (row subset, column subset).
inline std::vector<LaurentPolynomial> minors(const LaurentMatrix& m, std::size_t k) {
    std::vector<LaurentPolynomial> out;
    if (k > m.rows() || k > m.cols()) return out;
    std::vector<std::vector<std::size_t>> row_sets, col_sets;
    auto subsets = [](std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& acc) {
        std::vector<std::size_t> cur;
        std::function<void(std::size_t)> rec = [&](std::size_t start) {
            if (cur.size() == k) {
                acc.push_back(cur);
                return;
            }
            for (std::size_t i = start; i < n; ++i) {
                cur.push_back(i);
                rec(i + 1);
                cur.pop_back();
            }
        };
        rec(0);
    };
    subsets(m.rows(), k, row_sets);
    subsets(m.cols(), k, col_sets);
    for (const auto& rs : row_sets)
        for (const auto& cs : col_sets) out.push_back(det(m.submatrix(rs, cs)));
    return out;
}

/// A^k for any integer k (negative powers need a unimodular A).
inline LaurentMatrix power(const LaurentMatrix& a, long k) {
    if (k < 0) return power(inverse(a), -k);
    LaurentMatrix result = LaurentMatrix::identity(a.rows(), a.nvars()), base = a;
    while (k > 0) {
        if (k & 1) result = result * base;
        k >>= 1;
        if (k > 0) base = base * base;
    }
    return result;
}

}  // namespace ndflow

#endif
