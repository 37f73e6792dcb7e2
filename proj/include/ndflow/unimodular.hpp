#ifndef NDFLOW_UNIMODULAR_HPP
#define NDFLOW_UNIMODULAR_HPP

#include <string>
#include <vector>

#include "equation_module.hpp"
#include "errors.hpp"
#include "laurent.hpp"
#include "laurent_matrix.hpp"
#include "rational.hpp"

namespace ndflow {

using IntMatrix = std::vector<std::vector<long>>;

namespace detail {

inline Rational int_det(const IntMatrix& m) {
    const std::size_t n = m.size();
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = Rational(m[i][j]);
    Rational d = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(a[p], a[c]);
            d = -d;
        }
        d *= a[c][c];
        for (std::size_t i = c + 1; i < n; ++i) {
            Rational f = a[i][c] / a[c][c];
            for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
        }
    }
    return d;
}

}  // namespace detail

/// Integer matrix with determinant +/-1, acting on exponents by nu -> T nu.
class UnimodularTransform {
   public:
    UnimodularTransform() = default;
    explicit UnimodularTransform(IntMatrix t) : t_(std::move(t)) {
        for (const auto& row : t_)
            if (row.size() != t_.size()) throw PreconditionError("transform must be square");
        Rational d = detail::int_det(t_);
        if (d != 1 && d != -1) throw PreconditionError("transform is not unimodular (det = " + to_string(d) + ")");
    }

    static UnimodularTransform identity(int n) {
        IntMatrix t(static_cast<std::size_t>(n), std::vector<long>(static_cast<std::size_t>(n), 0));
        for (int i = 0; i < n; ++i) t[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
        return UnimodularTransform(std::move(t));
    }
    /// blockdiag(inner, I) in dimension n.
    static UnimodularTransform embed(const UnimodularTransform& inner, int n) {
        UnimodularTransform r = identity(n);
        for (std::size_t i = 0; i < inner.t_.size(); ++i)
            for (std::size_t j = 0; j < inner.t_.size(); ++j) r.t_[i][j] = inner.t_[i][j];
        return r;
    }

    int dim() const noexcept { return static_cast<int>(t_.size()); }
    const IntMatrix& matrix() const noexcept { return t_; }
    bool is_identity() const { return *this == identity(dim()); }

    ExponentVector apply(const ExponentVector& nu) const {
        ExponentVector r(t_.size(), 0);
        for (std::size_t i = 0; i < t_.size(); ++i) {
            long s = 0;
            for (std::size_t j = 0; j < t_.size(); ++j) s += t_[i][j] * nu.at(j);
            r[i] = static_cast<int>(s);
        }
        return r;
    }
    std::vector<long> apply(const std::vector<long>& nu) const {
        std::vector<long> r(t_.size(), 0);
        for (std::size_t i = 0; i < t_.size(); ++i)
            for (std::size_t j = 0; j < t_.size(); ++j) r[i] += t_[i][j] * nu.at(j);
        return r;
    }

    UnimodularTransform inverse() const {
        const std::size_t n = t_.size();
        std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * n));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) a[i][j] = Rational(t_[i][j]);
            a[i][n + i] = 1;
        }
        for (std::size_t c = 0; c < n; ++c) {
            std::size_t p = c;
            while (a[p][c] == 0) ++p;
            std::swap(a[p], a[c]);
            Rational inv = 1 / a[c][c];
            for (auto& x : a[c]) x *= inv;
            for (std::size_t i = 0; i < n; ++i) {
                if (i == c || a[i][c] == 0) continue;
                Rational f = a[i][c];
                for (std::size_t j = 0; j < 2 * n; ++j) a[i][j] -= f * a[c][j];
            }
        }
        IntMatrix r(n, std::vector<long>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) r[i][j] = a[i][n + j].get_num().get_si();
        return UnimodularTransform(std::move(r));
    }

    friend UnimodularTransform operator*(const UnimodularTransform& a, const UnimodularTransform& b) {
        if (a.dim() != b.dim()) throw PreconditionError("transform dimension mismatch");
        const std::size_t n = a.t_.size();
        IntMatrix r(n, std::vector<long>(n, 0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t j = 0; j < n; ++j) r[i][j] += a.t_[i][k] * b.t_[k][j];
        return UnimodularTransform(std::move(r));
    }
    friend bool operator==(const UnimodularTransform& a, const UnimodularTransform& b) { return a.t_ == b.t_; }

    /// phi_T: sigma^nu -> sigma^(T nu).
    LaurentPolynomial phi(const LaurentPolynomial& f) const {
        if (f.nvars() != dim()) throw PreconditionError("phi_T: variable count differs from transform size");
        LaurentPolynomial r(f.nvars());
        for (const auto& [e, c] : f.terms()) r.add_term(apply(e), c);
        return r;
    }
    LaurentVector phi(const LaurentVector& v) const {
        LaurentVector r;
        for (const auto& p : v) r.push_back(phi(p));
        return r;
    }
    LaurentMatrix phi(const LaurentMatrix& m) const {
        return m.map([&](const LaurentPolynomial& p) { return phi(p); }, m.nvars());
    }
    /// Entry-wise phi_T on the generators of a module.
    EquationModule phi(const EquationModule& m) const {
        std::vector<LaurentVector> rows;
        for (const auto& r : m.generators()) rows.push_back(phi(r));
        return EquationModule(m.n(), m.q(), std::move(rows));
    }

   private:
    IntMatrix t_;
};

}  // namespace ndflow

#endif
