#ifndef NDFLOW_LAURENT_HPP
#define NDFLOW_LAURENT_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace ndflow {

/// Exponent of a Laurent monomial: entry i is the power of the i-th shift.
using ExponentVector = std::vector<int>;

inline ExponentVector operator+(const ExponentVector& a, const ExponentVector& b) {
    ExponentVector r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

inline ExponentVector operator-(const ExponentVector& a, const ExponentVector& b) {
    ExponentVector r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

inline ExponentVector operator-(const ExponentVector& a) {
    ExponentVector r(a);
    for (auto& x : r) x = -x;
    return r;
}

/// r^e for any integer e; r must be nonzero when e < 0.
inline Rational pow(const Rational& r, long e) {
    Rational base = r;
    if (e < 0) {
        if (r == 0) throw PreconditionError("negative power of zero");
        base = 1 / r;
        e = -e;
    }
    Rational result = 1;
    while (e > 0) {
        if (e & 1) result *= base;
        base *= base;
        e >>= 1;
    }
    return result;
}

/// Sparse Laurent polynomial over the rationals in a fixed number of
/// variables. Terms with zero coefficient are never stored, so equal
/// polynomials have identical term maps.
class LaurentPolynomial {
   public:
    using TermMap = std::map<ExponentVector, Rational>;

    LaurentPolynomial() = default;
    explicit LaurentPolynomial(int nvars) : nvars_(nvars) {
        if (nvars < 0) throw PreconditionError("negative variable count");
    }

    static LaurentPolynomial constant(int nvars, const Rational& c) {
        LaurentPolynomial p(nvars);
        p.add_term(ExponentVector(static_cast<std::size_t>(nvars), 0), c);
        return p;
    }

    static LaurentPolynomial monomial(const ExponentVector& e, const Rational& c = 1) {
        LaurentPolynomial p(static_cast<int>(e.size()));
        p.add_term(e, c);
        return p;
    }

    /// sigma_i^power, with 0-based i.
    static LaurentPolynomial variable(int nvars, int i, int power = 1) {
        ExponentVector e(static_cast<std::size_t>(nvars), 0);
        e.at(static_cast<std::size_t>(i)) = power;
        return monomial(e);
    }

    int nvars() const noexcept { return nvars_; }
    const TermMap& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_unit() const noexcept { return terms_.size() == 1; }
    bool is_constant() const {
        return terms_.empty() ||
               (terms_.size() == 1 &&
                std::all_of(terms_.begin()->first.begin(), terms_.begin()->first.end(), [](int x) { return x == 0; }));
    }

    Rational coefficient(const ExponentVector& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    /// Constant term (coefficient of sigma^0).
    Rational constant_term() const { return coefficient(ExponentVector(static_cast<std::size_t>(nvars_), 0)); }

    void add_term(const ExponentVector& e, const Rational& c) {
        if (static_cast<int>(e.size()) != nvars_) throw PreconditionError("exponent length does not match variable count");
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    LaurentPolynomial& operator+=(const LaurentPolynomial& o) {
        check_same(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    LaurentPolynomial& operator-=(const LaurentPolynomial& o) {
        check_same(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    LaurentPolynomial& operator*=(const Rational& s) {
        if (s == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, c] : terms_) c *= s;
        return *this;
    }
    LaurentPolynomial& operator*=(const LaurentPolynomial& o) {
        *this = *this * o;
        return *this;
    }

    friend LaurentPolynomial operator+(LaurentPolynomial a, const LaurentPolynomial& b) { return a += b; }
    friend LaurentPolynomial operator-(LaurentPolynomial a, const LaurentPolynomial& b) { return a -= b; }
    friend LaurentPolynomial operator-(LaurentPolynomial a) { return a *= Rational(-1); }
    friend LaurentPolynomial operator*(LaurentPolynomial a, const Rational& s) { return a *= s; }
    friend LaurentPolynomial operator*(const Rational& s, LaurentPolynomial a) { return a *= s; }
    friend LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b) {
        a.check_same(b);
        LaurentPolynomial r(a.nvars_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
        return r;
    }
    friend bool operator==(const LaurentPolynomial& a, const LaurentPolynomial& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const LaurentPolynomial& a, const LaurentPolynomial& b) { return !(a == b); }

    /// sigma^mu * f.
    LaurentPolynomial shifted(const ExponentVector& mu) const {
        if (static_cast<int>(mu.size()) != nvars_) throw PreconditionError("shift length does not match variable count");
        LaurentPolynomial r(nvars_);
        for (const auto& [e, c] : terms_) r.terms_.emplace(e + mu, c);
        return r;
    }

    /// Componentwise minimum of the support; zero vector for f = 0.
    ExponentVector min_exponents() const {
        ExponentVector m(static_cast<std::size_t>(nvars_), 0);
        bool first = true;
        for (const auto& [e, c] : terms_) {
            for (std::size_t i = 0; i < m.size(); ++i) m[i] = first ? e[i] : std::min(m[i], e[i]);
            first = false;
        }
        return m;
    }
    ExponentVector max_exponents() const {
        ExponentVector m(static_cast<std::size_t>(nvars_), 0);
        bool first = true;
        for (const auto& [e, c] : terms_) {
            for (std::size_t i = 0; i < m.size(); ++i) m[i] = first ? e[i] : std::max(m[i], e[i]);
            first = false;
        }
        return m;
    }

    /// Returns (g, mu) with g = sigma^mu * f a polynomial whose minimum
    /// exponent in every variable is zero.
    std::pair<LaurentPolynomial, ExponentVector> clear_to_polynomial() const {
        if (is_zero()) throw PreconditionError("clear_to_polynomial of the zero polynomial");
        ExponentVector mu = -min_exponents();
        return {shifted(mu), mu};
    }

    /// Total degree of the cleared representative.
    int cleared_degree() const {
        if (is_zero()) return 0;
        ExponentVector lo = min_exponents();
        int best = 0;
        for (const auto& [e, c] : terms_) {
            int d = 0;
            for (std::size_t i = 0; i < e.size(); ++i) d += e[i] - lo[i];
            best = std::max(best, d);
        }
        return best;
    }

    bool is_polynomial() const {
        for (const auto& [e, c] : terms_)
            for (int x : e)
                if (x < 0) return false;
        return true;
    }

    /// Variables that occur in the support with a nonzero exponent.
    std::vector<bool> occurring_variables() const {
        std::vector<bool> occ(static_cast<std::size_t>(nvars_), false);
        for (const auto& [e, c] : terms_)
            for (std::size_t i = 0; i < e.size(); ++i)
                if (e[i] != 0) occ[i] = true;
        return occ;
    }

    /// Inverse of a unit (single term).
    LaurentPolynomial unit_inverse() const {
        if (!is_unit()) throw PreconditionError("inverse requested for a non-unit");
        const auto& [e, c] = *terms_.begin();
        return monomial(-e, 1 / c);
    }

    LaurentPolynomial pow(long k) const {
        if (k < 0) return unit_inverse().pow(-k);
        LaurentPolynomial result = constant(nvars_, 1), base = *this;
        while (k > 0) {
            if (k & 1) result = result * base;
            k >>= 1;
            if (k > 0) base = base * base;
        }
        return result;
    }

    /// Evaluation at a point with nonzero rational coordinates.
    Rational evaluate(const std::vector<Rational>& point) const {
        if (static_cast<int>(point.size()) != nvars_) throw PreconditionError("evaluation point has wrong dimension");
        Rational sum = 0;
        for (const auto& [e, c] : terms_) {
            Rational t = c;
            for (std::size_t i = 0; i < e.size(); ++i)
                if (e[i] != 0) t *= ndflow::pow(point[i], e[i]);
            sum += t;
        }
        return sum;
    }

    /// Re-indexes variables: variable i of *this becomes variable var_map[i]
    /// of a ring with new_nvars variables. Variables mapped to -1 must not occur.
    LaurentPolynomial remap(int new_nvars, const std::vector<int>& var_map) const {
        LaurentPolynomial r(new_nvars);
        for (const auto& [e, c] : terms_) {
            ExponentVector ne(static_cast<std::size_t>(new_nvars), 0);
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0) continue;
                if (var_map.at(i) < 0) throw PreconditionError("remap drops an occurring variable");
                ne[static_cast<std::size_t>(var_map[i])] += e[i];
            }
            r.add_term(ne, c);
        }
        return r;
    }

    /// Embeds into a ring with more variables (appended at the end).
    LaurentPolynomial extend(int new_nvars) const {
        std::vector<int> map(static_cast<std::size_t>(nvars_));
        for (int i = 0; i < nvars_; ++i) map[static_cast<std::size_t>(i)] = i;
        return remap(new_nvars, map);
    }

    /// Restricts to the first k variables; the others must not occur.
    LaurentPolynomial truncate(int k) const {
        std::vector<int> map(static_cast<std::size_t>(nvars_), -1);
        for (int i = 0; i < k; ++i) map[static_cast<std::size_t>(i)] = i;
        return remap(k, map);
    }

    /// Groups terms by the exponent of variable `var`; the coefficients live
    /// in the same ring with that variable absent.
    std::map<int, LaurentPolynomial> coefficients_in(int var) const {
        std::map<int, LaurentPolynomial> out;
        for (const auto& [e, c] : terms_) {
            ExponentVector rest = e;
            int k = rest[static_cast<std::size_t>(var)];
            rest[static_cast<std::size_t>(var)] = 0;
            auto [it, ins] = out.try_emplace(k, nvars_);
            it->second.add_term(rest, c);
        }
        return out;
    }

   private:
    void check_same(const LaurentPolynomial& o) const {
        if (o.nvars_ != nvars_)
            throw PreconditionError("variable count mismatch (" + std::to_string(nvars_) + " vs " +
                                    std::to_string(o.nvars_) + ")");
    }

    int nvars_ = 0;
    TermMap terms_;
};

/// Exact quotient f / g in the Laurent ring, or nullopt if g does not divide f.
/// Uses lexicographic leading terms, which are multiplicative on Z^n; every
/// quotient exponent must lie in the box [min f - min g, max f - max g].
inline std::optional<LaurentPolynomial> divide_exact(const LaurentPolynomial& f, const LaurentPolynomial& g) {
    if (g.is_zero()) throw PreconditionError("division by zero polynomial");
    LaurentPolynomial q(f.nvars()), r = f;
    if (f.is_zero()) return q;
    const auto& [glead_e, glead_c] = *g.terms().rbegin();
    const ExponentVector lo = f.min_exponents() - g.min_exponents();
    const ExponentVector hi = f.max_exponents() - g.max_exponents();
    while (!r.is_zero()) {
        const auto& [e, c] = *r.terms().rbegin();
        ExponentVector qe = e - glead_e;
        for (std::size_t i = 0; i < qe.size(); ++i)
            if (qe[i] < lo[i] || qe[i] > hi[i]) return std::nullopt;
        LaurentPolynomial t = LaurentPolynomial::monomial(qe, c / glead_c);
        q += t;
        r -= t * g;
    }
    return q;
}

using LaurentVector = std::vector<LaurentPolynomial>;

inline LaurentVector zero_vector(int nvars, std::size_t q) { return LaurentVector(q, LaurentPolynomial(nvars)); }

inline LaurentVector unit_vector(int nvars, std::size_t q, std::size_t j) {
    LaurentVector v = zero_vector(nvars, q);
    v.at(j) = LaurentPolynomial::constant(nvars, 1);
    return v;
}

inline bool is_zero(const LaurentVector& v) {
    return std::all_of(v.begin(), v.end(), [](const LaurentPolynomial& p) { return p.is_zero(); });
}

inline LaurentVector operator+(LaurentVector a, const LaurentVector& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b.at(i);
    return a;
}
inline LaurentVector operator-(LaurentVector a, const LaurentVector& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b.at(i);
    return a;
}
inline LaurentVector operator*(const LaurentPolynomial& s, LaurentVector a) {
    for (auto& x : a) x = s * x;
    return a;
}

/// Common shift mu making sigma^mu * v polynomial with minimal exponents zero
/// across all entries; zero vector for v = 0.
inline ExponentVector clearing_shift(const LaurentVector& v, int nvars) {
    ExponentVector lo(static_cast<std::size_t>(nvars), 0);
    bool first = true;
    for (const auto& p : v) {
        if (p.is_zero()) continue;
        ExponentVector m = p.min_exponents();
        for (std::size_t i = 0; i < lo.size(); ++i) lo[i] = first ? m[i] : std::min(lo[i], m[i]);
        first = false;
    }
    return -lo;
}

inline LaurentVector shifted(const LaurentVector& v, const ExponentVector& mu) {
    LaurentVector r;
    r.reserve(v.size());
    for (const auto& p : v) r.push_back(p.shifted(mu));
    return r;
}

}  // namespace ndflow

#endif
