#ifndef NDFLOW_CERTIFICATES_HPP
#define NDFLOW_CERTIFICATES_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "equation_module.hpp"
#include "errors.hpp"
#include "groebner.hpp"
#include "laurent.hpp"

namespace ndflow {

/// p = s_i^L + sum_{k<L} a_k s_i^k with every a_k in the first d variables
/// and a_0 a unit; p kills the quotient module.
struct IntegralityCertificate {
    int var = 0;  // zero-based variable index, >= d
    LaurentPolynomial p;
    int degree = 0;
};

struct CertificateOptions {
    int cert_bound = 0;  // maximum s_i-span of a certificate; 0 picks 2 * max basis degree
};

namespace detail {

// A polynomial in d+1 variables viewed in the last one: coefficient map,
// shifted so that the lowest power is zero.
struct TView {
    std::map<int, LaurentPolynomial> coef;
    int span() const { return coef.empty() ? -1 : coef.rbegin()->first; }
    bool top_unit() const { return !coef.empty() && coef.rbegin()->second.is_unit(); }
    bool bottom_unit() const { return !coef.empty() && coef.begin()->second.is_unit(); }
};

inline TView t_view(const LaurentPolynomial& f, int t) {
    TView v;
    auto raw = f.coefficients_in(t);
    if (raw.empty()) return v;
    int base = raw.begin()->first;
    for (auto& [k, c] : raw) v.coef.emplace(k - base, std::move(c));
    return v;
}

inline LaurentPolynomial from_view(const TView& v, int nvars, int t) {
    LaurentPolynomial f(nvars);
    for (const auto& [k, c] : v.coef) f += c * LaurentPolynomial::variable(nvars, t, k);
    return f;
}

// g + m * s_t^shift * h
inline LaurentPolynomial combine(const LaurentPolynomial& g, const LaurentPolynomial& m, int shift,
                                 const LaurentPolynomial& h, int t) {
    return g + m * LaurentPolynomial::variable(g.nvars(), t, shift) * h;
}

// Cancels non-unit extreme coefficients of f against basis elements of a
// strictly smaller span whose matching extreme coefficient is a unit.
inline std::optional<LaurentPolynomial> repair(LaurentPolynomial f, const std::vector<LaurentPolynomial>& pool, int t,
                                               int bound) {
    for (int step = 0; step < 4 * bound + 4; ++step) {
        TView v = t_view(f, t);
        if (v.coef.empty() || v.span() > bound) return std::nullopt;
        if (v.top_unit() && v.bottom_unit()) return f;
        bool progressed = false;
        for (const auto& h : pool) {
            TView hv = t_view(h, t);
            if (hv.coef.empty() || hv.span() >= v.span()) continue;
            const int f_lo = f.coefficients_in(t).begin()->first, h_lo = h.coefficients_in(t).begin()->first;
            if (!v.bottom_unit() && hv.bottom_unit()) {
                LaurentPolynomial m = -(v.coef.begin()->second * hv.coef.begin()->second.unit_inverse());
                f = combine(f, m, f_lo - h_lo, h, t);
                progressed = true;
                break;
            }
            if (!v.top_unit() && hv.top_unit()) {
                const int f_hi = f_lo + v.span(), h_hi = h_lo + hv.span();
                LaurentPolynomial m = -(v.coef.rbegin()->second * hv.coef.rbegin()->second.unit_inverse());
                f = combine(f, m, f_hi - h_hi, h, t);
                progressed = true;
                break;
            }
        }
        if (!progressed) return std::nullopt;
    }
    return std::nullopt;
}

}  // namespace detail

/// Certificate for one variable: a monic polynomial in s_var over the first
/// d variables, with unit trailing coefficient, inside the ideal `ann`.
inline IntegralityCertificate extract_certificate(const EquationModule& ann, int d, int var,
                                                  const CertificateOptions& opt = {}) {
    if (ann.q() != 1) throw PreconditionError("certificates are extracted from an ideal");
    const int n = ann.n();
    const std::string fail = "not strongly relevant of order " + std::to_string(d) +
                             " (or bound too small): no certificate for s" + std::to_string(var + 1);
    std::vector<int> keep;
    for (int k = 0; k < d; ++k) keep.push_back(k);
    keep.push_back(var);
    EquationModule e = ann.restrict_to_variables(keep);
    if (e.is_zero()) throw PreconditionError(fail);

    const int t = d;
    const gb::Order order = gb::Order::elimination(1u << t);
    std::vector<gb::Vec> rows;
    for (const auto& g : e.groebner_generators()) rows.push_back(gb::from_laurent(g, order));
    gb::Basis basis = gb::buchberger(rows, d + 1, 1, order);
    std::vector<LaurentPolynomial> pool;
    int max_degree = 0;
    for (const auto& g : basis.elems) {
        pool.push_back(gb::to_laurent(g, d + 1, 1)[0]);
        max_degree = std::max(max_degree, pool.back().cleared_degree());
    }
    std::stable_sort(pool.begin(), pool.end(), [&](const LaurentPolynomial& a, const LaurentPolynomial& b) {
        return detail::t_view(a, t).span() < detail::t_view(b, t).span();
    });
    const int bound = opt.cert_bound > 0 ? opt.cert_bound : std::max(1, 2 * max_degree);

    std::optional<LaurentPolynomial> found;
    for (const auto& g : pool) {
        detail::TView v = detail::t_view(g, t);
        if (v.span() <= bound && v.top_unit() && v.bottom_unit()) {
            found = g;
            break;
        }
    }
    if (!found)
        for (const auto& g : pool)
            if ((found = detail::repair(g, pool, t, bound))) break;
    if (!found) throw PreconditionError(fail);

    detail::TView v = detail::t_view(*found, t);
    LaurentPolynomial inv = v.coef.rbegin()->second.unit_inverse();
    LaurentPolynomial p = inv * detail::from_view(v, d + 1, t);
    std::vector<int> back(static_cast<std::size_t>(d + 1));
    for (int k = 0; k < d; ++k) back[static_cast<std::size_t>(k)] = k;
    back[static_cast<std::size_t>(d)] = var;
    return {var, p.remap(n, back), v.span()};
}

/// One certificate per variable d..n-1.
inline std::vector<IntegralityCertificate> extract_certificates(const EquationModule& ann, int d,
                                                                const CertificateOptions& opt = {}) {
    if (d < 0 || d > ann.n()) throw PreconditionError("certificate order d out of range");
    std::vector<IntegralityCertificate> out;
    for (int i = d; i < ann.n(); ++i) out.push_back(extract_certificate(ann, d, i, opt));
    return out;
}

/// Structural check: monic in s_var, unit trailing coefficient, coefficients
/// free of the variables >= d other than s_var.
inline bool well_formed(const IntegralityCertificate& c, int d) {
    auto coef = c.p.coefficients_in(c.var);
    if (coef.empty() || coef.begin()->first != 0 || coef.rbegin()->first != c.degree) return false;
    if (coef.rbegin()->second != LaurentPolynomial::constant(c.p.nvars(), 1)) return false;
    if (!coef.begin()->second.is_unit()) return false;
    for (const auto& [k, a] : coef) {
        auto occ = a.occurring_variables();
        for (int v = d; v < c.p.nvars(); ++v)
            if (occ[static_cast<std::size_t>(v)]) return false;
    }
    return true;
}

}  // namespace ndflow

#endif
