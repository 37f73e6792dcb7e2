#ifndef NDFLOW_DNNL_HPP
#define NDFLOW_DNNL_HPP

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "behavior.hpp"
#include "certificates.hpp"
#include "equation_module.hpp"
#include "unimodular.hpp"

namespace ndflow {

struct DnnlOptions {
    int t_bound = 8;
    CertificateOptions certificates;
    std::optional<unsigned> seed;  // shuffles element selection when set
};

struct NormalizationResult {
    UnimodularTransform T;
    int d = 0;
    EquationModule transformed;      // phi_T applied to the input module
    EquationModule transformed_ann;  // phi_T of the annihilator
    std::vector<IntegralityCertificate> certificates;
};

namespace detail {

inline bool last_variable_keys_distinct(const LaurentPolynomial& f, const std::vector<long>& t) {
    const int n = f.nvars();
    std::vector<long> keys;
    for (const auto& [e, c] : f.terms()) {
        long k = e[static_cast<std::size_t>(n - 1)];
        for (int i = 0; i + 1 < n; ++i) k += t[static_cast<std::size_t>(i)] * e[static_cast<std::size_t>(i)];
        keys.push_back(k);
    }
    std::sort(keys.begin(), keys.end());
    return std::adjacent_find(keys.begin(), keys.end()) == keys.end();
}

inline UnimodularTransform shear(int n, const std::vector<long>& t) {
    IntMatrix m(static_cast<std::size_t>(n), std::vector<long>(static_cast<std::size_t>(n), 0));
    for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
    for (int i = 0; i + 1 < n; ++i) m[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(i)] = t[static_cast<std::size_t>(i)];
    return UnimodularTransform(std::move(m));
}

// Visits t in Z^k with max |t_i| == m, lexicographically in the value
// order 0, 1, -1, 2, -2, ...; stops when visit returns true.
inline bool enumerate_shell(int k, long m, const std::function<bool(const std::vector<long>&)>& visit) {
    std::vector<long> values{0};
    for (long a = 1; a <= m; ++a) {
        values.push_back(a);
        values.push_back(-a);
    }
    std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
    std::vector<long> t(static_cast<std::size_t>(k));
    for (;;) {
        long norm = 0;
        for (int i = 0; i < k; ++i) {
            t[static_cast<std::size_t>(i)] = values[idx[static_cast<std::size_t>(i)]];
            norm = std::max(norm, std::labs(t[static_cast<std::size_t>(i)]));
        }
        if (norm == m && visit(t)) return true;
        int i = k - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] + 1 == values.size()) idx[static_cast<std::size_t>(i--)] = 0;
        if (i < 0) return false;
        ++idx[static_cast<std::size_t>(i)];
    }
}

}  // namespace detail

/// Shear T = [[I, 0], [t, 1]] making phi_T(f), read in the last variable,
/// have pairwise distinct degrees, hence unit coefficients.
inline std::pair<UnimodularTransform, LaurentPolynomial> normalize_polynomial(const LaurentPolynomial& f,
                                                                             int t_bound = 8) {
    if (f.is_zero()) throw PreconditionError("cannot normalize the zero polynomial");
    const int n = f.nvars();
    if (n <= 1) return {UnimodularTransform::identity(n), f};
    std::optional<std::vector<long>> chosen;
    for (long m = 0; m <= t_bound && !chosen; ++m)
        detail::enumerate_shell(n - 1, m, [&](const std::vector<long>& t) {
            if (!detail::last_variable_keys_distinct(f, t)) return false;
            chosen = t;
            return true;
        });
    if (!chosen) {
        long D = 0;
        for (const auto& [e, c] : f.terms())
            for (int x : e) D = std::max(D, static_cast<long>(std::abs(x)));
        std::vector<long> t(static_cast<std::size_t>(n - 1));
        long base = 2 * D + 1, p = 1;
        for (int i = n - 2; i >= 0; --i) {
            p *= base;
            t[static_cast<std::size_t>(i)] = p;
        }
        chosen = t;
    }
    UnimodularTransform T = detail::shear(n, *chosen);
    return {T, T.phi(f)};
}

/// True when f, read in its last variable, already has unit coefficients.
inline bool is_normalized(const LaurentPolynomial& f) {
    if (f.nvars() == 0) return true;
    for (const auto& [k, c] : f.coefficients_in(f.nvars() - 1))
        if (!c.is_unit()) return false;
    return true;
}

namespace detail {

inline LaurentPolynomial select_element(const EquationModule& J, const std::optional<unsigned>& seed, int level) {
    std::vector<LaurentPolynomial> cands;
    for (const auto& g : J.groebner_generators())
        if (!g[0].is_zero()) cands.push_back(g[0]);
    if (cands.empty()) throw InternalError("nonzero intersection without generators");
    if (seed) {
        std::mt19937 rng(*seed + static_cast<unsigned>(level));
        std::shuffle(cands.begin(), cands.end(), rng);
        return cands.front();
    }
    auto key = [](const LaurentPolynomial& f) { return std::make_pair(f.cleared_degree(), f.size()); };
    std::stable_sort(cands.begin(), cands.end(),
                     [&](const LaurentPolynomial& a, const LaurentPolynomial& b) { return key(a) < key(b); });
    for (const auto& c : cands)
        if (is_normalized(c)) return c;
    return cands.front();
}

}  // namespace detail

/// Flow-chart driver: step down one level at a time while the transformed
/// ideal still meets the current subring.
inline NormalizationResult dnnl_ideal(const EquationModule& a, const DnnlOptions& opt = {}) {
    if (a.q() != 1) throw PreconditionError("dnnl_ideal expects an ideal");
    if (a.is_full()) throw PreconditionError("unit ideal: the quotient is zero and no order d is faithful");
    const int n = a.n();
    UnimodularTransform T = UnimodularTransform::identity(n);
    EquationModule cur = a;
    int k = n;
    while (k > 0) {
        EquationModule J = k == n ? cur : cur.contract(k);
        if (J.is_zero()) break;
        LaurentPolynomial f = detail::select_element(J, opt.seed, k);
        auto [Tk, fk] = normalize_polynomial(f, opt.t_bound);
        UnimodularTransform step = UnimodularTransform::embed(Tk, n);
        T = step * T;
        if (!Tk.is_identity()) cur = step.phi(cur);
        --k;
    }
    NormalizationResult r{T, k, cur, cur, {}};
    try {
        r.certificates = extract_certificates(cur, k, opt.certificates);
    } catch (const PreconditionError& e) {
        std::string rows;
        for (const auto& row : T.matrix()) {
            rows += rows.empty() ? "[" : ",[";
            for (std::size_t j = 0; j < row.size(); ++j) rows += (j ? "," : "") + std::to_string(row[j]);
            rows += "]";
        }
        throw PreconditionError("normalization incomplete at d=" + std::to_string(k) + " with T=[" + rows + "]: " + e.what());
    }
    return r;
}

/// Normalizes the annihilator and transports the module along.
inline NormalizationResult dnnl_module(const EquationModule& sys, const DnnlOptions& opt = {}) {
    NormalizationResult r = dnnl_ideal(annihilator(sys), opt);
    r.transformed = r.T.phi(sys);
    return r;
}

}  // namespace ndflow

#endif
