#ifndef NDFLOW_REALIZATION_HPP
#define NDFLOW_REALIZATION_HPP

#include <map>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "certificates.hpp"
#include "dnnl.hpp"
#include "equation_module.hpp"
#include "laurent_matrix.hpp"

namespace ndflow {

/// Parallelepiped generator m * e_j, m a monomial in the variables d..n-1.
struct Generator {
    ExponentVector exponents;  // length n - d
    int basis_index = 0;
};

/// basis index outermost, then the monomials with s_{d+1} varying fastest.
inline std::vector<Generator> build_generating_set(const std::vector<IntegralityCertificate>& certs, int q) {
    std::vector<Generator> out;
    const std::size_t k = certs.size();
    for (int j = 0; j < q; ++j) {
        ExponentVector e(k, 0);
        bool empty = false;
        for (const auto& c : certs) empty |= c.degree == 0;
        if (empty) continue;
        for (;;) {
            out.push_back({e, j});
            std::size_t i = 0;
            while (i < k && e[i] + 1 == certs[i].degree) e[i++] = 0;
            if (i == k) break;
            ++e[i];
        }
    }
    return out;
}

/// A_d-linear reduction of Laurent vectors onto the parallelepiped: two-sided
/// division by the certificates, one big variable at a time.
class SpanReducer {
   public:
    SpanReducer(int n, int d, int q, std::vector<IntegralityCertificate> certs)
        : n_(n), d_(d), q_(q), certs_(std::move(certs)) {
        gens_ = build_generating_set(certs_, q_);
        for (std::size_t k = 0; k < gens_.size(); ++k) index_[{gens_[k].basis_index, gens_[k].exponents}] = k;
        for (const auto& c : certs_) {
            auto coef = c.p.coefficients_in(c.var);
            trailing_inv_.push_back(coef.begin()->second.unit_inverse());
        }
    }

    const std::vector<Generator>& generators() const noexcept { return gens_; }
    std::size_t gamma() const noexcept { return gens_.size(); }

    /// Remainder of f in [0, L) for every big variable.
    LaurentPolynomial reduce_polynomial(LaurentPolynomial f) const {
        for (std::size_t i = 0; i < certs_.size(); ++i) {
            const auto& c = certs_[i];
            const int v = c.var, L = c.degree;
            for (;;) {
                if (f.is_zero()) break;
                auto coef = f.coefficients_in(v);
                int lo = coef.begin()->first, hi = coef.rbegin()->first;
                if (lo < 0) {
                    f -= coef.begin()->second * trailing_inv_[i] * LaurentPolynomial::variable(n_, v, lo) * c.p;
                } else if (hi >= L) {
                    f -= coef.rbegin()->second * LaurentPolynomial::variable(n_, v, hi - L) * c.p;
                } else {
                    break;
                }
            }
        }
        return f;
    }

    /// Coefficient row over A_d (length gamma) with psi(row) = v modulo R.
    LaurentVector reduce(const LaurentVector& v) const {
        if (static_cast<int>(v.size()) != q_) throw PreconditionError("reduce_to_span: vector length differs from q");
        LaurentVector row = zero_vector(d_, gamma());
        for (int j = 0; j < q_; ++j) {
            LaurentPolynomial r = reduce_polynomial(v[static_cast<std::size_t>(j)]);
            for (const auto& [e, c] : r.terms()) {
                ExponentVector big(e.begin() + d_, e.end()), small(e.begin(), e.begin() + d_);
                auto it = index_.find({j, big});
                if (it == index_.end()) throw InternalError("reduction left the parallelepiped");
                row[it->second].add_term(small, c);
            }
        }
        return row;
    }

    /// psi(row) as a vector in A^q.
    LaurentVector expand(const LaurentVector& row) const {
        LaurentVector v = zero_vector(n_, static_cast<std::size_t>(q_));
        for (std::size_t k = 0; k < gens_.size(); ++k) {
            ExponentVector e(static_cast<std::size_t>(d_), 0);
            e.insert(e.end(), gens_[k].exponents.begin(), gens_[k].exponents.end());
            v[static_cast<std::size_t>(gens_[k].basis_index)] += row[k].extend(n_) * LaurentPolynomial::monomial(e);
        }
        return v;
    }

    LaurentVector generator_vector(std::size_t k) const {
        LaurentVector row = zero_vector(d_, gamma());
        row[k] = LaurentPolynomial::constant(d_, 1);
        return expand(row);
    }

   private:
    int n_, d_, q_;
    std::vector<IntegralityCertificate> certs_;
    std::vector<Generator> gens_;
    std::map<std::pair<int, ExponentVector>, std::size_t> index_;
    std::vector<LaurentPolynomial> trailing_inv_;
};

struct MemberWitness {
    bool member = false;
    LaurentVector row;                       // the A_d row vector tested against X
    std::vector<LaurentPolynomial> witness;  // F with row = F * X when member
};

/// First-order realization x(nu + e_j) = A_j x(nu), w = C x, X x = 0.
class FirstOrderRealization {
   public:
    FirstOrderRealization(EquationModule system, int d, std::vector<IntegralityCertificate> certs)
        : system_(std::move(system)),
          d_(d),
          certs_(std::move(certs)),
          reducer_(system_.n(), d, system_.q(), certs_),
          powers_(std::make_shared<PowerCache>()) {
        const int n = system_.n(), q = system_.q();
        if (static_cast<int>(certs_.size()) != n - d) throw PreconditionError("one certificate per big variable required");
        for (const auto& c : certs_)
            for (int j = 0; j < q; ++j)
                if (!system_.contains(c.p * unit_vector(n, static_cast<std::size_t>(q), static_cast<std::size_t>(j))))
                    throw PreconditionError("certificate for s" + std::to_string(c.var + 1) + " does not annihilate the quotient");
        const std::size_t gamma = reducer_.gamma();

        for (int i = d; i < n; ++i) {
            LaurentMatrix A(gamma, gamma, d);
            for (std::size_t k = 0; k < gamma; ++k) {
                LaurentVector row = reducer_.reduce(LaurentPolynomial::variable(n, i) * reducer_.generator_vector(k));
                for (std::size_t c = 0; c < gamma; ++c) A(k, c) = row[c];
            }
            if (!det(A).is_unit()) throw InternalError("companion matrix is not unimodular");
            A_inv_.push_back(inverse(A));
            A_.push_back(std::move(A));
        }

        C_ = LaurentMatrix(static_cast<std::size_t>(q), gamma, d);
        for (std::size_t k = 0; k < gamma; ++k) {
            const auto& g = reducer_.generators()[k];
            if (std::all_of(g.exponents.begin(), g.exponents.end(), [](int x) { return x == 0; }))
                C_(static_cast<std::size_t>(g.basis_index), k) = LaurentPolynomial::constant(d, 1);
        }

        // rows of X: reductions of m * R_i over the parallelepiped monomials m
        std::vector<LaurentVector> kept;
        for (const auto& r : system_.generators()) {
            for (const auto& g : reducer_.generators()) {
                if (g.basis_index != 0) continue;
                ExponentVector e(static_cast<std::size_t>(d), 0);
                e.insert(e.end(), g.exponents.begin(), g.exponents.end());
                LaurentVector row = reducer_.reduce(LaurentPolynomial::monomial(e) * r);
                if (is_zero(row)) continue;
                if (!kept.empty() && EquationModule(d, static_cast<int>(gamma), kept).contains(row)) continue;
                kept.push_back(row);
            }
        }
        for (std::size_t i = kept.size(); i-- > 0;) {
            std::vector<LaurentVector> others = kept;
            others.erase(others.begin() + static_cast<std::ptrdiff_t>(i));
            if (EquationModule(d, static_cast<int>(gamma), others).contains(kept[i])) kept = others;
        }
        X_ = LaurentMatrix::from_rows(kept, gamma, d);
        x_module_ = EquationModule(d, static_cast<int>(gamma), kept);
    }

    int n() const { return system_.n(); }
    int d() const { return d_; }
    int q() const { return system_.q(); }
    std::size_t gamma() const { return reducer_.gamma(); }
    const EquationModule& system() const { return system_; }
    const std::vector<IntegralityCertificate>& certificates() const { return certs_; }
    const std::vector<Generator>& generators() const { return reducer_.generators(); }
    const SpanReducer& reducer() const { return reducer_; }
    const LaurentMatrix& X() const { return X_; }
    const std::vector<LaurentMatrix>& A() const { return A_; }
    const std::vector<LaurentMatrix>& A_inverse() const { return A_inv_; }
    const LaurentMatrix& C() const { return C_; }
    const EquationModule& x_module() const { return x_module_; }

    LaurentVector reduce_to_span(const LaurentVector& v) const { return reducer_.reduce(v); }

    /// A_j^k for any integer k, memoized.
    const LaurentMatrix& power(std::size_t j, long k) const {
        std::lock_guard<std::mutex> lock(powers_->mutex);
        auto key = std::make_pair(j, k);
        auto it = powers_->cache.find(key);
        if (it != powers_->cache.end()) return it->second;
        LaurentMatrix m = ndflow::power(k < 0 ? A_inv_.at(j) : A_.at(j), k < 0 ? -k : k);
        return powers_->cache.emplace(key, std::move(m)).first->second;
    }

    /// E_j with X A_j = E_j X, or nullopt if some row of X A_j leaves span X.
    std::optional<LaurentMatrix> lift_through_relations(std::size_t j) const {
        LaurentMatrix XA = X_ * A_.at(j);
        LaurentMatrix E(X_.rows(), X_.rows(), d_);
        for (std::size_t i = 0; i < X_.rows(); ++i) {
            auto cof = x_module_.lift(XA.row(i));
            if (!cof) return std::nullopt;
            for (std::size_t k = 0; k < cof->size(); ++k) E(i, k) = (*cof)[k];
        }
        return E;
    }

    /// Membership of f in R through the realization: expand f term-wise
    /// into sigma_small^nu C_row prod A^nu_big, then test against span X.
    MemberWitness member_test(const LaurentVector& f) const {
        if (static_cast<int>(f.size()) != q()) throw PreconditionError("member_test: vector length differs from q");
        MemberWitness w;
        w.row = zero_vector(d_, gamma());
        for (int j = 0; j < q(); ++j)
            for (const auto& [e, c] : f[static_cast<std::size_t>(j)].terms()) {
                LaurentMatrix acc = C_.submatrix({static_cast<std::size_t>(j)}, iota(gamma()));
                for (std::size_t b = 0; b < A_.size(); ++b) {
                    long k = e[static_cast<std::size_t>(d_) + b];
                    if (k != 0) acc = acc * power(b, k);
                }
                ExponentVector small(e.begin(), e.begin() + d_);
                LaurentPolynomial s = LaurentPolynomial::monomial(small, c);
                for (std::size_t k = 0; k < gamma(); ++k) w.row[k] += s * acc(0, k);
            }
        if (is_zero(w.row)) {
            w.member = true;
            w.witness.assign(X_.rows(), LaurentPolynomial(d_));
            return w;
        }
        if (X_.rows() == 0) return w;
        auto cof = x_module_.lift(w.row);
        if (cof) {
            w.member = true;
            w.witness = *cof;
        }
        return w;
    }

    /// Kernel representation [X 0; s_i I - A_i 0; -C I] in all n variables.
    LaurentMatrix export_latent() const {
        const int n = this->n();
        const std::size_t g = gamma(), qq = static_cast<std::size_t>(q());
        const std::size_t rows = X_.rows() + A_.size() * g + qq;
        LaurentMatrix L(rows, g + qq, n);
        std::size_t r = 0;
        for (std::size_t i = 0; i < X_.rows(); ++i, ++r)
            for (std::size_t k = 0; k < g; ++k) L(r, k) = X_(i, k).extend(n);
        for (std::size_t b = 0; b < A_.size(); ++b)
            for (std::size_t i = 0; i < g; ++i, ++r)
                for (std::size_t k = 0; k < g; ++k) {
                    L(r, k) = -A_[b](i, k).extend(n);
                    if (i == k) L(r, k) += LaurentPolynomial::variable(n, d_ + static_cast<int>(b));
                }
        for (std::size_t i = 0; i < qq; ++i, ++r) {
            for (std::size_t k = 0; k < g; ++k) L(r, k) = -C_(i, k).extend(n);
            L(r, g + i) = LaurentPolynomial::constant(n, 1);
        }
        return L;
    }

   private:
    static std::vector<std::size_t> iota(std::size_t n) {
        std::vector<std::size_t> v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = i;
        return v;
    }

    struct PowerCache {
        std::mutex mutex;
        std::map<std::pair<std::size_t, long>, LaurentMatrix> cache;
    };

    EquationModule system_;
    int d_;
    std::vector<IntegralityCertificate> certs_;
    SpanReducer reducer_;
    LaurentMatrix X_, C_;
    std::vector<LaurentMatrix> A_, A_inv_;
    EquationModule x_module_;
    std::shared_ptr<PowerCache> powers_;
};

/// Realization of the transformed system of a normalization result.
inline FirstOrderRealization build_realization(const NormalizationResult& norm) {
    return FirstOrderRealization(norm.transformed, norm.d, norm.certificates);
}

/// Realization without a coordinate change, for systems already strongly
/// relevant of order d.
inline FirstOrderRealization build_realization(const EquationModule& sys, int d, const CertificateOptions& opt = {}) {
    return FirstOrderRealization(sys, d, extract_certificates(annihilator(sys), d, opt));
}

/// Relation module by syzygies of [generator vectors; R rows] over the full
/// ring, projected to the generator block and contracted to the first d
/// variables. Independent of the reduction route used by the constructor.
inline EquationModule relations_by_syzygies(const FirstOrderRealization& real) {
    const int n = real.n();
    const std::size_t g = real.gamma();
    std::vector<LaurentVector> stacked;
    for (std::size_t k = 0; k < g; ++k) stacked.push_back(real.reducer().generator_vector(k));
    for (const auto& r : real.system().generators()) stacked.push_back(r);
    std::vector<LaurentVector> proj;
    for (const auto& s : syzygies(stacked, n, real.q())) {
        LaurentVector p(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(g));
        if (!is_zero(p)) proj.push_back(p);
    }
    return EquationModule(n, static_cast<int>(g), proj).contract(real.d());
}

}  // namespace ndflow

#endif
