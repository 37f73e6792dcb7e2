#ifndef NDFLOW_EQUATION_MODULE_HPP
#define NDFLOW_EQUATION_MODULE_HPP

#include <memory>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "groebner.hpp"
#include "laurent.hpp"
#include "laurent_matrix.hpp"

namespace ndflow {

/// Cleared polynomial representative sigma^mu * v of a Laurent vector.
inline std::pair<LaurentVector, ExponentVector> clear_vector(const LaurentVector& v, int nvars) {
    ExponentVector mu = clearing_shift(v, nvars);
    return {shifted(v, mu), mu};
}

/// Product of all variables, the element whose inversion turns the
/// polynomial ring into the Laurent ring.
inline gb::Vec all_variables_product(int nvars) {
    gb::Monomial m;
    for (int i = 0; i < nvars; ++i) m.e[i] = 1;
    m.deg = nvars;
    return {gb::Term{m, 0, Rational(1)}};
}

/// Submodule of A^q (A the Laurent ring in n variables) spanned by rows.
/// Saturated Groebner data is computed lazily and shared between copies.
class EquationModule {
   public:
    EquationModule() : EquationModule(0, 1, {}) {}
    EquationModule(int n, int q, std::vector<LaurentVector> rows) : n_(n), q_(q), rows_(std::move(rows)) {
        if (n < 0 || q < 0) throw PreconditionError("negative module dimensions");
        gb::check_nvars(n);
        for (const auto& r : rows_) {
            if (static_cast<int>(r.size()) != q) throw PreconditionError("generator length differs from q");
            for (const auto& p : r)
                if (p.nvars() != n) throw PreconditionError("generator entry has the wrong variable count");
        }
    }
    static EquationModule from_matrix(const LaurentMatrix& R) {
        return EquationModule(R.nvars(), static_cast<int>(R.cols()), R.row_list());
    }
    static EquationModule ideal(int n, const std::vector<LaurentPolynomial>& gens) {
        std::vector<LaurentVector> rows;
        for (const auto& g : gens) rows.push_back({g});
        return EquationModule(n, 1, std::move(rows));
    }
    static EquationModule full(int n, int q) {
        std::vector<LaurentVector> rows;
        for (int j = 0; j < q; ++j) rows.push_back(unit_vector(n, static_cast<std::size_t>(q), static_cast<std::size_t>(j)));
        return EquationModule(n, q, std::move(rows));
    }

    int n() const noexcept { return n_; }
    int q() const noexcept { return q_; }
    const std::vector<LaurentVector>& generators() const noexcept { return rows_; }
    LaurentMatrix matrix() const { return LaurentMatrix::from_rows(rows_, static_cast<std::size_t>(q_), n_); }

    /// Reduced GB of the saturation, as Laurent (polynomial) rows.
    std::vector<LaurentVector> groebner_generators() const {
        std::vector<LaurentVector> out;
        for (const auto& g : saturation().gb.elems) out.push_back(gb::to_laurent(g, n_, static_cast<std::size_t>(q_)));
        return out;
    }
    const gb::Saturation& saturation() const {
        std::call_once(cache_->sat_once, [&] {
            cache_->sat = gb::saturate(cleared_rows(), all_variables_product(n_), n_, q_);
        });
        return cache_->sat;
    }
    int saturation_index() const { return saturation().index; }

    bool is_zero() const { return saturation().gb.elems.empty(); }
    bool is_full() const { return saturation().gb.is_unit_module(); }

    bool contains(const LaurentVector& v) const {
        if (static_cast<int>(v.size()) != q_) throw PreconditionError("membership test: vector length differs from q");
        if (ndflow::is_zero(v)) return true;
        return saturation().gb.contains(gb::from_laurent(clear_vector(v, n_).first, saturation().gb.order));
    }
    bool contains(const LaurentPolynomial& f) const { return contains(LaurentVector{f}); }

    bool contains_module(const EquationModule& other) const {
        check_compatible(other);
        for (const auto& r : other.rows_)
            if (!contains(r)) return false;
        return true;
    }
    bool equals(const EquationModule& other) const { return contains_module(other) && other.contains_module(*this); }

    /// Normal form of the cleared representative; zero iff v is a member.
    LaurentVector reduce(const LaurentVector& v) const {
        if (ndflow::is_zero(v)) return v;
        const auto& gbasis = saturation().gb;
        auto [c, mu] = clear_vector(v, n_);
        return shifted(gb::to_laurent(gbasis.reduce(gb::from_laurent(c, gbasis.order)), n_, static_cast<std::size_t>(q_)),
                       -mu);
    }

    /// Laurent cofactors a with v = sum a_i generators()[i], or nullopt when
    /// v is not a member.
    std::optional<std::vector<LaurentPolynomial>> lift(const LaurentVector& v) const {
        std::vector<LaurentPolynomial> cof(rows_.size(), LaurentPolynomial(n_));
        if (ndflow::is_zero(v)) return cof;
        if (!contains(v)) return std::nullopt;
        const int s = saturation_index();
        std::call_once(cache_->lift_once, [&] {
            std::vector<gb::Vec> polys;
            for (std::size_t i = 0; i < rows_.size(); ++i) {
                if (ndflow::is_zero(rows_[i])) continue;
                auto [c, mu] = clear_vector(rows_[i], n_);
                polys.push_back(gb::from_laurent(c, gb::Order::grevlex()));
                cache_->lift_rows.push_back(i);
                cache_->lift_shifts.push_back(mu);
            }
            cache_->lifter.emplace(polys, n_, q_);
        });
        auto [c, mu] = clear_vector(v, n_);
        ExponentVector gs(static_cast<std::size_t>(n_), s);
        auto a = cache_->lifter->lift(gb::from_laurent(shifted(c, gs), gb::Order::grevlex()));
        if (!a) throw InternalError("membership and lift disagree");
        LaurentVector al = gb::to_laurent(*a, n_, cache_->lift_rows.size());
        for (std::size_t k = 0; k < al.size(); ++k)
            cof[cache_->lift_rows[k]] = al[k].shifted(cache_->lift_shifts[k] - mu - gs);
        return cof;
    }

    /// Elements free of every variable outside `keep`, re-indexed so that
    /// keep[i] becomes variable i.
    EquationModule restrict_to_variables(const std::vector<int>& keep) const {
        std::uint32_t mask = gb::variable_mask(0, n_);
        std::vector<int> remap(static_cast<std::size_t>(n_), -1);
        for (std::size_t i = 0; i < keep.size(); ++i) {
            if (keep[i] < 0 || keep[i] >= n_) throw PreconditionError("restrict_to_variables: index out of range");
            mask &= ~(1u << keep[i]);
            remap[static_cast<std::size_t>(keep[i])] = static_cast<int>(i);
        }
        const int k = static_cast<int>(keep.size());
        std::vector<LaurentVector> rows;
        for (const auto& g : gb::eliminate(saturation().gb.elems, n_, q_, mask)) {
            LaurentVector v = gb::to_laurent(g, n_, static_cast<std::size_t>(q_));
            for (auto& p : v) p = p.remap(k, remap);
            rows.push_back(std::move(v));
        }
        return EquationModule(k, q_, std::move(rows));
    }

    /// Intersection with the subring in the first d variables.
    EquationModule contract(int d) const {
        if (d < 0 || d > n_) throw PreconditionError("contract: d out of range");
        std::vector<int> keep;
        for (int i = 0; i < d; ++i) keep.push_back(i);
        return restrict_to_variables(keep);
    }

    /// { v : f v in M }.
    EquationModule colon(const LaurentPolynomial& f) const {
        if (f.is_zero()) return full(n_, q_);
        gb::Vec g = gb::from_laurent({f.clear_to_polynomial().first}, gb::Order::grevlex());
        std::vector<LaurentVector> rows;
        for (const auto& v : gb::colon(saturation().gb.elems, g, n_, q_))
            rows.push_back(gb::to_laurent(v, n_, static_cast<std::size_t>(q_)));
        return EquationModule(n_, q_, std::move(rows));
    }

    /// The ideal { f : f v in M }.
    EquationModule colon_ideal(const LaurentVector& v) const {
        if (ndflow::is_zero(v)) return full(n_, 1);
        std::vector<gb::Vec> stacked{gb::from_laurent(clear_vector(v, n_).first, gb::Order::grevlex())};
        for (const auto& g : saturation().gb.elems) stacked.push_back(g);
        std::vector<LaurentVector> rows;
        for (const auto& s : gb::syzygies(stacked, n_, q_)) {
            LaurentPolynomial first(n_);
            for (const auto& t : s)
                if (t.comp == 0) first += gb::to_laurent({gb::Term{t.m, 0, t.c}}, n_, 1)[0];
            if (!first.is_zero()) rows.push_back({first});
        }
        return EquationModule(n_, 1, std::move(rows));
    }

    EquationModule intersect(const EquationModule& other) const {
        check_compatible(other);
        const auto& a = saturation().gb.elems;
        const auto& b = other.saturation().gb.elems;
        std::vector<gb::Vec> stacked(a);
        stacked.insert(stacked.end(), b.begin(), b.end());
        std::vector<LaurentVector> rows;
        const int m = static_cast<int>(a.size());
        for (const auto& s : gb::syzygies(stacked, n_, q_)) {
            gb::Vec acc;
            for (const auto& t : s)
                if (t.comp < m) {
                    gb::Vec piece = gb::scaled(a[static_cast<std::size_t>(t.comp)], t.c, t.m);
                    std::vector<gb::Term> merged(acc.begin(), acc.end());
                    merged.insert(merged.end(), piece.begin(), piece.end());
                    acc = gb::normalize(std::move(merged), gb::Order::grevlex());
                }
            if (!acc.empty()) rows.push_back(gb::to_laurent(acc, n_, static_cast<std::size_t>(q_)));
        }
        return EquationModule(n_, q_, std::move(rows));
    }

   private:
    struct Cache {
        std::once_flag sat_once, lift_once;
        gb::Saturation sat;
        std::optional<gb::Lifter> lifter;
        std::vector<std::size_t> lift_rows;
        std::vector<ExponentVector> lift_shifts;
    };

    std::vector<gb::Vec> cleared_rows() const {
        std::vector<gb::Vec> out;
        for (const auto& r : rows_)
            if (!ndflow::is_zero(r)) out.push_back(gb::from_laurent(clear_vector(r, n_).first, gb::Order::grevlex()));
        return out;
    }
    void check_compatible(const EquationModule& o) const {
        if (o.n_ != n_ || o.q_ != q_) throw PreconditionError("modules live in different ambient spaces");
    }

    int n_ = 0, q_ = 1;
    std::vector<LaurentVector> rows_;
    std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

/// Generators over the Laurent ring of { a : sum a_i rows_i = 0 }.
inline std::vector<LaurentVector> syzygies(const std::vector<LaurentVector>& rows, int n, int q) {
    std::vector<gb::Vec> polys;
    std::vector<ExponentVector> shifts;
    std::vector<std::size_t> index;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (ndflow::is_zero(rows[i])) continue;
        auto [c, mu] = clear_vector(rows[i], n);
        polys.push_back(gb::from_laurent(c, gb::Order::grevlex()));
        shifts.push_back(mu);
        index.push_back(i);
    }
    std::vector<LaurentVector> out;
    // zero rows are free syzygy directions
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (ndflow::is_zero(rows[i])) out.push_back(unit_vector(n, rows.size(), i));
    for (const auto& s : gb::syzygies(polys, n, q)) {
        LaurentVector compact = gb::to_laurent(s, n, polys.size());
        LaurentVector full = zero_vector(n, rows.size());
        for (std::size_t k = 0; k < compact.size(); ++k) full[index[k]] = compact[k].shifted(shifts[k]);
        out.push_back(std::move(full));
    }
    return out;
}

inline std::vector<LaurentVector> syzygies(const LaurentMatrix& m) {
    return syzygies(m.row_list(), m.nvars(), static_cast<int>(m.cols()));
}

}  // namespace ndflow

#endif
