#ifndef NDFLOW_STATE_ANALYSIS_HPP
#define NDFLOW_STATE_ANALYSIS_HPP

#include <vector>

#include "dnnl.hpp"
#include "realization.hpp"

namespace ndflow {

struct StateSpaceReport {
    std::size_t gamma = 0;
    int d = 0;
    std::size_t rank = 0;
    bool is_free = false;
    bool is_nonautonomous = false;
    std::vector<LaurentPolynomial> minors;  // r x r minors of X
    std::vector<LaurentPolynomial> bezout;  // sum bezout_i * minors_i = 1 when free
};

/// Projectivity of the state module via the r x r minors of X (r = rank X)
/// generating the unit ideal; projective implies free over the Laurent ring.
inline StateSpaceReport freeness_check(const FirstOrderRealization& real) {
    StateSpaceReport rep;
    rep.gamma = real.gamma();
    rep.d = real.d();
    const LaurentMatrix& X = real.X();
    if (X.rows() == 0) {
        rep.is_free = true;
        return rep;
    }
    rep.rank = rank(X);
    if (rep.rank == 0) {
        rep.is_free = true;
        return rep;
    }
    rep.minors = minors(X, rep.rank);
    std::vector<LaurentPolynomial> nonzero;
    for (const auto& m : rep.minors)
        if (!m.is_zero()) nonzero.push_back(m);
    EquationModule ideal = EquationModule::ideal(real.d(), nonzero);
    rep.is_free = ideal.is_full();
    if (rep.is_free) {
        auto cof = ideal.lift({LaurentPolynomial::constant(real.d(), 1)});
        if (!cof) throw InternalError("unit minor ideal without a Bezout identity");
        std::size_t k = 0;
        for (const auto& m : rep.minors) rep.bezout.push_back(m.is_zero() ? LaurentPolynomial(real.d()) : (*cof)[k++]);
    }
    return rep;
}

/// The transformed annihilator meets the first d' variables only in zero.
inline bool faithful_at(const EquationModule& transformed_ann, int d) { return transformed_ann.contract(d).is_zero(); }

inline bool nonautonomy_check(const NormalizationResult& norm) { return faithful_at(norm.transformed_ann, norm.d); }

inline StateSpaceReport analyze_state_space(const NormalizationResult& norm, const FirstOrderRealization& real) {
    StateSpaceReport rep = freeness_check(real);
    rep.is_nonautonomous = nonautonomy_check(norm);
    return rep;
}

}  // namespace ndflow

#endif
