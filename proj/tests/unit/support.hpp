#ifndef NDFLOW_TEST_SUPPORT_HPP
#define NDFLOW_TEST_SUPPORT_HPP

#include <random>
#include <string>
#include <vector>

#include "ndflow/ndflow.hpp"

namespace testing_support {

using namespace ndflow;

inline LaurentPolynomial P(const std::string& s, int n) { return parse_polynomial(s, n); }

inline LaurentVector row(const std::vector<std::string>& entries, int n) {
    LaurentVector v;
    for (const auto& s : entries) v.push_back(P(s, n));
    return v;
}

inline LaurentMatrix mat(const std::vector<std::vector<std::string>>& rows, int n) {
    std::vector<LaurentVector> r;
    for (const auto& e : rows) r.push_back(row(e, n));
    return LaurentMatrix::from_rows(r, rows.empty() ? 0 : rows.front().size(), n);
}

inline EquationModule module(int n, const std::vector<std::vector<std::string>>& rows) {
    std::vector<LaurentVector> r;
    for (const auto& e : rows) r.push_back(row(e, n));
    return EquationModule(n, static_cast<int>(rows.front().size()), r);
}

inline EquationModule ideal(int n, const std::vector<std::string>& gens) {
    std::vector<LaurentPolynomial> g;
    for (const auto& s : gens) g.push_back(P(s, n));
    return EquationModule::ideal(n, g);
}

inline EquationModule scalar_3d() {
    return ideal(3, {"s3^2 - 2*s3 + 1", "s2^2 - 2*s2 + 1", "s1*s3 - s1 - s2 - s3 + 2"});
}
inline EquationModule scalar_2d() { return ideal(2, {"s1*s2 - s1 - s2 + 1"}); }
inline EquationModule module_2d() { return module(2, {{"s1 - 1", "2"}, {"1", "s2 - 1"}}); }
inline EquationModule geometric_2d() { return ideal(2, {"s1 - 2", "s2 - 3"}); }

inline LaurentPolynomial random_poly(std::mt19937& rng, int n, int terms, int lo, int hi, int coef = 3) {
    std::uniform_int_distribution<int> ex(lo, hi), co(-coef, coef);
    LaurentPolynomial f(n);
    for (int t = 0; t < terms; ++t) {
        ExponentVector e(static_cast<std::size_t>(n));
        for (auto& x : e) x = ex(rng);
        f.add_term(e, co(rng));
    }
    return f;
}

/// Product of `steps` random elementary integer matrices.
inline UnimodularTransform random_unimodular(std::mt19937& rng, int n, int steps = 3) {
    std::uniform_int_distribution<int> pick(0, n - 1), mult(-2, 2), coin(0, 1);
    IntMatrix m(static_cast<std::size_t>(n), std::vector<long>(static_cast<std::size_t>(n), 0));
    for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
    UnimodularTransform T(m);
    for (int s = 0; s < steps; ++s) {
        IntMatrix e = m;
        int a = pick(rng), b = pick(rng);
        if (a == b) {
            if (coin(rng)) e[static_cast<std::size_t>(a)][static_cast<std::size_t>(a)] = -1;
        } else {
            e[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = mult(rng);
        }
        T = UnimodularTransform(e) * T;
    }
    return T;
}

inline TrajectoryWindow random_window(std::mt19937& rng, const Box& box, int width, int magnitude = 4) {
    std::uniform_int_distribution<int> v(-magnitude, magnitude);
    TrajectoryWindow w(box, width);
    for (auto& x : w.values()) x = v(rng);
    return w;
}

}  // namespace testing_support

#endif
