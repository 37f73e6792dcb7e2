#include <gtest/gtest.h>

#include "support.hpp"

using namespace ndflow;
using namespace testing_support;

namespace {

const IntMatrix kShear21{{1, 0}, {2, 1}};

// phi_T on a monomial, computed straight from the exponent map.
LaurentPolynomial phi_monomial(const IntMatrix& T, const ExponentVector& e, const Rational& c) {
    ExponentVector out(e.size(), 0);
    for (std::size_t j = 0; j < e.size(); ++j)
        for (std::size_t i = 0; i < e.size(); ++i) out[j] += static_cast<int>(T[j][i]) * e[i];
    return LaurentPolynomial::monomial(out, c);
}

}  // namespace

TEST(Transform, ValidatesDeterminant) {
    EXPECT_NO_THROW(UnimodularTransform{kShear21});
    EXPECT_NO_THROW(UnimodularTransform(IntMatrix{{0, 1}, {1, 0}}));
    EXPECT_THROW(UnimodularTransform(IntMatrix{{2, 0}, {0, 1}}), PreconditionError);
    EXPECT_THROW(UnimodularTransform(IntMatrix{{1, 0}}), PreconditionError);
}

TEST(Transform, GoldenImages) {
    UnimodularTransform T(kShear21);
    EXPECT_EQ(T.phi(P("s1*s2 - s1 - s2 + 1", 2)), P("s1*s2^3 - s1*s2^2 - s2 + 1", 2));
    auto f = P("s1^-1*s2^2 - 7", 2);
    EXPECT_EQ(UnimodularTransform::identity(2).phi(f), f);
    auto image = T.phi(module_2d());
    EXPECT_TRUE(image.equals(module(2, {{"s1*s2^2 - 1", "2"}, {"1", "s2 - 1"}})));
    EXPECT_TRUE(UnimodularTransform::identity(2).phi(module_2d()).equals(module_2d()));
}

TEST(Transform, MorphismLaws) {
    std::mt19937 rng(21);
    for (int trial = 0; trial < 120; ++trial) {
        const int n = 2 + trial % 2;
        auto T = random_unimodular(rng, n), U = random_unimodular(rng, n);
        auto f = random_poly(rng, n, 4, -2, 2), g = random_poly(rng, n, 3, -2, 2);
        ASSERT_EQ(T.phi(f * g), T.phi(f) * T.phi(g));
        ASSERT_EQ(T.phi(f + g), T.phi(f) + T.phi(g));
        ASSERT_EQ(T.phi(LaurentPolynomial::constant(n, 5)), LaurentPolynomial::constant(n, 5));
        ASSERT_EQ(U.phi(T.phi(f)), (U * T).phi(f));
        ASSERT_EQ(T.inverse().phi(T.phi(f)), f);
        LaurentPolynomial oracle(n);
        for (const auto& [e, c] : f.terms()) oracle += phi_monomial(T.matrix(), e, c);
        ASSERT_EQ(T.phi(f), oracle);
        ASSERT_EQ(std::abs(detail::int_det(T.matrix()).get_num().get_si()), 1);
    }
}

TEST(Transform, AnnihilatorCommutesWithTransform) {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<LaurentVector> rows;
        for (int r = 0; r < 2; ++r) rows.push_back({random_poly(rng, 2, 2, 0, 1), random_poly(rng, 2, 2, 0, 1)});
        EquationModule sys(2, 2, rows);
        auto T = random_unimodular(rng, 2, 2);
        EXPECT_TRUE(T.phi(annihilator(sys)).equals(annihilator(T.phi(sys)))) << "trial " << trial;
    }
}

TEST(NormalizePolynomial, Examples) {
    auto [T, g] = normalize_polynomial(P("s1*s2 - s1 - s2 + 1", 2));
    EXPECT_EQ(T.matrix(), kShear21);
    EXPECT_EQ(g, P("s1*s2^3 - s1*s2^2 - s2 + 1", 2));
    std::set<int> degrees;
    for (const auto& [k, c] : g.coefficients_in(1)) {
        degrees.insert(k);
        EXPECT_TRUE(c.is_unit());
    }
    EXPECT_EQ(degrees, (std::set<int>{0, 1, 2, 3}));

    auto [I, m] = normalize_polynomial(P("3*s1^2*s2^-1", 2));
    EXPECT_TRUE(I.is_identity());
    EXPECT_EQ(m, P("3*s1^2*s2^-1", 2));
    EXPECT_THROW(normalize_polynomial(LaurentPolynomial(2)), PreconditionError);
}

TEST(NormalizePolynomial, SearchAndFallback) {
    auto f = P("1 + s1*s2", 3);
    auto [T, g] = normalize_polynomial(f, 2);
    long t1 = T.matrix()[2][0], t2 = T.matrix()[2][1];
    EXPECT_NE(t1 + t2, 0);
    EXPECT_EQ(std::max(std::abs(t1), std::abs(t2)), 1);
    EXPECT_TRUE(is_normalized(g));
    auto [F, h] = normalize_polynomial(f, 0);
    EXPECT_EQ(F.matrix()[2], (std::vector<long>{9, 3, 1}));
    EXPECT_TRUE(is_normalized(h));
}

TEST(Dnnl, IdealExamples) {
    auto r = dnnl_ideal(scalar_2d());
    EXPECT_EQ(r.d, 1);
    EXPECT_EQ(r.T.matrix(), kShear21);
    EXPECT_TRUE(r.transformed.contract(1).is_zero());
    ASSERT_EQ(r.certificates.size(), 1u);
    EXPECT_EQ(r.certificates[0].p, P("s2^3 - s2^2 - s1^-1*s2 + s1^-1", 2));

    auto z = dnnl_ideal(EquationModule(3, 1, {}));
    EXPECT_EQ(z.d, 3);
    EXPECT_TRUE(z.T.is_identity());

    auto s = dnnl_ideal(scalar_3d());
    EXPECT_EQ(s.d, 1);
    EXPECT_TRUE(s.T.is_identity());
    ASSERT_EQ(s.certificates.size(), 2u);
    EXPECT_EQ(s.certificates[0].p, P("s2^2 - 2*s2 + 1", 3));
    EXPECT_EQ(s.certificates[1].p, P("s3^2 - 2*s3 + 1", 3));
}

TEST(Dnnl, NestedLevel) {
    auto a = ideal(3, {"s3 - 1", "s1*s2 - s1 - s2 + 1"});
    auto r = dnnl_ideal(a);
    EXPECT_EQ(r.d, 1);
    EXPECT_EQ(r.T.matrix(), (IntMatrix{{1, 0, 0}, {2, 1, 0}, {0, 0, 1}}));
    EXPECT_TRUE(r.transformed.contract(1).is_zero());
    ASSERT_EQ(r.certificates.size(), 2u);
    EXPECT_EQ(r.certificates[1].p, P("s3 - 1", 3));
    for (unsigned seed : {1u, 2u, 3u}) {
        DnnlOptions opt;
        opt.seed = seed;
        auto s = dnnl_ideal(a, opt);
        EXPECT_EQ(s.d, r.d) << "seed " << seed;
        EXPECT_TRUE(nonautonomy_check(s));
    }
}

TEST(Dnnl, ModuleExamples) {
    auto r = dnnl_module(module_2d());
    EXPECT_EQ(r.d, 1);
    EXPECT_EQ(r.T.matrix(), kShear21);
    EXPECT_TRUE(r.transformed.equals(module(2, {{"s1*s2^2 - 1", "2"}, {"1", "s2 - 1"}})));
    ASSERT_EQ(r.certificates.size(), 1u);
    EXPECT_EQ(r.certificates[0].p, P("s2^3 - s2^2 - s1^-1*s2 - s1^-1", 2));
    EXPECT_EQ(r.certificates[0].degree, 3);

    auto g = dnnl_module(geometric_2d());
    EXPECT_EQ(g.d, 0);
    EXPECT_TRUE(g.T.is_identity());
    ASSERT_EQ(g.certificates.size(), 2u);
    EXPECT_EQ(g.certificates[0].p, P("s1 - 2", 2));
    EXPECT_EQ(g.certificates[1].p, P("s2 - 3", 2));

    auto free = dnnl_module(EquationModule(2, 1, {}));
    EXPECT_EQ(free.d, 2);
    EXPECT_THROW(dnnl_module(ideal(2, {"s1^2*s2"})), PreconditionError);
}

TEST(Certificates, Examples) {
    auto c = extract_certificates(ideal(2, {"s2^2 - 2*s2 + 1", "s1*s2 - s2 - s1 + 1"}), 1);
    ASSERT_EQ(c.size(), 1u);
    EXPECT_EQ(c[0].p, P("s2^2 - 2*s2 + 1", 2));
    EXPECT_EQ(c[0].degree, 2);
    EXPECT_TRUE(well_formed(c[0], 1));
    EXPECT_FALSE(well_formed({1, P("2*s2^2 - 1", 2), 2}, 1));
    EXPECT_FALSE(well_formed({1, P("s2^2 - (1 + s1)", 2), 2}, 1));
}

TEST(Certificates, Invariants) {
    for (const auto& sys : {scalar_3d(), scalar_2d(), module_2d(), geometric_2d()}) {
        auto r = dnnl_module(sys);
        auto ann = r.transformed_ann;
        ASSERT_EQ(static_cast<int>(r.certificates.size()), sys.n() - r.d);
        for (const auto& c : r.certificates) {
            EXPECT_TRUE(well_formed(c, r.d));
            EXPECT_TRUE(ann.contains(c.p));
            for (int j = 0; j < sys.q(); ++j)
                EXPECT_TRUE(r.transformed.contains(c.p * unit_vector(sys.n(), static_cast<std::size_t>(sys.q()),
                                                                     static_cast<std::size_t>(j))));
        }
        EXPECT_TRUE(nonautonomy_check(r));
        EXPECT_TRUE(r.transformed_ann.equals(annihilator(r.transformed)));
    }
}

TEST(Certificates, MinimalityOfOrder) {
    for (const auto& sys : {scalar_3d(), scalar_2d(), module_2d()}) {
        auto r = dnnl_module(sys);
        for (int lower = 0; lower < r.d; ++lower) {
            EXPECT_THROW(extract_certificates(r.transformed_ann, lower), PreconditionError) << "d'=" << lower;
        }
    }
    // inflating d past the true order loses faithfulness
    auto r = dnnl_ideal(scalar_2d());
    EXPECT_FALSE(faithful_at(r.transformed_ann, r.d + 1));
    EXPECT_TRUE(faithful_at(r.transformed_ann, r.d));
}

TEST(Dnnl, DegreeBoundTooSmall) {
    DnnlOptions opt;
    opt.certificates.cert_bound = 1;
    try {
        dnnl_ideal(scalar_2d(), opt);
        FAIL() << "expected a failure";
    } catch (const PreconditionError& e) {
        std::string msg = e.what();
        EXPECT_NE(msg.find("normalization incomplete at d=1 with T=[[1,0],[2,1]]"), std::string::npos) << msg;
    }
}
