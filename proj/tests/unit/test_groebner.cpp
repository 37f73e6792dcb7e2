#include <gtest/gtest.h>

#include <random>

#include "ndflow/equation_module.hpp"
#include "ndflow/text.hpp"

using namespace ndflow;

namespace {

LaurentPolynomial P(const char* s, int n) { return parse_polynomial(s, n); }

gb::Vec V(const std::vector<const char*>& entries, int n, const gb::Order& o = gb::Order::grevlex()) {
    LaurentVector v;
    for (const char* s : entries) v.push_back(P(s, n));
    return gb::from_laurent(v, o);
}

EquationModule ideal(int n, const std::vector<const char*>& gens) {
    std::vector<LaurentPolynomial> g;
    for (const char* s : gens) g.push_back(P(s, n));
    return EquationModule::ideal(n, g);
}

EquationModule module(int n, const std::vector<std::vector<const char*>>& rows) {
    std::vector<LaurentVector> r;
    for (const auto& row : rows) {
        LaurentVector v;
        for (const char* s : row) v.push_back(P(s, n));
        r.push_back(v);
    }
    return EquationModule(n, static_cast<int>(rows.front().size()), r);
}

LaurentPolynomial random_poly(std::mt19937& rng, int n, int terms, int lo, int hi) {
    std::uniform_int_distribution<int> ex(lo, hi), co(-3, 3);
    LaurentPolynomial f(n);
    for (int t = 0; t < terms; ++t) {
        ExponentVector e(static_cast<std::size_t>(n));
        for (auto& x : e) x = ex(rng);
        f.add_term(e, co(rng));
    }
    return f;
}

// Long division by a single univariate polynomial, written independently
// of the engine's term machinery.
LaurentPolynomial univariate_remainder(LaurentPolynomial f, const LaurentPolynomial& g) {
    auto deg = [](const LaurentPolynomial& p) { return p.terms().rbegin()->first[0]; };
    while (!f.is_zero() && deg(f) >= deg(g)) {
        const auto& [fe, fc] = *f.terms().rbegin();
        const auto& [ge, gc] = *g.terms().rbegin();
        f -= LaurentPolynomial::variable(1, 0, fe[0] - ge[0]) * (fc / gc) * g;
    }
    return f;
}

}  // namespace

TEST(Groebner, UnivariateExamples) {
    auto gbasis = gb::buchberger({V({"s1^2 - 1"}, 1), V({"s1^3 - s1"}, 1)}, 1, 1, gb::Order::grevlex());
    ASSERT_EQ(gbasis.elems.size(), 1u);
    EXPECT_EQ(gb::to_laurent(gbasis.elems[0], 1, 1)[0], P("s1^2 - 1", 1));
    auto unit = gb::buchberger({V({"1"}, 2)}, 2, 1, gb::Order::grevlex());
    EXPECT_TRUE(unit.is_unit_module());
    EXPECT_EQ(gb::to_laurent(gbasis.reduce(V({"s1^3"}, 1)), 1, 1)[0], P("s1", 1));
}

TEST(Groebner, NormalFormMatchesLongDivision) {
    std::mt19937 rng(2);
    auto g = P("s1^3 - 2*s1 + 5", 1);
    auto gbasis = gb::buchberger({gb::from_laurent({g}, gb::Order::grevlex())}, 1, 1, gb::Order::grevlex());
    for (int i = 0; i < 30; ++i) {
        auto f = random_poly(rng, 1, 5, 0, 7);
        auto nf = gb::to_laurent(gbasis.reduce(gb::from_laurent({f}, gb::Order::grevlex())), 1, 1)[0];
        EXPECT_EQ(nf, univariate_remainder(f, g));
    }
}

TEST(Groebner, CompletionProperties) {
    std::mt19937 rng(7);
    // lex completions grow quickly, so the lex and elimination runs use two variables
    const std::vector<std::pair<gb::Order, int>> cases{
        {gb::Order::grevlex(), 3}, {gb::Order::lex(), 2}, {gb::Order::elimination(gb::variable_mask(1, 2)), 2}};
    for (const auto& [order, n] : cases) {
        for (int trial = 0; trial < 6; ++trial) {
            std::vector<gb::Vec> gens;
            for (int k = 0; k < 3; ++k) {
                LaurentVector v{random_poly(rng, n, 3, 0, 2), random_poly(rng, n, 2, 0, 2)};
                gens.push_back(gb::from_laurent(v, order));
            }
            auto gbasis = gb::buchberger(gens, n, 2, order);
            EXPECT_TRUE(gb::is_groebner(gbasis.elems, order));
            for (const auto& g : gens) EXPECT_TRUE(gbasis.contains(g));
            // reduced bases are unique, so adding a basis element changes nothing
            auto as_rows = [&](const gb::Basis& b) {
                std::vector<LaurentVector> rows;
                for (const auto& e : b.elems) rows.push_back(gb::to_laurent(e, n, 2));
                return rows;
            };
            for (const auto& e : gbasis.elems) {
                std::vector<gb::Vec> with = gens;
                with.push_back(e);
                EXPECT_EQ(as_rows(gb::buchberger(with, n, 2, order)), as_rows(gbasis));
            }
            gb::Vec f = gb::from_laurent({random_poly(rng, n, 4, 0, 3), random_poly(rng, n, 4, 0, 3)}, order);
            auto nf = gbasis.reduce(f);
            EXPECT_EQ(gb::to_laurent(gbasis.reduce(nf), n, 2), gb::to_laurent(nf, n, 2));
        }
    }
}

TEST(Groebner, EliminationOrderRanksEliminatedVariablesHigher) {
    gb::Order o = gb::Order::elimination(gb::variable_mask(1, 2));
    gb::Monomial y = gb::from_laurent({P("s2", 2)}, o).front().m;
    gb::Monomial big = gb::from_laurent({P("s1^9", 2)}, o).front().m;
    EXPECT_GT(o.compare_monomials(y, big), 0);
}

TEST(Groebner, Syzygies) {
    EXPECT_TRUE(syzygies({{P("s1+1", 1)}}, 1, 1).empty());
    auto s = syzygies({{P("s1+1", 2)}, {P("s1+1", 2)}}, 2, 1);
    EquationModule S(2, 2, s);
    EXPECT_TRUE(S.contains(LaurentVector{P("1", 2), P("-1", 2)}));
    std::mt19937 rng(4);
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<LaurentVector> rows;
        for (int k = 0; k < 3; ++k) rows.push_back({random_poly(rng, 2, 2, -1, 2), random_poly(rng, 2, 2, -1, 2)});
        for (const auto& r : syzygies(rows, 2, 2)) {
            LaurentVector acc = zero_vector(2, 2);
            for (std::size_t i = 0; i < rows.size(); ++i) acc = acc + r[i] * rows[i];
            EXPECT_TRUE(is_zero(acc));
        }
    }
}

TEST(EquationModule, LaurentMembership) {
    auto a = ideal(3, {"s3^2 - 2*s3 + 1", "s2^2 - 2*s2 + 1", "s1*s3 - s1 - s2 - s3 + 2"});
    EXPECT_TRUE(a.contains(P("s1*s3 - s1 - s2 - s3 + 2", 3)));
    EXPECT_FALSE(a.contains(P("s3 - 1", 3)));
    EXPECT_TRUE(a.contains(P("s1^-5", 3) * P("s2^2 - 2*s2 + 1", 3)));
    std::mt19937 rng(9);
    for (int i = 0; i < 10; ++i) {
        auto unit = random_poly(rng, 3, 1, -4, 4);
        if (unit.is_zero()) continue;
        EXPECT_TRUE(a.contains(unit * P("s3^2 - 2*s3 + 1", 3)));
        EXPECT_FALSE(a.contains(unit * P("s3 - 1", 3)));
    }
}

TEST(EquationModule, Saturation) {
    auto x = ideal(2, {"s1"});
    EXPECT_TRUE(x.is_full());
    auto xf = ideal(2, {"s1*s2 + s1"});
    EXPECT_TRUE(xf.contains(P("s2 + 1", 2)));
    // polynomial saturation: <x*f> : x^inf contains f
    auto sat = gb::saturate({V({"s1*s2 + s1^2"}, 2)}, V({"s1"}, 2), 2, 1);
    EXPECT_TRUE(sat.gb.contains(V({"s2 + s1"}, 2)));
    EXPECT_EQ(sat.index, 1);
    auto again = gb::saturate(sat.gb.elems, V({"s1"}, 2), 2, 1);
    EXPECT_EQ(again.index, 0);
}

TEST(EquationModule, Lift) {
    auto R = module(2, {{"s1-1", "2"}, {"1", "s2-1"}});
    LaurentVector v = P("s1^-2*s2", 2) * R.generators()[0] + P("3 - s2^-1", 2) * R.generators()[1];
    auto cof = R.lift(v);
    ASSERT_TRUE(cof.has_value());
    LaurentVector acc = zero_vector(2, 2);
    for (std::size_t i = 0; i < cof->size(); ++i) acc = acc + (*cof)[i] * R.generators()[i];
    EXPECT_EQ(acc, v);
    EXPECT_FALSE(R.lift({P("1", 2), P("0", 2)}).has_value());
    // a member that needs the saturation: s1^-1 * (s1*f) with f = first row
    auto shifted_rows = module(2, {{"s1^2 - s1", "2*s1"}});
    auto c2 = shifted_rows.lift({P("s1-1", 2), P("2", 2)});
    ASSERT_TRUE(c2.has_value());
    EXPECT_EQ((*c2)[0], P("s1^-1", 2));
}

TEST(EquationModule, Contraction) {
    auto m = ideal(2, {"s2 - 1", "s1 - 1"});
    EXPECT_TRUE(m.contract(1).equals(ideal(1, {"s1 - 1"})));
    auto nnl = ideal(2, {"s1*s2^3 - s1*s2^2 - s2 + 1"});
    EXPECT_TRUE(nnl.contract(1).is_zero());
    EXPECT_TRUE(EquationModule::full(3, 2).contract(1).is_full());
    auto a = ideal(3, {"s3^2 - 2*s3 + 1", "s2^2 - 2*s2 + 1", "s1*s3 - s1 - s2 - s3 + 2"});
    auto c = a.contract(1);
    EXPECT_TRUE(c.is_zero());
    auto c2 = a.contract(2);
    for (const auto& g : c2.generators()) EXPECT_TRUE(a.contains(LaurentVector{g[0].extend(3)}));
    EXPECT_TRUE(c2.contains(P("s2^2 - 2*s2 + 1", 2)));
}

TEST(EquationModule, ContractionContainsTestedElements) {
    std::mt19937 rng(12);
    auto a = ideal(3, {"s1*s3 - s2", "s3^2 - s1 - 1"});
    for (int i = 0; i < 5; ++i) {
        auto c = a.contract(2);
        for (const auto& g : c.generators()) EXPECT_TRUE(a.contains(LaurentVector{g[0].extend(3)}));
        // s2^2 - s1^2 (s1 + 1) is in a and free of s3
        auto u = random_poly(rng, 2, 1, -2, 2);
        if (!u.is_zero()) {
            EXPECT_TRUE(c.contains(u * P("s2^2 - s1^3 - s1^2", 2)));
        }
    }
}

TEST(EquationModule, IntersectionAndColon) {
    auto x = ideal(3, {"s1 - 1"}), y = ideal(3, {"s2 - 1"});
    auto xy = x.intersect(y);
    EXPECT_TRUE(xy.equals(ideal(3, {"(s1 - 1)*(s2 - 1)"})));
    EXPECT_TRUE(x.intersect(x).equals(x));
    auto g = ideal(2, {"s1*(s2 + 2)"});
    EXPECT_TRUE(g.colon(P("s1", 2)).equals(ideal(2, {"s2 + 2"})));
    auto h = ideal(2, {"(s1 + 1)*(s2 + 2)"});
    EXPECT_TRUE(h.colon(P("s1 + 1", 2)).equals(ideal(2, {"s2 + 2"})));
    auto R = module(2, {{"s1-1", "2"}, {"1", "s2-1"}});
    auto c0 = R.colon_ideal(unit_vector(2, 2, 0));
    EXPECT_TRUE(c0.equals(ideal(2, {"s1*s2 - s1 - s2 - 1"})));
}
