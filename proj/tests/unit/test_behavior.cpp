#include <gtest/gtest.h>

#include "support.hpp"

using namespace ndflow;
using namespace testing_support;

TEST(Behavior, CharacteristicIdeal) {
    EXPECT_TRUE(characteristic_ideal(module_2d()).equals(ideal(2, {"s1*s2 - s1 - s2 - 1"})));
    EXPECT_TRUE(characteristic_ideal(module(2, {{"s1 - 1", "s2"}})).is_zero());
    EXPECT_TRUE(characteristic_ideal(scalar_3d()).equals(scalar_3d()));
}

TEST(Behavior, Annihilator) {
    auto ann = annihilator(module_2d());
    EXPECT_TRUE(ann.equals(ideal(2, {"s1*s2 - s2 - s1 - 1"})));
    auto a = scalar_3d();
    EXPECT_TRUE(annihilator(a).equals(a));
    EXPECT_TRUE(annihilator(a).contains(P("s2^2 - 2*s2 + 1", 3)));
    EXPECT_TRUE(annihilator(a).contains(P("s3^2 - 2*s3 + 1", 3)));
    EXPECT_TRUE(annihilator(module(2, {{"s1 - 1", "s2"}})).is_zero());
}

TEST(Behavior, Autonomy) {
    EXPECT_TRUE(is_autonomous(scalar_3d()));
    EXPECT_TRUE(is_autonomous(scalar_2d()));
    EXPECT_TRUE(is_autonomous(module_2d()));
    EXPECT_FALSE(is_autonomous(EquationModule(2, 1, {})));
    EXPECT_FALSE(is_autonomous(module(2, {{"s1 - 1", "s2"}})));
    auto rep = autonomy_report(module_2d());
    EXPECT_TRUE(rep.minors_nonzero);
    EXPECT_TRUE(rep.warning.empty());
}

TEST(Behavior, AnnihilatorInvariantUnderRowOperations) {
    std::mt19937 rng(11);
    auto base = module_2d();
    auto ann = annihilator(base);
    for (int trial = 0; trial < 10; ++trial) {
        auto rows = base.generators();
        auto mixed = rows;
        std::size_t a = trial % 2, b = 1 - a;
        auto m = random_poly(rng, 2, 2, -1, 1);
        for (std::size_t j = 0; j < rows[a].size(); ++j) mixed[a][j] += m * rows[b][j];
        mixed.push_back(random_poly(rng, 2, 2, -1, 1) * rows[0]);
        EquationModule sys(2, 2, mixed);
        ASSERT_TRUE(sys.equals(base));
        EXPECT_TRUE(annihilator(sys).equals(ann));
    }
}

TEST(Behavior, ActOnTrajectory) {
    TrajectoryWindow w(Box({0}, {5}), 1);
    for (long i = 0; i <= 5; ++i) w.set({i}, {Rational(i * i)});
    auto same = act_on_trajectory(row({"1"}, 1), w);
    EXPECT_EQ(same, w);
    auto shifted = act_on_trajectory(row({"s1"}, 1), w);
    EXPECT_EQ(shifted.box(), Box({0}, {4}));
    for (long i = 0; i <= 4; ++i) EXPECT_EQ(shifted.at({i}, 0), Rational((i + 1) * (i + 1)));
    auto back = act_on_trajectory(row({"s1^-2"}, 1), w);
    EXPECT_EQ(back.box(), Box({2}, {5}));
    TrajectoryWindow tiny(Box({0}, {0}), 1);
    EXPECT_THROW(act_on_trajectory(row({"s1"}, 1), tiny), PreconditionError);
}

TEST(Behavior, EquivalentLiftsActEqually) {
    // w = 2^nu1 3^nu2 lies in ker col(s1 - 2, s2 - 3)
    auto sys = geometric_2d();
    Box box = Box::cube(2, -3, 3);
    TrajectoryWindow w(box, 1);
    box.for_each([&](const Point& p) {
        mpz_class a, b;
        mpz_pow_ui(a.get_mpz_t(), mpz_class(2).get_mpz_t(), static_cast<unsigned long>(std::abs(p[0])));
        mpz_pow_ui(b.get_mpz_t(), mpz_class(3).get_mpz_t(), static_cast<unsigned long>(std::abs(p[1])));
        Rational x = p[0] < 0 ? Rational(1, 1) / Rational(a) : Rational(a);
        Rational y = p[1] < 0 ? Rational(1, 1) / Rational(b) : Rational(b);
        w.set(p, {x * y});
    });
    ASSERT_TRUE(verify_solution(sys, w).ok());
    auto m = row({"s1^2*s2 - s2^-1"}, 2);
    auto m2 = m;
    m2[0] += P("s1 + 4", 2) * P("s1 - 2", 2) + P("s2^-1", 2) * P("s2 - 3", 2);
    ASSERT_TRUE(same_class(sys, m, m2));
    auto a = act_on_trajectory(m, w), b = act_on_trajectory(m2, w);
    Box common = Box({-2, -2}, {1, 2});
    EXPECT_EQ(a.restrict(common), b.restrict(common));
    EXPECT_FALSE(same_class(sys, m, row({"s1"}, 2)));
}
