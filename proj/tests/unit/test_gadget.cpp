#include "fixtures.hpp"

#include <zhorn/gadget.hpp>
#include <zhorn/oracle.hpp>

#include <gtest/gtest.h>

using namespace zhorn;
namespace fx = zhorn::fixtures;

namespace {

// Slices of the family scale with L, so a solution with L = lambda divides to
// one with L = 1, where every gadget value lies within |m1| + |m2| + 2.
bool gadget_satisfiable(const ConstraintLanguage & lang, const GadgetInstance & g)
{
    Formula phi = instantiate(lang, g.constraints, {g.lambda_variable});
    Int bound = abs(g.family.m1) + abs(g.family.m2) + 2;
    return box_sat(phi, Box{bound}).has_value();
}

} // namespace

TEST(OneInThree, BruteForce)
{
    EXPECT_TRUE(one_in_three_satisfiable({3, {{0, 1, 2}}}));
    EXPECT_FALSE(one_in_three_satisfiable({1, {{0, 0, 0}}}));
    EXPECT_TRUE(one_in_three_satisfiable({3, {{0, 1, 2}, {0, 0, 1}}}));
    EXPECT_TRUE(one_in_three_satisfiable({0, {}}));
    EXPECT_THROW(one_in_three_satisfiable({2, {{0, 1, 2}}}), InvalidArgument);
}

TEST(Gadget, LiteralTwoCosetFailsPrecondition)
{
    // (0, 0) is in S, so the slice at lambda = 0 is {0}.
    auto lang = fx::load_language(fx::two_coset_text());
    try {
        analyze_family(lang, fx::two_coset_family());
        FAIL() << "precondition accepted";
    }
    catch (const InvalidArgument & e) {
        EXPECT_NE(std::string(e.what()).find("lambda = 0"), std::string::npos) << e.what();
    }
}

TEST(Gadget, RepairedFamily)
{
    auto lang = fx::load_language(fx::two_coset_repaired_text());
    auto fa = analyze_family(lang, fx::two_coset_family());
    EXPECT_EQ(fa.base, (std::vector<Int>{0, 1}));
    EXPECT_EQ(fa.m1, 0);
    EXPECT_EQ(fa.m2, 1);
    EXPECT_EQ(fa.lambdas, (std::vector<Int>{-5, -3, -1, 1, 3, 5}));
}

TEST(Gadget, SingleClause)
{
    auto lang = fx::load_language(fx::two_coset_repaired_text());
    OneInThreeInstance inst{3, {{0, 1, 2}}};
    auto g = gadget_one_in_three(lang, fx::two_coset_family(), inst);
    Formula phi = instantiate(lang, g.constraints, {g.lambda_variable});
    auto w = box_sat(phi, Box{2});
    ASSERT_TRUE(w);
    // exactly one of p0, p1, p2 equals L, the others 0
    const auto & vars = phi.variables();
    auto value = [&](const std::string & name) {
        return (*w)[static_cast<std::size_t>(std::find(vars.begin(), vars.end(), name) - vars.begin())];
    };
    Int l = value("L");
    int ones = 0;
    for (const auto & p : g.variable_names) {
        Int v = value(p);
        EXPECT_TRUE(v == 0 || v == l);
        ones += v == l;
    }
    EXPECT_EQ(ones, 1);
}

TEST(Gadget, ForcedPattern)
{
    auto lang = fx::load_language(fx::two_coset_repaired_text());
    OneInThreeInstance inst{3, {{0, 1, 2}, {0, 0, 1}}};
    auto g = gadget_one_in_three(lang, fx::two_coset_family(), inst);
    EXPECT_EQ(gadget_satisfiable(lang, g), one_in_three_satisfiable(inst));
    OneInThreeInstance bad{1, {{0, 0, 0}}};
    EXPECT_FALSE(gadget_satisfiable(lang, gadget_one_in_three(lang, fx::two_coset_family(), bad)));
}

TEST(Gadget, EmptyClauseSet)
{
    auto lang = fx::load_language(fx::two_coset_repaired_text());
    auto g = gadget_one_in_three(lang, fx::two_coset_family(), {2, {}});
    EXPECT_TRUE(g.constraints.empty());
    EXPECT_TRUE(gadget_satisfiable(lang, g));
}

TEST(Gadget, ShiftedFamily)
{
    // theta(l, x) := S(l, x - 2l): slices {2l, 3l}, so m1 = 2 and the shift
    // chain is exercised.
    auto lang = fx::load_language(fx::two_coset_repaired_text());
    PpFormula theta{{"l", "x"},
                    {{"plus", {"l", "l", "l2"}}, {"plus", {"u", "l2", "x"}}, {"S", {"l", "u"}}, {"S", {"l", "y"}},
                     {"plus", {"u", "y", "l"}}}};
    GadgetOptions opts;
    opts.lambda_window = 3;
    auto fa = analyze_family(lang, theta, opts);
    EXPECT_EQ(fa.m1, 2);
    EXPECT_EQ(fa.m2, 3);
    fx::Rng rng(81);
    for (int i = 0; i < 5; ++i) {
        auto inst = fx::random_one_in_three(rng, 4, 3);
        auto g = gadget_one_in_three(lang, theta, inst, opts);
        EXPECT_EQ(gadget_satisfiable(lang, g), one_in_three_satisfiable(inst));
    }
}

TEST(Gadget, RandomAgreement)
{
    auto lang = fx::load_language(fx::two_coset_repaired_text());
    fx::Rng rng(82);
    int sat = 0;
    for (int i = 0; i < 10; ++i) {
        auto inst = fx::random_one_in_three(rng, 5, 5);
        auto g = gadget_one_in_three(lang, fx::two_coset_family(), inst);
        bool expected = one_in_three_satisfiable(inst);
        sat += expected;
        EXPECT_EQ(gadget_satisfiable(lang, g), expected);
    }
    EXPECT_GT(sat, 0);
    EXPECT_LT(sat, 10);
}
