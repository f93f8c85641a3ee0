#include "fixtures.hpp"

#include <zhorn/periodic_set.hpp>

#include <gtest/gtest.h>

#include <sstream>

using namespace zhorn;
namespace fx = zhorn::fixtures;
using fx::parse;

namespace {

using Set = EventuallyPeriodicSet;

std::string show(const Set & s)
{
    std::ostringstream os;
    os << s;
    return os.str();
}

void expect_matches(const Set & s, const Formula & phi, long window = 50)
{
    for (long x = -window; x <= window; ++x)
        ASSERT_EQ(s.contains(x), evaluate(phi, IntVector{x})) << show(s) << " at " << x;
}

} // namespace

TEST(PeriodicSet, Factories)
{
    EXPECT_TRUE(Set::empty().is_empty());
    EXPECT_TRUE(Set::empty().is_finite());
    EXPECT_FALSE(Set::integers().is_finite());
    EXPECT_TRUE(Set::point(4).contains(4));
    EXPECT_FALSE(Set::point(4).contains(5));
    EXPECT_TRUE(Set::progression(2, 5).contains(-3));
    EXPECT_EQ(Set::progression(7, 5), Set::progression(2, 5));
}

TEST(PeriodicSet, CanonicalPeriodIsMinimal)
{
    Set s(6, {0, 2, 4});
    EXPECT_EQ(s.period(), 2);
    EXPECT_EQ(s.residues(), (std::vector<Int>{0}));
    EXPECT_EQ(Set(4, {0, 1, 2, 3}), Set::integers());
}

TEST(PeriodicSet, ConventionsHold)
{
    // added points inside R° and removed points outside it are absorbed
    Set s(3, {1}, {4, 6}, {5, 7});
    EXPECT_EQ(s.added(), (std::set<Int>{6}));
    EXPECT_EQ(s.removed(), (std::set<Int>{7}));
}

TEST(PeriodicSet, Algebra)
{
    Set a = Set::progression(0, 2);
    Set b = Set::progression(0, 3);
    EXPECT_EQ(a.intersect(b), Set::progression(0, 6));
    Set u = a.unite(b);
    EXPECT_EQ(u.period(), 6);
    EXPECT_EQ(u.residues(), (std::vector<Int>{0, 2, 3, 4}));
    EXPECT_EQ(a.complement(), Set::progression(1, 2));
    EXPECT_EQ(Set::point(3).complement().complement(), Set::point(3));
    EXPECT_EQ(Set::integers().complement(), Set::empty());
}

TEST(UnaryDecompose, Examples)
{
    Set s = unary_decompose(parse("(x = 1 mod 3 | x = 6)"));
    EXPECT_EQ(s.period(), 3);
    EXPECT_EQ(s.residues(), (std::vector<Int>{1}));
    EXPECT_EQ(s.added(), (std::set<Int>{6}));
    EXPECT_TRUE(s.removed().empty());
    expect_matches(s, parse("(x = 1 mod 3 | x = 6)"));

    Set t = unary_decompose(parse("(x = 0 mod 2) & !(x = 0)"));
    EXPECT_EQ(t.period(), 2);
    EXPECT_EQ(t.residues(), (std::vector<Int>{0}));
    EXPECT_TRUE(t.added().empty());
    EXPECT_EQ(t.removed(), (std::set<Int>{0}));
    EXPECT_EQ(show(t), "period 2 residues {0} added {} removed {0}");

    Set p = unary_decompose(parse("(x = 5)"));
    EXPECT_EQ(p.period(), 1);
    EXPECT_TRUE(p.residues().empty());
    EXPECT_EQ(p.added(), (std::set<Int>{5}));
}

TEST(UnaryDecompose, RejectsWrongArity)
{
    EXPECT_THROW(unary_decompose(parse("(x = y)")), InvalidArgument);
}

TEST(UnaryDecompose, RandomAgreesWithEvaluation)
{
    fx::Rng rng(51);
    fx::RandomFormulaSpec spec;
    spec.variables = 1;
    spec.max_modulus = 6;
    spec.constant = 8;
    spec.allow_negated_modular = true;
    spec.negative_share = 0.4;
    for (int i = 0; i < 300; ++i) {
        Formula phi = fx::random_formula(rng, spec);
        expect_matches(unary_decompose(phi), phi, 60);
    }
}
