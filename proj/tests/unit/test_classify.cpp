#include "fixtures.hpp"

#include <zhorn/classify.hpp>
#include <zhorn/horn.hpp>
#include <zhorn/oracle.hpp>

#include <gtest/gtest.h>

using namespace zhorn;
namespace fx = zhorn::fixtures;
using fx::parse;

namespace {

ConstraintLanguage single(const std::string & name, const std::string & def, std::size_t arity = 1)
{
    ConstraintLanguage lang;
    lang.add(name, parse(def, coordinate_names(arity)));
    return lang;
}

bool member(const std::vector<IntVector> & rel, const IntVector & t)
{
    return std::binary_search(rel.begin(), rel.end(), t);
}

} // namespace

TEST(Quotient, Examples)
{
    auto odd = quotient(single("R", "(x1 = 1 mod 2)"), 2);
    EXPECT_EQ(odd.relations.at("R"), (std::vector<IntVector>{{1}}));
    auto zero = quotient(single("R", "(x1 = 0)"), 2);
    EXPECT_EQ(zero.relations.at("R"), (std::vector<IntVector>{{0}}));
    EXPECT_EQ(zero.relations.at("plus").size(), 4u);

    auto ex3 = fx::load_language(fx::multi_coset_text());
    auto q = quotient(ex3, 3);
    EXPECT_EQ(q.relations.at("R"), (std::vector<IntVector>{{0}, {1}, {2}}));
    EXPECT_EQ(q.relations.at("K"), (std::vector<IntVector>{{1}}));
}

TEST(Quotient, SerialMatchesParallel)
{
    fx::Rng rng(71);
    fx::RandomFormulaSpec spec;
    spec.variables = 2;
    spec.max_modulus = 6;
    for (int i = 0; i < 40; ++i) {
        Formula phi = standardize(fx::random_formula(rng, spec));
        Int d = fx::uniform(rng, 1, 6);
        EXPECT_EQ(quotient_relation(phi, d), quotient_relation_parallel(phi, d));
    }
}

TEST(Quotient, AgreesWithBoxLifts)
{
    // A residue tuple is in the quotient iff some shared lift lies in the
    // relation; lifts q in [-6, 6] suffice for these small constants.
    fx::Rng rng(72);
    fx::RandomFormulaSpec spec;
    spec.variables = 2;
    spec.constant = 3;
    for (int i = 0; i < 40; ++i) {
        Formula phi = standardize(fx::random_formula(rng, spec));
        const long d = fx::uniform(rng, 2, 4);
        auto rel = quotient_relation(phi, d);
        for (long a = 0; a < d; ++a)
            for (long b = 0; b < d; ++b) {
                bool lifted = false;
                for (long q = -6; q <= 6 && ! lifted; ++q)
                    lifted = evaluate(phi, IntVector{q * d + a, q * d + b});
                if (lifted) {
                    EXPECT_TRUE(member(rel, {a, b})) << to_string(phi);
                }
            }
    }
}

TEST(Maltsev, Examples)
{
    EXPECT_TRUE(maltsev_coset_test({{0, 0}, {1, 1}}, 2).pass);
    EXPECT_TRUE(maltsev_coset_test({{1}}, 4).pass);
    auto r = maltsev_coset_test({{0}, {1}}, 3);
    ASSERT_FALSE(r.pass);
    // any witness with a - b + c outside {0, 1}; (0,1,0) and (1,0,1) both work
    Int img = floor_mod(r.witness[0][0] - r.witness[1][0] + r.witness[2][0], 3);
    EXPECT_EQ(r.image, (IntVector{img}));
    EXPECT_EQ(img, 2);
    EXPECT_TRUE(maltsev_coset_test({}, 3).pass);
    QuotientStructure q{3, {{"E", {}}}};
    EXPECT_THROW(maltsev_coset_test(q, "E"), InvalidArgument);
    EXPECT_THROW(maltsev_coset_test(q, "F"), InvalidArgument);
}

TEST(Maltsev, SerialMatchesParallelAndCosetCharacterization)
{
    fx::Rng rng(73);
    for (int i = 0; i < 200; ++i) {
        const long d = fx::uniform(rng, 2, 5);
        std::vector<IntVector> rel;
        for (long a = 0; a < d; ++a)
            for (long b = 0; b < d; ++b)
                if (fx::uniform(rng, 0, 3) == 0)
                    rel.push_back({a, b});
        if (rel.empty())
            continue;
        auto s = maltsev_coset_test(rel, d);
        auto p = maltsev_coset_test_parallel(rel, d);
        EXPECT_EQ(s.pass, p.pass);
        // coset iff |rel| divides d^2 and rel - rel[0] is closed under +
        bool closed = true;
        for (const auto & x : rel)
            for (const auto & y : rel) {
                IntVector z{floor_mod(x[0] - rel[0][0] + y[0], d), floor_mod(x[1] - rel[0][1] + y[1], d)};
                closed = closed && member(rel, z);
            }
        EXPECT_EQ(s.pass, closed);
        if (! s.pass) {
            EXPECT_FALSE(member(rel, s.image));
        }
    }
}

TEST(UnaryHorn, Examples)
{
    auto nz = unary_horn_test(EventuallyPeriodicSet(1, {0}, {}, {0}));
    ASSERT_TRUE(nz.horn);
    EXPECT_EQ(nz.formula, parse("!(x1 = 0)"));

    auto pair = unary_horn_test(EventuallyPeriodicSet(1, {}, {0, 5}));
    EXPECT_FALSE(pair.horn);
    EXPECT_EQ(pair.reason, NonHornReason::FiniteNonSingleton);

    auto r = unary_horn_test(unary_decompose(parse("(x1 = 0 | x1 = 1 mod 3 | x1 = 2 mod 3)")));
    EXPECT_FALSE(r.horn);
    EXPECT_EQ(r.reason, NonHornReason::MultiCoset);
}

TEST(UnaryHorn, HornShapesRoundTrip)
{
    using Set = EventuallyPeriodicSet;
    for (const Set & s : {Set::empty(), Set::point(7), Set::integers(), Set::progression(2, 5),
                          Set(5, {2}, {}, {2, -3, 12}), Set(1, {0}, {}, {1, 4})}) {
        auto r = unary_horn_test(s, "x");
        ASSERT_TRUE(r.horn);
        EXPECT_TRUE(is_horn(r.formula));
        for (long x = -40; x <= 40; ++x)
            ASSERT_EQ(evaluate(r.formula, IntVector{x}), s.contains(x));
    }
}

TEST(HornSearch, Examples)
{
    auto syn = horn_search(parse("(!(x - y = 0) | x - z = 0)"));
    EXPECT_EQ(syn.kind, HornSearchResult::Kind::Horn);
    EXPECT_EQ(syn.method, "syntactic");

    Formula two = parse("(x = 0 mod 2 | x = 1 mod 3)");
    auto set = unary_decompose(two);
    EXPECT_EQ(set.period(), 6);
    EXPECT_EQ(set.residues(), (std::vector<Int>{0, 1, 2, 4}));
    auto r = horn_search(two);
    EXPECT_EQ(r.kind, HornSearchResult::Kind::NonHornCertified);
    EXPECT_NE(r.certificate.find("MULTI-COSET"), std::string::npos);

    auto f = horn_search(parse("(x = 0 | x = 1)"));
    EXPECT_EQ(f.kind, HornSearchResult::Kind::NonHornCertified);
    EXPECT_NE(f.certificate.find("FINITE-NON-SINGLETON"), std::string::npos);
}

TEST(HornSearch, HiddenHornDefinition)
{
    // Not syntactically Horn, but equivalent to (x = 0 mod 2): the envelope
    // or reduction must find it.
    Formula phi = parse("(x = 0 mod 4 | x = 2 mod 4) & (x = y | x = 0 mod 2)");
    auto r = horn_search(phi);
    ASSERT_EQ(r.kind, HornSearchResult::Kind::Horn);
    EXPECT_TRUE(is_horn(r.horn_formula));
    EXPECT_TRUE(equivalent(r.horn_formula, phi));
}

TEST(HornSearch, FullyModularQuotient)
{
    Formula phi = parse("(x = 0 mod 2 | y = 0 mod 2)");
    auto r = horn_search(phi);
    EXPECT_EQ(r.kind, HornSearchResult::Kind::NonHornCertified);
    EXPECT_EQ(r.method, "quotient Maltsev test");
}

TEST(HornSearch, HornResultsAreEquivalent)
{
    fx::Rng rng(74);
    fx::RandomFormulaSpec spec;
    spec.variables = 2;
    spec.max_clauses = 2;
    spec.max_literals = 2;
    for (int i = 0; i < 30; ++i) {
        Formula phi = standardize(fx::random_formula(rng, spec));
        auto r = horn_search(phi);
        if (r.kind == HornSearchResult::Kind::Horn) {
            EXPECT_TRUE(is_horn(r.horn_formula));
            EXPECT_TRUE(box_equiv(r.horn_formula, phi, Box{10})) << to_string(phi);
        }
    }
}

TEST(Classify, HornLanguage)
{
    // Both relations contain the zero tuple, so the computed verdict is the
    // one-element core; adding a constant removes the zero endomorphism.
    auto lang = fx::load_language("relation C/3 := (x1 - x2 + x3 = 0)\n"
                                  "relation M/1 := (x1 = 0 mod 5)\n");
    EXPECT_EQ(classify(lang).kind, VerdictKind::TrivialP);
    auto pinned = fx::load_language("relation C/3 := (x1 - x2 + x3 = 0)\n"
                                    "relation M/1 := (x1 = 0 mod 5)\n"
                                    "relation ONE/1 := (x1 = 1)\n");
    auto v = classify(pinned);
    EXPECT_EQ(v.kind, VerdictKind::HornP);
    for (const auto & r : v.relations)
        EXPECT_EQ(r.result.kind, HornSearchResult::Kind::Horn) << r.name;
}

TEST(Classify, HornLanguageWithDisequality)
{
    auto lang = fx::load_language("relation C/3 := (x1 + x2 - x3 = 0)\n"
                                  "relation M/1 := (x1 = 0 mod 5)\n"
                                  "relation H/3 := (!(x1 - x2 = 0) | x1 - x3 = 0)\n");
    // Every relation contains the zero tuple, so the zero map collapses the
    // structure; the verdict is computed, not assumed.
    auto v = classify(lang);
    EXPECT_EQ(v.kind, VerdictKind::TrivialP);
    EXPECT_TRUE(is_endomorphism(lang, 0));
}

TEST(Classify, OneElementCore)
{
    EXPECT_EQ(classify(single("R", "(x1 = 0 mod 6)")).kind, VerdictKind::TrivialP);
}

TEST(Classify, TwoCosetAsWritten)
{
    auto v = classify(fx::load_language(fx::two_coset_text()));
    EXPECT_EQ(v.kind, VerdictKind::TrivialP);
    EXPECT_EQ(v.core.kind, CoreResult::Kind::OneElement);
}

TEST(Classify, TwoCosetRepaired)
{
    auto v = classify(fx::load_language(fx::two_coset_repaired_text()));
    EXPECT_EQ(v.kind, VerdictKind::NpComplete);
    ASSERT_EQ(v.relations.size(), 1u);
    EXPECT_EQ(v.relations[0].result.kind, HornSearchResult::Kind::NonHornCertified);
}

TEST(Classify, MultiCoset)
{
    auto v = classify(fx::load_language(fx::multi_coset_text()));
    EXPECT_EQ(v.kind, VerdictKind::NpComplete);
    ASSERT_EQ(v.relations.size(), 2u);
    EXPECT_EQ(v.relations[1].name, "R");
    EXPECT_EQ(v.relations[1].result.method, "unary decomposition");
    EXPECT_NE(v.relations[1].result.certificate.find("MULTI-COSET"), std::string::npos);
}

TEST(Classify, MultiCosetDerivedRelation)
{
    // S(l, t) := K(l) & R(l - t), and T(l, t) := exists w (K(w) & S(l, t) & S(l, t + 3w)).
    auto lang = fx::load_language(fx::multi_coset_text());
    Formula t = fx::multi_coset_derived_matrix(lang);
    for (long l = -12; l <= 12; ++l)
        for (long x = -12; x <= 12; ++x) {
            Formula pinned = substitute(t, {"w"},
                                        {AffineImage::constant_value(l), AffineImage::constant_value(x),
                                         AffineImage::variable(0)});
            bool expected = floor_mod(l, 3) == 1 && floor_mod(x, 3) != 1;
            ASSERT_EQ(formula_sat(pinned).has_value(), expected) << l << "," << x;
        }
    auto q = fx::projected_quotient(t, 2, 3);
    EXPECT_EQ(q, (std::vector<IntVector>{{1, 0}, {1, 2}}));
    auto m = maltsev_coset_test(q, 3);
    EXPECT_FALSE(m.pass);
    EXPECT_EQ(m.image, (IntVector{1, 1}));
}

TEST(Classify, ReportKeys)
{
    auto v = classify(fx::load_language(fx::multi_coset_text()));
    std::string rep = format_report(v);
    for (const char * key : {"verdict: NP-COMPLETE", "core: ", "relation.R.outcome: NON-HORN-CERTIFIED",
                             "relation.K.outcome: HORN", "justification: "})
        EXPECT_NE(rep.find(key), std::string::npos) << key << "\n" << rep;
}
