#include "fixtures.hpp"

#include <zhorn/oracle.hpp>
#include <zhorn/parser.hpp>
#include <zhorn/presburger.hpp>

#include <algorithm>

namespace zhorn::fixtures {

std::string two_coset_text()
{
    // (l = 1 mod 4 & t = 1 mod 4) | (l = 3 mod 4 & t = 3 mod 4) | t = 0, in CNF.
    return "relation S/2 := (x1 = 1 mod 4 | x1 = 3 mod 4 | x2 = 0)\n"
           "  & (x1 = 1 mod 4 | x2 = 3 mod 4 | x2 = 0)\n"
           "  & (x2 = 1 mod 4 | x1 = 3 mod 4 | x2 = 0)\n"
           "  & (x2 = 1 mod 4 | x2 = 3 mod 4 | x2 = 0)\n";
}

std::string two_coset_repaired_text()
{
    // (l = 1 mod 4 & t = 1 mod 4) | (l = 3 mod 4 & t = 3 mod 4) | (l = 1 mod 2 & t = 0)
    std::string out = "relation S/2 := ";
    const char * first[] = {"x1 = 1 mod 4", "x2 = 1 mod 4"};
    const char * second[] = {"x1 = 3 mod 4", "x2 = 3 mod 4"};
    const char * third[] = {"x1 = 1 mod 2", "x2 = 0"};
    bool lead = true;
    for (auto a : first)
        for (auto b : second)
            for (auto c : third) {
                out += (lead ? "(" : "\n  & (") + std::string(a) + " | " + b + " | " + c + ")";
                lead = false;
            }
    return out + "\n";
}

std::string multi_coset_text()
{
    return "relation K/1 := x1 = 1 mod 3\n"
           "relation R/1 := (x1 = 0 | x1 = 1 mod 3 | x1 = 2 mod 3)\n";
}

ConstraintLanguage load_language(const std::string & text)
{
    return parse_problem(text).language;
}

PpFormula two_coset_family()
{
    return PpFormula{{"l", "x"}, {{"S", {"l", "x"}}, {"S", {"l", "y"}}, {"plus", {"x", "y", "l"}}}};
}

Formula parse(const std::string & text)
{
    return parse_formula(text);
}

Formula parse(const std::string & text, const std::vector<std::string> & vars)
{
    return parse_formula(text, vars);
}

long uniform(Rng & rng, long lo, long hi)
{
    return std::uniform_int_distribution<long>(lo, hi)(rng);
}

Atom random_atom(Rng & rng, const RandomFormulaSpec & spec, bool modular)
{
    std::vector<LinearForm::Term> terms;
    for (std::size_t v = 0; v < spec.variables; ++v)
        if (uniform(rng, 0, 1) || terms.empty())
            terms.emplace_back(v, uniform(rng, -spec.coefficient, spec.coefficient));
    long c = uniform(rng, -spec.constant, spec.constant);
    if (modular)
        return Atom::modular(LinearForm(terms), c, uniform(rng, 2, spec.max_modulus));
    return Atom::linear(LinearForm(terms), c);
}

Formula random_formula(Rng & rng, const RandomFormulaSpec & spec)
{
    std::vector<std::string> vars;
    for (std::size_t v = 0; v < spec.variables; ++v)
        vars.push_back("x" + std::to_string(v + 1));
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::vector<Clause> clauses;
    const long nclauses = uniform(rng, 1, static_cast<long>(spec.max_clauses));
    for (long i = 0; i < nclauses; ++i) {
        Clause c;
        const long nlits = uniform(rng, 1, static_cast<long>(spec.max_literals));
        for (long j = 0; j < nlits; ++j) {
            bool modular = spec.max_modulus >= 2 && coin(rng) < spec.modular_share;
            bool negative = coin(rng) < spec.negative_share;
            if (modular && negative && ! spec.allow_negated_modular)
                negative = false;
            c.literals.push_back({random_atom(rng, spec, modular), ! negative});
        }
        clauses.push_back(std::move(c));
    }
    return Formula(vars, std::move(clauses));
}

Formula random_horn_formula(Rng & rng, std::size_t variables, std::size_t max_clauses, long coefficient,
                            long constant, long max_modulus)
{
    RandomFormulaSpec spec;
    spec.variables = variables;
    spec.coefficient = coefficient;
    spec.constant = constant;
    spec.max_modulus = max_modulus;
    std::vector<std::string> vars;
    for (std::size_t v = 0; v < variables; ++v)
        vars.push_back("x" + std::to_string(v + 1));
    std::vector<Clause> clauses;
    const long nclauses = uniform(rng, 1, static_cast<long>(max_clauses));
    for (long i = 0; i < nclauses; ++i) {
        Clause c;
        const long negatives = uniform(rng, 0, 2);
        for (long j = 0; j < negatives; ++j)
            c.literals.push_back({random_atom(rng, spec, false), false});
        if (negatives == 0 || uniform(rng, 0, 2) > 0) {
            bool modular = max_modulus >= 2 && uniform(rng, 0, 2) == 0;
            c.literals.push_back({random_atom(rng, spec, modular), true});
        }
        clauses.push_back(std::move(c));
    }
    return Formula(vars, std::move(clauses));
}

IntMatrix random_matrix(Rng & rng, std::size_t rows, std::size_t cols, long lo, long hi)
{
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m(i, j) = uniform(rng, lo, hi);
    return m;
}

OneInThreeInstance random_one_in_three(Rng & rng, std::size_t max_variables, std::size_t max_clauses)
{
    OneInThreeInstance inst;
    inst.variables = static_cast<std::size_t>(uniform(rng, 3, static_cast<long>(max_variables)));
    const long n = uniform(rng, 1, static_cast<long>(max_clauses));
    for (long i = 0; i < n; ++i) {
        std::array<std::size_t, 3> c;
        for (auto & v : c)
            v = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(inst.variables) - 1));
        inst.clauses.push_back(c);
    }
    return inst;
}

Int max_constant(const Formula & phi)
{
    Int m = 0;
    for (const auto & a : phi.atoms())
        m = std::max(m, Int(abs(a.rhs)));
    return m;
}

Int moduli_lcm(const Formula & phi)
{
    Int d = 1;
    for (const auto & a : phi.atoms())
        if (a.is_modular())
            d = lcm(d, a.modulus);
    return d;
}

} // namespace zhorn::fixtures

namespace zhorn::fixtures {

std::vector<std::string> syntactic_core_violations(const ConstraintLanguage & language,
                                                   const EndomorphismSample & sample)
{
    std::vector<std::string> out;
    const bool only_units = std::all_of(sample.members.begin(), sample.members.end(),
                                        [](const Int & l) { return abs(l) == 1; });
    for (const auto & rel : language.relations())
        for (const auto & atom : rel.definition.atoms()) {
            if (atom.is_modular()) {
                for (const auto & l : sample.members)
                    if (gcd(l, atom.modulus) != 1)
                        out.push_back(rel.name + ": modulus " + atom.modulus.get_str() + " shares a factor with " +
                                      l.get_str());
            }
            else if (atom.rhs != 0 && ! only_units)
                out.push_back(rel.name + ": inhomogeneous linear atom with constant " + atom.rhs.get_str());
        }
    return out;
}

} // namespace zhorn::fixtures

namespace zhorn::fixtures {

Formula multi_coset_derived_matrix(const ConstraintLanguage & language)
{
    const Formula & r = language.find("R")->definition;
    const Formula & k = language.find("K")->definition;
    const std::vector<std::string> vars{"l", "t", "w"};
    auto at = [&](const Formula & f, std::vector<LinearForm::Term> arg) {
        return substitute(f, vars, {AffineImage{LinearForm(std::move(arg)), 0}});
    };
    Formula out = at(k, {{2, 1}});
    out = conjoin(out, at(k, {{0, 1}}));
    out = conjoin(out, at(r, {{0, 1}, {1, -1}}));
    out = conjoin(out, at(r, {{0, 1}, {1, -1}, {2, -3}}));
    return out;
}

} // namespace zhorn::fixtures

namespace zhorn::fixtures {

std::vector<IntVector> projected_quotient(const Formula & matrix, std::size_t free, const Int & d)
{
    const auto & vars = matrix.variables();
    std::vector<std::string> fresh{"_q"};
    fresh.insert(fresh.end(), vars.begin() + static_cast<long>(free), vars.end());
    std::vector<IntVector> out;
    for (const auto & a : enumerate_modular(free, d)) {
        std::vector<AffineImage> images;
        for (std::size_t i = 0; i < free; ++i)
            images.push_back(AffineImage{LinearForm::variable(0, d), a[i]});
        for (std::size_t i = free; i < vars.size(); ++i)
            images.push_back(AffineImage::variable(i - free + 1));
        if (formula_sat(substitute(matrix, fresh, images)))
            out.push_back(a);
    }
    return out;
}

} // namespace zhorn::fixtures
