#pragma once

#include <zhorn/core.hpp>
#include <zhorn/formula.hpp>
#include <zhorn/gadget.hpp>
#include <zhorn/language.hpp>
#include <zhorn/lattice.hpp>

#include <random>
#include <string>
#include <vector>

namespace zhorn::fixtures {

// Binary relation S of the two-coset example: lambda and t agree modulo 4 on
// the odd classes, or t = 0.
std::string two_coset_text();
// The same relation with the t = 0 branch restricted to odd lambda, so that
// 0 is no longer an endomorphism.
std::string two_coset_repaired_text();
// R = {0} u (1+3Z) u (2+3Z) and K = 1+3Z.
std::string multi_coset_text();

ConstraintLanguage load_language(const std::string & text);

// theta(l, x) := exists y (S(l, x) & S(l, y) & x + y = l)
PpFormula two_coset_family();

Formula parse(const std::string & text);
Formula parse(const std::string & text, const std::vector<std::string> & vars);

using Rng = std::mt19937_64;

long uniform(Rng & rng, long lo, long hi);

struct RandomFormulaSpec {
    std::size_t variables = 2;
    std::size_t max_clauses = 3;
    std::size_t max_literals = 3;
    long coefficient = 3;
    long constant = 4;
    long max_modulus = 4;
    double modular_share = 0.4;
    double negative_share = 0.3;
    bool allow_negated_modular = false;
};

Atom random_atom(Rng & rng, const RandomFormulaSpec & spec, bool modular);
Formula random_formula(Rng & rng, const RandomFormulaSpec & spec);

// Horn formula: each clause has at most one positive literal (linear or
// modular) and only linear negative literals.
Formula random_horn_formula(Rng & rng, std::size_t variables, std::size_t max_clauses, long coefficient,
                            long constant, long max_modulus);

IntMatrix random_matrix(Rng & rng, std::size_t rows, std::size_t cols, long lo, long hi);

OneInThreeInstance random_one_in_three(Rng & rng, std::size_t max_variables, std::size_t max_clauses);

// Largest |constant| and lcm of moduli over the formula's atoms.
Int max_constant(const Formula & phi);
Int moduli_lcm(const Formula & phi);

} // namespace zhorn::fixtures

namespace zhorn::fixtures {

// Violations of the syntactic core conditions for the sampled endomorphisms:
// every modulus coprime to every sampled lambda, and every linear atom
// homogeneous unless the sample is {1} or {-1, 1}. Empty when they hold.
std::vector<std::string> syntactic_core_violations(const ConstraintLanguage & language,
                                                   const EndomorphismSample & sample);

} // namespace zhorn::fixtures

namespace zhorn::fixtures {

// Matrix over (l, t, w) of K(w) & S(l, t) & S(l, t + 3w) with
// S(l, t) := K(l) & R(l - t); projecting out w gives the derived relation T.
Formula multi_coset_derived_matrix(const ConstraintLanguage & language);

} // namespace zhorn::fixtures

namespace zhorn::fixtures {

// Quotient modulo d of the projection of `matrix` onto its first `free`
// variables: residue tuples a with some q and some values of the remaining
// variables satisfying matrix(q*d + a, rest). Sorted lexicographically.
std::vector<IntVector> projected_quotient(const Formula & matrix, std::size_t free, const Int & d);

} // namespace zhorn::fixtures
