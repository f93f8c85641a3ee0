#pragma once

#include <zhorn/language.hpp>
#include <zhorn/presburger.hpp>

#include <array>
#include <string>
#include <vector>

namespace zhorn {

/// A positive 1-in-3-SAT instance: every clause needs exactly one true
/// variable. Variables are 0 .. variables-1.
struct OneInThreeInstance {
    std::size_t variables = 0;
    std::vector<std::array<std::size_t, 3>> clauses;
};

/// Exhaustive answer over all 2^variables assignments.
bool one_in_three_satisfiable(const OneInThreeInstance & instance);

/// Slices {a : theta(lambda, a)} of a binary pp-formula, checked in a window.
struct FamilyAnalysis {
    std::vector<Int> base;  // the set A with every nonempty slice equal to lambda * A
    Int m1;                 // min A
    Int m2;                 // min (A \ {m1})
    std::vector<Int> lambdas;  // window values with a nonempty slice
};

struct GadgetOptions {
    long lambda_window = 6;  // lambda in [-w, w]
    long slice_window = 24;  // slice elements searched in [-s, s]
    SatOptions sat;
};

/// Computes the slices for lambda in the window and checks the gadget's
/// preconditions: every nonempty slice has at least two elements, stays in
/// the inner half of the slice window, and equals lambda * A where A is the
/// slice at lambda = 1. Throws InvalidArgument naming the failing lambda.
FamilyAnalysis analyze_family(const ConstraintLanguage & language, const PpFormula & theta,
                              const GadgetOptions & options = {});

struct GadgetInstance {
    FamilyAnalysis family;
    std::vector<Constraint> constraints;
    std::string lambda_variable;
    /// Instance variable standing for each 1-in-3 variable (value 0 is false,
    /// m2 - m1 times lambda is true).
    std::vector<std::string> variable_names;
};

/// CSP instance over the language that is solvable iff the 1-in-3 instance
/// is. Each variable p is constrained by theta(L, p + m1 L) and each clause
/// (p, q, r) by p + q + r = (m2 - m1) L, with one shared L; multiples of L are
/// built from `plus` chains.
GadgetInstance gadget_one_in_three(const ConstraintLanguage & language, const PpFormula & theta,
                                   const OneInThreeInstance & instance, const GadgetOptions & options = {});

} // namespace zhorn
