#pragma once

#include <zhorn/formula.hpp>
#include <zhorn/language.hpp>

#include <span>
#include <vector>

namespace zhorn {

/// At most one positive literal and every negative literal linear.
bool is_horn(const Clause & clause);

/// Every clause Horn. Expects a standard formula: a negated modular atom
/// makes its clause non-Horn.
bool is_horn(const Formula & phi);

struct HornResult {
    bool satisfiable = false;
    /// One value per variable of the input formula when satisfiable.
    IntVector assignment;
    /// Sweeps of the deletion loop performed.
    std::size_t sweeps = 0;
};

/// Positive unit resolution with implication-driven deletion of negative
/// literals. Positive modular literals are linearized first, so the unit pool
/// is a linear system; its feasibility is re-checked after each addition.
/// Throws InvalidArgument on non-Horn input.
HornResult horn_solve(const Formula & phi);

/// Solution of the linear system `units` satisfying one negative literal of
/// every residual clause. Each negative literal must be linear and not
/// implied by `units`; throws Error when the preconditions fail.
IntVector construct_witness(std::span<const Atom> units, const std::vector<Clause> & residual,
                            std::size_t dimension);

struct CspOutcome {
    enum class Kind { Sat, Unsat, NotHorn };

    Kind kind = Kind::Unsat;
    std::vector<std::string> variables;
    IntVector assignment;
    Formula instance;  // the instantiated conjunction
};

/// Instantiates the constraints, checks that every clause is Horn and runs
/// horn_solve. Throws InvalidArgument on unknown relations or arity mismatch.
CspOutcome solve_csp_instance(const ConstraintLanguage & language, const std::vector<Constraint> & constraints);

} // namespace zhorn
