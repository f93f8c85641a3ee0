#pragma once

#include <zhorn/formula.hpp>
#include <zhorn/lattice.hpp>

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace zhorn {

/// A conjunction of linear equalities, linear disequalities and congruences
/// over a shared variable list.
struct ConjunctiveSystem {
    std::vector<std::string> variables;
    std::vector<Atom> equalities;
    std::vector<Atom> disequalities;  // each atom is asserted false
    std::vector<Atom> congruences;
};

/// Thrown when distributing a CNF into conjunctive systems would exceed the
/// configured number of systems.
class ExpansionCapExceeded : public Error {
public:
    ExpansionCapExceeded(std::size_t cap, double required);

    std::size_t cap() const { return cap_; }

private:
    std::size_t cap_;
};

inline constexpr std::size_t default_dnf_cap = 100000;

struct SatOptions {
    std::size_t dnf_cap = default_dnf_cap;
};

/// Chooses lattice parameters t_j = S^j (S = 1 + the largest sum of absolute
/// coefficients plus absolute constant over the disequalities rewritten in
/// parameter space) so that every disequality holds, and returns the point.
/// Parameters are all zero when no disequality constrains them. Returns
/// nullopt when a disequality is constant-false on the lattice.
std::optional<IntVector> witness_on_lattice(const AffineLattice & lattice, std::span<const Atom> disequalities);

/// A satisfying integer assignment (one value per variable) or nullopt.
std::optional<IntVector> conjunction_sat(const ConjunctiveSystem & system);

/// True iff every integer solution of phi satisfies psi (all linear).
/// Infeasible phi implies everything; otherwise compares ranks of the
/// augmented matrices over the rationals.
bool implies(std::span<const Atom> phi, const Atom & psi);

/// Answers implication queries against a fixed system, caching its
/// feasibility and row space.
class ImplicationOracle {
public:
    explicit ImplicationOracle(std::vector<Atom> system, std::size_t dimension = 0);

    bool feasible() const { return feasible_; }
    bool implies(const Atom & psi) const;

    const std::vector<Atom> & system() const { return system_; }

private:
    std::vector<Atom> system_;
    std::size_t dimension_;
    bool feasible_ = true;
    IntMatrix augmented_;
    std::size_t rank_ = 0;
};

/// Satisfiability of a CNF formula by distribution into conjunctive systems.
std::optional<IntVector> formula_sat(const Formula & phi, const SatOptions & options = {});

/// phi |= psi (variables matched by name).
bool entails(const Formula & phi, const Formula & psi, const SatOptions & options = {});

/// phi and psi define the same set (variables matched by name).
bool equivalent(const Formula & phi, const Formula & psi, const SatOptions & options = {});

/// Greedily deletes clauses, then literals, while equivalence is preserved,
/// until no single deletion does.
Formula reduce_formula(const Formula & phi, const SatOptions & options = {});

} // namespace zhorn
