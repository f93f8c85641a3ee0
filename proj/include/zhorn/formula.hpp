#pragma once

#include <zhorn/integer.hpp>

#include <cstddef>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace zhorn {

using VarId = std::size_t;

/// Sparse integer linear form sum(c_i * x_i). Terms are sorted by variable
/// and never carry a zero coefficient.
class LinearForm {
public:
    using Term = std::pair<VarId, Int>;

    LinearForm() = default;
    explicit LinearForm(std::vector<Term> terms);

    static LinearForm variable(VarId v, const Int & coefficient = 1);

    const std::vector<Term> & terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    Int coefficient(VarId v) const;
    Int evaluate(std::span<const Int> assignment) const;

    /// Largest variable id plus one (0 for the empty form).
    VarId extent() const;

    LinearForm scaled(const Int & factor) const;
    LinearForm plus(const LinearForm & other) const;

    friend bool operator==(const LinearForm &, const LinearForm &) = default;
    friend bool operator<(const LinearForm & a, const LinearForm & b);

private:
    std::vector<Term> terms_;
};

/// A linear equation lhs = rhs (modulus == 0) or a modular linear equation
/// lhs = rhs mod modulus (modulus >= 1).
struct Atom {
    LinearForm lhs;
    Int rhs;
    Int modulus;

    static Atom linear(LinearForm lhs, Int rhs);
    static Atom modular(LinearForm lhs, Int rhs, Int modulus);

    bool is_modular() const { return modulus != 0; }
    bool holds(std::span<const Int> assignment) const;

    friend bool operator==(const Atom &, const Atom &) = default;
    friend bool operator<(const Atom & a, const Atom & b);
};

/// Canonical form of an atom, or the truth value it collapses to.
///
/// Linear: the gcd of the coefficients is divided out (false when it does not
/// divide the constant) and the first coefficient is made positive. Modular:
/// coefficients and constant are reduced into [0, d), and the gcd g of the
/// coefficients and d is divided out of everything (false when g does not
/// divide the constant).
std::variant<bool, Atom> normalize(const Atom & atom);

struct Literal {
    Atom atom;
    bool positive = true;

    bool holds(std::span<const Int> assignment) const { return atom.holds(assignment) == positive; }

    friend bool operator==(const Literal &, const Literal &) = default;
};

/// A disjunction of literals; the empty clause is false.
struct Clause {
    std::vector<Literal> literals;

    bool empty() const { return literals.empty(); }
    std::size_t size() const { return literals.size(); }
    bool holds(std::span<const Int> assignment) const;

    std::size_t positive_count() const;

    friend bool operator==(const Clause &, const Clause &) = default;
};

/// A CNF formula over named variables. Construction normalizes every atom,
/// drops false literals and true clauses, removes duplicate literals and
/// clauses, and collapses to a single empty clause when any clause is empty.
/// The formula with no clauses is TRUE.
class Formula {
public:
    Formula() = default;
    Formula(std::vector<std::string> variables, std::vector<Clause> clauses);

    static Formula truth(std::vector<std::string> variables = {});
    static Formula falsity(std::vector<std::string> variables = {});

    const std::vector<std::string> & variables() const { return variables_; }
    const std::vector<Clause> & clauses() const { return clauses_; }
    std::size_t arity() const { return variables_.size(); }

    bool is_true() const { return clauses_.empty(); }
    bool is_false() const { return clauses_.size() == 1 && clauses_.front().empty(); }

    /// Index of the named variable; throws InvalidArgument if absent.
    VarId index_of(const std::string & name) const;
    bool has_variable(const std::string & name) const;

    /// No negated modular atom.
    bool is_standard() const;
    /// Every atom is modular (TRUE and FALSE count as fully modular).
    bool is_fully_modular() const;

    std::vector<Atom> atoms() const;
    std::size_t literal_count() const;

    friend bool operator==(const Formula &, const Formula &) = default;

private:
    std::vector<std::string> variables_;
    std::vector<Clause> clauses_;
};

/// True iff every clause has a satisfied literal. The assignment is indexed by
/// variable id and must cover every variable.
bool evaluate(const Formula & phi, std::span<const Int> assignment);

/// Named-assignment overload; throws InvalidArgument on a missing variable.
bool evaluate(const Formula & phi, const std::map<std::string, Int> & assignment);

/// Replaces every negated modular atom by the disjunction of the other
/// residues modulo the same modulus.
Formula standardize(const Formula & phi);

/// Replaces each modular atom sum = b mod c by sum - c*k = b with a fresh
/// variable k per occurrence. Fresh variables are appended after the
/// original ones.
Formula introduce_quantifiers(const Formula & phi);

/// Formula satisfied by a exactly when lambda*a satisfies phi.
Formula scale_variables(const Formula & phi, const Int & lambda);

/// Image of one old variable under a substitution: form + constant over the
/// new variable set.
struct AffineImage {
    LinearForm form;
    Int constant;

    static AffineImage variable(VarId v) { return {LinearForm::variable(v), 0}; }
    static AffineImage constant_value(const Int & c) { return {LinearForm{}, c}; }
};

/// Substitutes images[i] for variable i; the result ranges over new_variables.
Formula substitute(const Formula & phi, std::vector<std::string> new_variables,
                   const std::vector<AffineImage> & images);

/// Conjunction over the union of both variable lists (matched by name, phi's
/// order first).
Formula conjoin(const Formula & phi, const Formula & psi);

/// Same formula over a different variable list that contains all of phi's
/// variable names.
Formula rebase(const Formula & phi, const std::vector<std::string> & variables);

/// Negation of a single literal in standard form, as a clause.
Clause negate_literal(const Literal & literal);

std::string to_string(const LinearForm & form, const std::vector<std::string> & names);
std::string to_string(const Atom & atom, const std::vector<std::string> & names);
std::string to_string(const Literal & literal, const std::vector<std::string> & names);
std::string to_string(const Clause & clause, const std::vector<std::string> & names);
std::string to_string(const Formula & phi);

std::ostream & operator<<(std::ostream & os, const Formula & phi);

} // namespace zhorn
