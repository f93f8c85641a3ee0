#pragma once

#include <zhorn/formula.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace zhorn {

/// Name of the implicit ternary relation {(x, y, z) : x + y = z}.
inline constexpr std::string_view plus_relation = "plus";

struct RelationDef {
    std::string name;
    Formula definition;  // standard; its variables are the relation's coordinates

    std::size_t arity() const { return definition.arity(); }
};

/// Finitely many named relations over Z, each with a standard quantifier-free
/// definition. The relation `plus` is always present and cannot be redefined.
class ConstraintLanguage {
public:
    ConstraintLanguage() = default;

    /// Adds a relation; the definition is standardized. Throws on a duplicate
    /// or reserved name.
    void add(std::string name, const Formula & definition);

    /// User relations in insertion order (without `plus`).
    const std::vector<RelationDef> & relations() const { return relations_; }

    /// Looks up a relation, `plus` included; nullptr when unknown.
    const RelationDef * find(std::string_view name) const;

    /// Same relation names, every definition replaced.
    ConstraintLanguage with_definitions(const std::vector<Formula> & definitions) const;

    static const RelationDef & plus();

private:
    std::vector<RelationDef> relations_;
};

/// One constraint NAME(v1, ..., vk).
struct Constraint {
    std::string relation;
    std::vector<std::string> arguments;

    friend bool operator==(const Constraint &, const Constraint &) = default;
};

/// Variables of the constraints in order of first appearance.
std::vector<std::string> instance_variables(const std::vector<Constraint> & constraints);

/// The conjunction of the instantiated definitions. The result ranges over
/// `leading` followed by the remaining instance variables in order of first
/// appearance. Throws on an unknown relation or an arity mismatch.
Formula instantiate(const ConstraintLanguage & language, const std::vector<Constraint> & constraints,
                    const std::vector<std::string> & leading = {});

/// A primitive positive formula: a conjunction of relation atoms in which
/// every variable outside `free` is existentially quantified.
struct PpFormula {
    std::vector<std::string> free;
    std::vector<Constraint> atoms;

    /// Quantifier-free matrix over the free variables followed by the
    /// quantified ones.
    Formula matrix(const ConstraintLanguage & language) const;
};

/*
 * Problem files:
 *
 *   # comment
 *   relation NAME/ARITY := <formula over x1..xARITY>
 *       (the formula may continue on following lines)
 *   constraints
 *   NAME(v1, ..., vk)
 *
 * The constraints section is optional (language files omit it).
 */
struct ProblemFile {
    ConstraintLanguage language;
    std::optional<std::vector<Constraint>> constraints;
};

/// Throws ParseError with the line and column of the offending text.
ProblemFile parse_problem(std::string_view text);

std::string format_language(const ConstraintLanguage & language);
std::string format_constraints(const std::vector<Constraint> & constraints);
std::string format_problem(const ConstraintLanguage & language, const std::vector<Constraint> & constraints);

/// Coordinate names x1..xk used in relation definitions.
std::vector<std::string> coordinate_names(std::size_t arity);

} // namespace zhorn
