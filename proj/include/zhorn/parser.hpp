#pragma once

#include <zhorn/formula.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace zhorn {

class ParseError : public Error {
public:
    ParseError(const std::string & message, std::size_t line, std::size_t column);

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/*
 * Formula syntax (whitespace-insensitive):
 *
 *   formula := clause ("&" clause)*
 *   clause  := "(" literal ("|" literal)* ")" | literal ("|" literal)* | "TRUE" | "FALSE"
 *   literal := ["!"] atom | "!" "(" atom ")" | "TRUE" | "FALSE"
 *   atom    := linexpr ("=" | "!=") linexpr ["mod" posint]
 *   linexpr := ["-"] term (("+" | "-") term)*
 *   term    := [int "*"] ident | int
 *
 * Variables may appear on both sides of an equation. "mod", "TRUE" and
 * "FALSE" are reserved.
 */
struct ParseOptions {
    /// When set, the result ranges over exactly these variables (in this
    /// order) and any other identifier is an error. Otherwise variables are
    /// numbered by first appearance.
    std::optional<std::vector<std::string>> variables;
    /// Line number reported for the first line of text (for embedded formulas).
    std::size_t first_line = 1;
};

Formula parse_formula(std::string_view text, const ParseOptions & options = {});

/// Convenience overload fixing the variable list.
Formula parse_formula(std::string_view text, const std::vector<std::string> & variables);

/// Parses a ';'-separated list of linear equations ("x + y = 2; x - y = 0").
/// Variables are numbered by first appearance unless given.
struct EquationSystem {
    std::vector<std::string> variables;
    std::vector<Atom> equations;
};
EquationSystem parse_equations(std::string_view text, const ParseOptions & options = {});

bool is_identifier(std::string_view s);

} // namespace zhorn
