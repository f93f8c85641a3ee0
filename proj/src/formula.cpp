#include <zhorn/formula.hpp>

#include <algorithm>
#include <ostream>
#include <set>
#include <sstream>

namespace zhorn {

// LinearForm

LinearForm::LinearForm(std::vector<Term> terms)
{
    std::sort(terms.begin(), terms.end(), [](const Term & a, const Term & b) { return a.first < b.first; });
    for (auto & [v, c] : terms) {
        if (! terms_.empty() && terms_.back().first == v)
            terms_.back().second += c;
        else
            terms_.emplace_back(v, std::move(c));
        if (terms_.back().second == 0)
            terms_.pop_back();
    }
}

LinearForm LinearForm::variable(VarId v, const Int & coefficient)
{
    return LinearForm({{v, coefficient}});
}

Int LinearForm::coefficient(VarId v) const
{
    auto it = std::lower_bound(terms_.begin(), terms_.end(), v,
                               [](const Term & t, VarId x) { return t.first < x; });
    if (it != terms_.end() && it->first == v)
        return it->second;
    return 0;
}

Int LinearForm::evaluate(std::span<const Int> assignment) const
{
    Int sum = 0;
    for (const auto & [v, c] : terms_)
        sum += c * assignment[v];
    return sum;
}

VarId LinearForm::extent() const
{
    return terms_.empty() ? 0 : terms_.back().first + 1;
}

LinearForm LinearForm::scaled(const Int & factor) const
{
    std::vector<Term> t;
    t.reserve(terms_.size());
    for (const auto & [v, c] : terms_)
        t.emplace_back(v, c * factor);
    return LinearForm(std::move(t));
}

LinearForm LinearForm::plus(const LinearForm & other) const
{
    std::vector<Term> t = terms_;
    t.insert(t.end(), other.terms_.begin(), other.terms_.end());
    return LinearForm(std::move(t));
}

bool operator<(const LinearForm & a, const LinearForm & b)
{
    return std::lexicographical_compare(a.terms_.begin(), a.terms_.end(), b.terms_.begin(), b.terms_.end(),
                                        [](const LinearForm::Term & x, const LinearForm::Term & y) {
                                            if (x.first != y.first)
                                                return x.first < y.first;
                                            return x.second < y.second;
                                        });
}

// Atom

Atom Atom::linear(LinearForm lhs, Int rhs)
{
    return Atom{std::move(lhs), std::move(rhs), 0};
}

Atom Atom::modular(LinearForm lhs, Int rhs, Int modulus)
{
    if (modulus < 1)
        throw InvalidArgument("modulus must be positive, got " + to_string(modulus));
    return Atom{std::move(lhs), std::move(rhs), std::move(modulus)};
}

bool Atom::holds(std::span<const Int> assignment) const
{
    Int value = lhs.evaluate(assignment);
    if (modulus == 0)
        return value == rhs;
    return divides(modulus, value - rhs);
}

bool operator<(const Atom & a, const Atom & b)
{
    if (a.modulus != b.modulus)
        return a.modulus < b.modulus;
    if (a.lhs != b.lhs)
        return a.lhs < b.lhs;
    return a.rhs < b.rhs;
}

std::variant<bool, Atom> normalize(const Atom & atom)
{
    if (atom.modulus == 0) {
        if (atom.lhs.empty())
            return atom.rhs == 0;
        Int g = 0;
        for (const auto & [v, c] : atom.lhs.terms())
            g = gcd(g, c);
        if (! divides(g, atom.rhs))
            return false;
        if (atom.lhs.terms().front().second < 0)
            g = -g;
        std::vector<LinearForm::Term> terms;
        for (const auto & [v, c] : atom.lhs.terms())
            terms.emplace_back(v, Int(c / g));
        return Atom{LinearForm(std::move(terms)), Int(atom.rhs / g), 0};
    }

    if (atom.modulus < 1)
        throw InvalidArgument("modulus must be positive, got " + to_string(atom.modulus));
    const Int & d = atom.modulus;
    std::vector<LinearForm::Term> terms;
    for (const auto & [v, c] : atom.lhs.terms())
        terms.emplace_back(v, floor_mod(c, d));
    LinearForm lhs(std::move(terms));
    Int rhs = floor_mod(atom.rhs, d);
    if (lhs.empty())
        return rhs == 0;
    Int g = d;
    for (const auto & [v, c] : lhs.terms())
        g = gcd(g, c);
    if (! divides(g, rhs))
        return false;
    if (g == 1)
        return Atom{std::move(lhs), std::move(rhs), d};
    std::vector<LinearForm::Term> reduced;
    for (const auto & [v, c] : lhs.terms())
        reduced.emplace_back(v, Int(c / g));
    return Atom{LinearForm(std::move(reduced)), Int(rhs / g), Int(d / g)};
}

// Clause

bool Clause::holds(std::span<const Int> assignment) const
{
    for (const auto & l : literals)
        if (l.holds(assignment))
            return true;
    return false;
}

std::size_t Clause::positive_count() const
{
    return static_cast<std::size_t>(
        std::count_if(literals.begin(), literals.end(), [](const Literal & l) { return l.positive; }));
}

// Formula

Formula::Formula(std::vector<std::string> variables, std::vector<Clause> clauses) :
    variables_(std::move(variables))
{
    {
        std::set<std::string> seen;
        for (const auto & v : variables_)
            if (! seen.insert(v).second)
                throw InvalidArgument("duplicate variable '" + v + "'");
    }
    for (auto & clause : clauses) {
        Clause out;
        bool tautology = false;
        for (auto & lit : clause.literals) {
            if (lit.atom.lhs.extent() > variables_.size())
                throw InvalidArgument("atom refers to an undeclared variable");
            auto n = normalize(lit.atom);
            if (auto * value = std::get_if<bool>(&n)) {
                if (*value == lit.positive) {
                    tautology = true;
                    break;
                }
                continue;
            }
            Literal normalized{std::get<Atom>(std::move(n)), lit.positive};
            if (std::find(out.literals.begin(), out.literals.end(), normalized) == out.literals.end())
                out.literals.push_back(std::move(normalized));
        }
        if (tautology)
            continue;
        if (out.empty()) {
            clauses_.assign(1, Clause{});
            return;
        }
        if (std::find(clauses_.begin(), clauses_.end(), out) == clauses_.end())
            clauses_.push_back(std::move(out));
    }
}

Formula Formula::truth(std::vector<std::string> variables)
{
    return Formula(std::move(variables), {});
}

Formula Formula::falsity(std::vector<std::string> variables)
{
    return Formula(std::move(variables), {Clause{}});
}

VarId Formula::index_of(const std::string & name) const
{
    auto it = std::find(variables_.begin(), variables_.end(), name);
    if (it == variables_.end())
        throw InvalidArgument("unknown variable '" + name + "'");
    return static_cast<VarId>(it - variables_.begin());
}

bool Formula::has_variable(const std::string & name) const
{
    return std::find(variables_.begin(), variables_.end(), name) != variables_.end();
}

bool Formula::is_standard() const
{
    for (const auto & c : clauses_)
        for (const auto & l : c.literals)
            if (! l.positive && l.atom.is_modular())
                return false;
    return true;
}

bool Formula::is_fully_modular() const
{
    for (const auto & c : clauses_)
        for (const auto & l : c.literals)
            if (! l.atom.is_modular())
                return false;
    return true;
}

std::vector<Atom> Formula::atoms() const
{
    std::vector<Atom> out;
    for (const auto & c : clauses_)
        for (const auto & l : c.literals)
            if (std::find(out.begin(), out.end(), l.atom) == out.end())
                out.push_back(l.atom);
    return out;
}

std::size_t Formula::literal_count() const
{
    std::size_t n = 0;
    for (const auto & c : clauses_)
        n += c.size();
    return n;
}

bool evaluate(const Formula & phi, std::span<const Int> assignment)
{
    if (assignment.size() < phi.arity())
        throw InvalidArgument("assignment does not cover every variable");
    for (const auto & c : phi.clauses())
        if (! c.holds(assignment))
            return false;
    return true;
}

bool evaluate(const Formula & phi, const std::map<std::string, Int> & assignment)
{
    std::vector<Int> values;
    values.reserve(phi.arity());
    for (const auto & name : phi.variables()) {
        auto it = assignment.find(name);
        if (it == assignment.end())
            throw InvalidArgument("assignment is missing variable '" + name + "'");
        values.push_back(it->second);
    }
    return evaluate(phi, values);
}

Clause negate_literal(const Literal & literal)
{
    if (literal.positive && literal.atom.is_modular()) {
        Clause out;
        const Int & d = literal.atom.modulus;
        for (Int r = 0; r < d; ++r)
            if (r != literal.atom.rhs)
                out.literals.push_back({Atom{literal.atom.lhs, r, d}, true});
        return out;
    }
    return Clause{{Literal{literal.atom, ! literal.positive}}};
}

Formula standardize(const Formula & phi)
{
    std::vector<Clause> clauses;
    for (const auto & c : phi.clauses()) {
        Clause out;
        for (const auto & l : c.literals) {
            if (! l.positive && l.atom.is_modular()) {
                auto expansion = negate_literal(Literal{l.atom, true});
                out.literals.insert(out.literals.end(), expansion.literals.begin(), expansion.literals.end());
            }
            else
                out.literals.push_back(l);
        }
        clauses.push_back(std::move(out));
    }
    return Formula(phi.variables(), std::move(clauses));
}

namespace {

std::string fresh_name(const std::set<std::string> & taken, const std::string & stem, std::size_t & counter)
{
    for (;;) {
        std::string candidate = stem + std::to_string(++counter);
        if (! taken.contains(candidate))
            return candidate;
    }
}

} // namespace

Formula introduce_quantifiers(const Formula & phi)
{
    std::vector<std::string> vars = phi.variables();
    std::set<std::string> taken(vars.begin(), vars.end());
    std::size_t counter = 0;
    std::vector<Clause> clauses;
    for (const auto & c : phi.clauses()) {
        Clause out;
        for (const auto & l : c.literals) {
            if (! l.atom.is_modular()) {
                out.literals.push_back(l);
                continue;
            }
            if (! l.positive)
                throw InvalidArgument("introduce_quantifiers requires a standard formula");
            auto name = fresh_name(taken, "_k", counter);
            taken.insert(name);
            VarId k = vars.size();
            vars.push_back(name);
            LinearForm lhs = l.atom.lhs.plus(LinearForm::variable(k, -l.atom.modulus));
            out.literals.push_back({Atom::linear(std::move(lhs), l.atom.rhs), true});
        }
        clauses.push_back(std::move(out));
    }
    return Formula(std::move(vars), std::move(clauses));
}

Formula scale_variables(const Formula & phi, const Int & lambda)
{
    if (lambda == 0)
        throw InvalidArgument("scale_variables: lambda must be nonzero");
    std::vector<Clause> clauses;
    for (const auto & c : phi.clauses()) {
        Clause out;
        for (const auto & l : c.literals)
            out.literals.push_back({Atom{l.atom.lhs.scaled(lambda), l.atom.rhs, l.atom.modulus}, l.positive});
        clauses.push_back(std::move(out));
    }
    return Formula(phi.variables(), std::move(clauses));
}

Formula substitute(const Formula & phi, std::vector<std::string> new_variables,
                   const std::vector<AffineImage> & images)
{
    if (images.size() != phi.arity())
        throw InvalidArgument("substitute: one image per variable required");
    for (const auto & img : images)
        if (img.form.extent() > new_variables.size())
            throw InvalidArgument("substitute: image refers to an undeclared variable");
    std::vector<Clause> clauses;
    for (const auto & c : phi.clauses()) {
        Clause out;
        for (const auto & l : c.literals) {
            LinearForm lhs;
            Int rhs = l.atom.rhs;
            for (const auto & [v, coeff] : l.atom.lhs.terms()) {
                lhs = lhs.plus(images[v].form.scaled(coeff));
                rhs -= coeff * images[v].constant;
            }
            out.literals.push_back({Atom{std::move(lhs), std::move(rhs), l.atom.modulus}, l.positive});
        }
        clauses.push_back(std::move(out));
    }
    return Formula(std::move(new_variables), std::move(clauses));
}

Formula rebase(const Formula & phi, const std::vector<std::string> & variables)
{
    std::vector<AffineImage> images;
    for (const auto & name : phi.variables()) {
        auto it = std::find(variables.begin(), variables.end(), name);
        if (it == variables.end())
            throw InvalidArgument("rebase: variable '" + name + "' missing from target list");
        images.push_back(AffineImage::variable(static_cast<VarId>(it - variables.begin())));
    }
    return substitute(phi, variables, images);
}

Formula conjoin(const Formula & phi, const Formula & psi)
{
    std::vector<std::string> vars = phi.variables();
    for (const auto & v : psi.variables())
        if (std::find(vars.begin(), vars.end(), v) == vars.end())
            vars.push_back(v);
    Formula a = rebase(phi, vars);
    Formula b = rebase(psi, vars);
    std::vector<Clause> clauses = a.clauses();
    clauses.insert(clauses.end(), b.clauses().begin(), b.clauses().end());
    return Formula(std::move(vars), std::move(clauses));
}

// Printing

std::string to_string(const LinearForm & form, const std::vector<std::string> & names)
{
    if (form.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto & [v, c] : form.terms()) {
        Int mag = abs(c);
        if (first) {
            if (c < 0)
                os << "-";
        }
        else
            os << (c < 0 ? " - " : " + ");
        if (mag != 1)
            os << mag.get_str() << "*";
        os << names.at(v);
        first = false;
    }
    return os.str();
}

std::string to_string(const Atom & atom, const std::vector<std::string> & names)
{
    std::string s = to_string(atom.lhs, names) + " = " + to_string(atom.rhs);
    if (atom.is_modular())
        s += " mod " + to_string(atom.modulus);
    return s;
}

std::string to_string(const Literal & literal, const std::vector<std::string> & names)
{
    if (literal.positive)
        return to_string(literal.atom, names);
    return "!(" + to_string(literal.atom, names) + ")";
}

std::string to_string(const Clause & clause, const std::vector<std::string> & names)
{
    if (clause.empty())
        return "FALSE";
    std::string s = "(";
    for (std::size_t i = 0; i < clause.literals.size(); ++i) {
        if (i)
            s += " | ";
        s += to_string(clause.literals[i], names);
    }
    return s + ")";
}

std::string to_string(const Formula & phi)
{
    if (phi.is_true())
        return "TRUE";
    std::string s;
    for (std::size_t i = 0; i < phi.clauses().size(); ++i) {
        if (i)
            s += " & ";
        s += to_string(phi.clauses()[i], phi.variables());
    }
    return s;
}

std::ostream & operator<<(std::ostream & os, const Formula & phi)
{
    return os << to_string(phi);
}

} // namespace zhorn
