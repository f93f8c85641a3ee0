#include <zhorn/language.hpp>
#include <zhorn/parser.hpp>

#include <algorithm>
#include <cctype>
#include <sstream>

namespace zhorn {

std::vector<std::string> coordinate_names(std::size_t arity)
{
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= arity; ++i)
        names.push_back("x" + std::to_string(i));
    return names;
}

const RelationDef & ConstraintLanguage::plus()
{
    static const RelationDef def{
        std::string(plus_relation),
        Formula(coordinate_names(3),
                {Clause{{Literal{Atom::linear(LinearForm({{0, 1}, {1, 1}, {2, -1}}), 0), true}}}})};
    return def;
}

void ConstraintLanguage::add(std::string name, const Formula & definition)
{
    if (! is_identifier(name))
        throw InvalidArgument("relation name '" + name + "' is not an identifier");
    if (name == plus_relation)
        throw InvalidArgument("relation name 'plus' is reserved");
    if (find(name))
        throw InvalidArgument("relation '" + name + "' defined twice");
    relations_.push_back({std::move(name), standardize(definition)});
}

const RelationDef * ConstraintLanguage::find(std::string_view name) const
{
    if (name == plus_relation)
        return &plus();
    for (const auto & r : relations_)
        if (r.name == name)
            return &r;
    return nullptr;
}

ConstraintLanguage ConstraintLanguage::with_definitions(const std::vector<Formula> & definitions) const
{
    if (definitions.size() != relations_.size())
        throw InvalidArgument("with_definitions: one definition per relation required");
    ConstraintLanguage out;
    for (std::size_t i = 0; i < relations_.size(); ++i) {
        if (definitions[i].arity() != relations_[i].arity())
            throw InvalidArgument("with_definitions: arity of '" + relations_[i].name + "' changed");
        out.add(relations_[i].name, definitions[i]);
    }
    return out;
}

std::vector<std::string> instance_variables(const std::vector<Constraint> & constraints)
{
    std::vector<std::string> vars;
    for (const auto & c : constraints)
        for (const auto & a : c.arguments)
            if (std::find(vars.begin(), vars.end(), a) == vars.end())
                vars.push_back(a);
    return vars;
}

Formula instantiate(const ConstraintLanguage & language, const std::vector<Constraint> & constraints,
                    const std::vector<std::string> & leading)
{
    std::vector<std::string> vars = leading;
    for (const auto & v : instance_variables(constraints))
        if (std::find(vars.begin(), vars.end(), v) == vars.end())
            vars.push_back(v);

    std::vector<Clause> clauses;
    for (const auto & c : constraints) {
        const RelationDef * rel = language.find(c.relation);
        if (! rel)
            throw InvalidArgument("unknown relation '" + c.relation + "'");
        if (rel->arity() != c.arguments.size())
            throw InvalidArgument("relation '" + c.relation + "' has arity " + std::to_string(rel->arity()) +
                                  ", constraint gives " + std::to_string(c.arguments.size()) + " arguments");
        std::vector<AffineImage> images;
        for (const auto & a : c.arguments) {
            auto it = std::find(vars.begin(), vars.end(), a);
            images.push_back(AffineImage::variable(static_cast<VarId>(it - vars.begin())));
        }
        Formula inst = substitute(rel->definition, vars, images);
        clauses.insert(clauses.end(), inst.clauses().begin(), inst.clauses().end());
    }
    return Formula(std::move(vars), std::move(clauses));
}

Formula PpFormula::matrix(const ConstraintLanguage & language) const
{
    return instantiate(language, atoms, free);
}

namespace {

std::string_view trim(std::string_view s)
{
    while (! s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (! s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

bool starts_with_word(std::string_view line, std::string_view word)
{
    if (line.substr(0, word.size()) != word)
        return false;
    return line.size() == word.size() || std::isspace(static_cast<unsigned char>(line[word.size()]));
}

struct Line {
    std::size_t number;
    std::string text;  // comment stripped, not trimmed
};

std::size_t column_of(const std::string & text, std::string_view part)
{
    return static_cast<std::size_t>(part.data() - text.data()) + 1;
}

Constraint parse_constraint(const Line & line)
{
    std::string_view s = trim(line.text);
    auto fail = [&](const std::string & msg, std::string_view at) {
        throw ParseError(msg, line.number, column_of(line.text, at));
    };
    auto open = s.find('(');
    if (open == std::string_view::npos || s.back() != ')')
        fail("expected NAME(v1, ..., vk)", s);
    Constraint c;
    c.relation = std::string(trim(s.substr(0, open)));
    if (! is_identifier(c.relation))
        fail("invalid relation name '" + c.relation + "'", s);
    std::string_view inner = s.substr(open + 1, s.size() - open - 2);
    if (! trim(inner).empty()) {
        std::size_t start = 0;
        for (;;) {
            auto comma = inner.find(',', start);
            std::string_view part = inner.substr(start, comma == std::string_view::npos ? inner.npos : comma - start);
            std::string_view arg = trim(part);
            if (! is_identifier(arg) || arg == "mod" || arg == "TRUE" || arg == "FALSE")
                fail("invalid variable '" + std::string(arg) + "'", arg.empty() ? part : arg);
            c.arguments.emplace_back(arg);
            if (comma == std::string_view::npos)
                break;
            start = comma + 1;
        }
    }
    return c;
}

} // namespace

ProblemFile parse_problem(std::string_view text)
{
    std::vector<Line> lines;
    {
        std::size_t number = 1, start = 0;
        while (start <= text.size()) {
            auto end = text.find('\n', start);
            std::string_view raw = text.substr(start, end == std::string_view::npos ? text.npos : end - start);
            std::string s(raw);
            if (auto hash = s.find('#'); hash != std::string::npos)
                s.erase(hash);
            if (! s.empty() && s.back() == '\r')
                s.pop_back();
            lines.push_back({number, std::move(s)});
            if (end == std::string_view::npos)
                break;
            start = end + 1;
            ++number;
        }
    }

    ProblemFile out;
    std::size_t i = 0;
    bool in_constraints = false;
    while (i < lines.size()) {
        const Line & line = lines[i];
        std::string_view t = trim(line.text);
        if (t.empty()) {
            ++i;
            continue;
        }
        if (in_constraints) {
            if (starts_with_word(t, "relation"))
                throw ParseError("relation after constraints section", line.number, column_of(line.text, t));
            Constraint c = parse_constraint(line);
            const RelationDef * rel = out.language.find(c.relation);
            if (! rel)
                throw ParseError("unknown relation '" + c.relation + "'", line.number, column_of(line.text, t));
            if (rel->arity() != c.arguments.size())
                throw ParseError("relation '" + c.relation + "' has arity " + std::to_string(rel->arity()) + ", got " +
                                     std::to_string(c.arguments.size()) + " arguments",
                                 line.number, column_of(line.text, t));
            out.constraints->push_back(std::move(c));
            ++i;
            continue;
        }
        if (t == "constraints") {
            in_constraints = true;
            out.constraints.emplace();
            ++i;
            continue;
        }
        if (! starts_with_word(t, "relation"))
            throw ParseError("expected 'relation' or 'constraints'", line.number, column_of(line.text, t));

        // relation NAME/ARITY := formula
        auto assign = line.text.find(":=");
        if (assign == std::string::npos)
            throw ParseError("expected ':=' in relation header", line.number, column_of(line.text, t));
        std::string_view header = trim(std::string_view(line.text).substr(0, assign));
        header.remove_prefix(std::string_view("relation").size());
        header = trim(header);
        auto slash = header.find('/');
        if (slash == std::string_view::npos)
            throw ParseError("expected NAME/ARITY", line.number, column_of(line.text, header));
        std::string name(trim(header.substr(0, slash)));
        std::string_view arity_text = trim(header.substr(slash + 1));
        if (arity_text.empty() || ! std::all_of(arity_text.begin(), arity_text.end(),
                                                [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
            throw ParseError("arity must be a non-negative integer", line.number, column_of(line.text, arity_text));
        std::size_t arity = std::stoul(std::string(arity_text));

        // The first formula line keeps its column positions.
        std::string body = std::string(assign + 2, ' ') + line.text.substr(assign + 2);
        std::size_t j = i + 1;
        for (; j < lines.size(); ++j) {
            std::string_view u = trim(lines[j].text);
            if (starts_with_word(u, "relation") || u == "constraints")
                break;
            body += "\n" + lines[j].text;
        }
        ParseOptions opts;
        opts.variables = coordinate_names(arity);
        opts.first_line = line.number;
        Formula phi = parse_formula(body, opts);
        try {
            out.language.add(name, phi);
        }
        catch (const InvalidArgument & e) {
            throw ParseError(e.what(), line.number, column_of(line.text, header));
        }
        i = j;
    }
    return out;
}

std::string format_language(const ConstraintLanguage & language)
{
    std::ostringstream os;
    for (const auto & r : language.relations())
        os << "relation " << r.name << "/" << r.arity() << " := " << to_string(r.definition) << "\n";
    return os.str();
}

std::string format_constraints(const std::vector<Constraint> & constraints)
{
    std::ostringstream os;
    os << "constraints\n";
    for (const auto & c : constraints) {
        os << c.relation << "(";
        for (std::size_t k = 0; k < c.arguments.size(); ++k)
            os << (k ? ", " : "") << c.arguments[k];
        os << ")\n";
    }
    return os.str();
}

std::string format_problem(const ConstraintLanguage & language, const std::vector<Constraint> & constraints)
{
    return format_language(language) + format_constraints(constraints);
}

} // namespace zhorn
