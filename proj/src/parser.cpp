#include <zhorn/parser.hpp>

#include <algorithm>
#include <cctype>

namespace zhorn {

ParseError::ParseError(const std::string & message, std::size_t line, std::size_t column) :
    Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
    line_(line),
    column_(column)
{
}

bool is_identifier(std::string_view s)
{
    if (s.empty() || ! (std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
        return false;
    return std::all_of(s.begin(), s.end(),
                       [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

namespace {

enum class Tok { Ident, Number, LParen, RParen, Amp, Bar, Bang, Eq, Neq, Plus, Minus, Star, Semi, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t line;
    std::size_t column;
};

std::vector<Token> tokenize(std::string_view text, std::size_t first_line)
{
    std::vector<Token> out;
    std::size_t line = first_line, col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            }
            else
                ++col;
            ++i;
        }
    };
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        std::size_t l = line, cl = col;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                ++j;
            out.push_back({Tok::Ident, std::string(text.substr(i, j - i)), l, cl});
            advance(j - i);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])))
                ++j;
            out.push_back({Tok::Number, std::string(text.substr(i, j - i)), l, cl});
            advance(j - i);
            continue;
        }
        if (c == '!' && i + 1 < text.size() && text[i + 1] == '=') {
            out.push_back({Tok::Neq, "!=", l, cl});
            advance(2);
            continue;
        }
        Tok kind;
        switch (c) {
        case '(': kind = Tok::LParen; break;
        case ')': kind = Tok::RParen; break;
        case '&': kind = Tok::Amp; break;
        case '|': kind = Tok::Bar; break;
        case '!': kind = Tok::Bang; break;
        case '=': kind = Tok::Eq; break;
        case '+': kind = Tok::Plus; break;
        case '-': kind = Tok::Minus; break;
        case '*': kind = Tok::Star; break;
        case ';': kind = Tok::Semi; break;
        default: throw ParseError(std::string("unexpected character '") + c + "'", l, cl);
        }
        out.push_back({kind, std::string(1, c), l, cl});
        advance(1);
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

const char * describe(Tok t)
{
    switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Number: return "number";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Amp: return "'&'";
    case Tok::Bar: return "'|'";
    case Tok::Bang: return "'!'";
    case Tok::Eq: return "'='";
    case Tok::Neq: return "'!='";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Semi: return "';'";
    case Tok::End: return "end of input";
    }
    return "token";
}

bool is_reserved(const std::string & s)
{
    return s == "mod" || s == "TRUE" || s == "FALSE";
}

class Parser {
public:
    Parser(std::string_view text, const ParseOptions & options) :
        tokens_(tokenize(text, options.first_line)),
        fixed_(options.variables.has_value())
    {
        if (fixed_)
            variables_ = *options.variables;
    }

    Formula formula()
    {
        std::vector<Clause> clauses;
        clauses.push_back(clause());
        while (accept(Tok::Amp))
            clauses.push_back(clause());
        expect(Tok::End);
        return Formula(variables_, std::move(clauses));
    }

    EquationSystem equations()
    {
        EquationSystem sys;
        if (peek().kind != Tok::End) {
            sys.equations.push_back(linear_equation());
            while (accept(Tok::Semi)) {
                if (peek().kind == Tok::End)
                    break;
                sys.equations.push_back(linear_equation());
            }
        }
        expect(Tok::End);
        sys.variables = variables_;
        return sys;
    }

private:
    const Token & peek(std::size_t ahead = 0) const { return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)]; }

    bool accept(Tok kind)
    {
        if (peek().kind != kind)
            return false;
        ++pos_;
        return true;
    }

    const Token & expect(Tok kind)
    {
        if (peek().kind != kind)
            fail(std::string("expected ") + describe(kind) + ", found " + describe(peek().kind));
        return tokens_[pos_++];
    }

    [[noreturn]] void fail(const std::string & message) const
    {
        throw ParseError(message, peek().line, peek().column);
    }

    bool at_constant() const
    {
        return peek().kind == Tok::Ident && (peek().text == "TRUE" || peek().text == "FALSE");
    }

    static Literal constant_literal(bool value) { return {Atom{LinearForm{}, value ? 0 : 1, 0}, true}; }

    Clause clause()
    {
        Clause c;
        disjunction(c);
        return c;
    }

    void disjunction(Clause & c)
    {
        unit(c);
        while (accept(Tok::Bar))
            unit(c);
    }

    // A parenthesized atom and a parenthesized disjunction both parse as a
    // disjunction; linear expressions never start with '('.
    void unit(Clause & c)
    {
        if (at_constant()) {
            c.literals.push_back(constant_literal(peek().text == "TRUE"));
            ++pos_;
            return;
        }
        if (accept(Tok::Bang)) {
            Literal l = negatable_atom();
            l.positive = ! l.positive;
            c.literals.push_back(std::move(l));
            return;
        }
        if (peek().kind == Tok::LParen) {
            ++pos_;
            disjunction(c);
            expect(Tok::RParen);
            return;
        }
        c.literals.push_back(atom());
    }

    Literal negatable_atom()
    {
        if (at_constant()) {
            bool v = peek().text == "TRUE";
            ++pos_;
            return constant_literal(v);
        }
        if (accept(Tok::LParen)) {
            Literal l = negatable_atom_inner();
            expect(Tok::RParen);
            return l;
        }
        return atom();
    }

    Literal negatable_atom_inner()
    {
        if (accept(Tok::Bang)) {
            Literal l = negatable_atom();
            l.positive = ! l.positive;
            return l;
        }
        return negatable_atom();
    }

    VarId variable(const Token & tok)
    {
        if (is_reserved(tok.text))
            throw ParseError("reserved word '" + tok.text + "' used as a variable", tok.line, tok.column);
        auto it = std::find(variables_.begin(), variables_.end(), tok.text);
        if (it != variables_.end())
            return static_cast<VarId>(it - variables_.begin());
        if (fixed_)
            throw ParseError("undeclared variable '" + tok.text + "'", tok.line, tok.column);
        variables_.push_back(tok.text);
        return variables_.size() - 1;
    }

    // Parses a linear expression into (form, constant).
    std::pair<LinearForm, Int> expression()
    {
        LinearForm form;
        Int constant = 0;
        bool first = true;
        for (;;) {
            Int sign = 1;
            if (accept(Tok::Minus))
                sign = -1;
            else if (! accept(Tok::Plus) && ! first)
                break;
            first = false;
            if (peek().kind == Tok::Number) {
                Int value = parse_int(peek().text);
                ++pos_;
                if (accept(Tok::Star)) {
                    const Token & id = expect(Tok::Ident);
                    form = form.plus(LinearForm::variable(variable(id), sign * value));
                }
                else
                    constant += sign * value;
            }
            else if (peek().kind == Tok::Ident && ! is_reserved(peek().text)) {
                const Token & id = tokens_[pos_++];
                form = form.plus(LinearForm::variable(variable(id), sign));
            }
            else
                fail(std::string("expected a term, found ") + describe(peek().kind));
        }
        return {std::move(form), std::move(constant)};
    }

    Literal atom()
    {
        auto [lhs, lc] = expression();
        bool positive;
        if (accept(Tok::Eq))
            positive = true;
        else if (accept(Tok::Neq))
            positive = false;
        else
            fail(std::string("expected '=' or '!=', found ") + describe(peek().kind));
        auto [rhs, rc] = expression();
        LinearForm form = lhs.plus(rhs.scaled(-1));
        Int constant = rc - lc;
        Int modulus = 0;
        if (peek().kind == Tok::Ident && peek().text == "mod") {
            ++pos_;
            const Token & num = peek();
            if (num.kind == Tok::Minus)
                fail("modulus must be positive");
            expect(Tok::Number);
            modulus = parse_int(num.text);
            if (modulus < 1)
                throw ParseError("modulus must be positive", num.line, num.column);
        }
        return {Atom{std::move(form), std::move(constant), std::move(modulus)}, positive};
    }

    Atom linear_equation()
    {
        const Token & start = peek();
        Literal l = atom();
        if (! l.positive || l.atom.is_modular())
            throw ParseError("expected a linear equation", start.line, start.column);
        return l.atom;
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    bool fixed_;
    std::vector<std::string> variables_;
};

} // namespace

Formula parse_formula(std::string_view text, const ParseOptions & options)
{
    return Parser(text, options).formula();
}

Formula parse_formula(std::string_view text, const std::vector<std::string> & variables)
{
    ParseOptions options;
    options.variables = variables;
    return parse_formula(text, options);
}

EquationSystem parse_equations(std::string_view text, const ParseOptions & options)
{
    return Parser(text, options).equations();
}

} // namespace zhorn
