// zhorn: command-line front end.
//
// Exit codes: 0 success / SAT / true, 10 UNSAT / false / negative,
// 20 UNKNOWN or a cap was exceeded, 30 NOT-HORN (solve), 1 usage error,
// 2 input error.

#include <zhorn/classify.hpp>
#include <zhorn/core.hpp>
#include <zhorn/gadget.hpp>
#include <zhorn/horn.hpp>
#include <zhorn/language.hpp>
#include <zhorn/lattice.hpp>
#include <zhorn/oracle.hpp>
#include <zhorn/parser.hpp>
#include <zhorn/presburger.hpp>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>
#include <omp.h>

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace zhorn;
using Json = nlohmann::ordered_json;

namespace {

enum Exit { ok = 0, negative = 10, unknown = 20, not_horn = 30, usage = 1, input = 2 };

struct Outcome {
    int code = ok;
    Json doc = Json::object();
    std::string human;
};

class InputError : public Error {
public:
    using Error::Error;
};

struct RunConfig {
    std::string subcommand;
    std::string file, formula, other, matrix, family, clauses;
    Int modulus = 0;
    std::size_t variables = 0;
    bool count = false;
    bool check = false;

    std::string format = "human";
    Int bound = 64;
    Int box = 10;
    int jobs = 0;
    HornSearchBounds horn;
    SatOptions sat;
};

std::string read_source(const std::string & path)
{
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (! in)
        throw InputError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Formula arguments are literal text, or @path to read a file.
std::string formula_text(const std::string & arg)
{
    return ! arg.empty() && arg[0] == '@' ? read_source(arg.substr(1)) : arg;
}

std::string str(const Int & v)
{
    return v.get_str();
}

Json tuple_json(const IntVector & t)
{
    Json a = Json::array();
    for (const auto & v : t)
        a.push_back(str(v));
    return a;
}

Json matrix_json(const IntMatrix & m)
{
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        IntVector row;
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back(m(i, j));
        rows.push_back(tuple_json(row));
    }
    return rows;
}

std::string matrix_text(const IntMatrix & m)
{
    std::vector<std::size_t> width(m.cols(), 1);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            width[j] = std::max(width[j], str(m(i, j)).size());
    std::ostringstream os;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << "  [";
        for (std::size_t j = 0; j < m.cols(); ++j) {
            std::string s = str(m(i, j));
            os << (j ? " " : "") << std::string(width[j] - s.size(), ' ') << s;
        }
        os << "]\n";
    }
    return os.str();
}

Json assignment_json(const std::vector<std::string> & vars, const IntVector & values)
{
    Json a = Json::object();
    for (std::size_t i = 0; i < vars.size(); ++i)
        a[vars[i]] = str(values[i]);
    return a;
}

std::string assignment_text(const std::vector<std::string> & vars, const IntVector & values)
{
    std::string out;
    for (std::size_t i = 0; i < vars.size(); ++i)
        out += vars[i] + " = " + str(values[i]) + "\n";
    return out;
}

// key: value lines, nested keys joined with '.', array entries by index.
void flatten(const Json & j, const std::string & prefix, std::ostream & os)
{
    if (j.is_object()) {
        for (const auto & [k, v] : j.items())
            flatten(v, prefix.empty() ? k : prefix + "." + k, os);
    }
    else if (j.is_array() && std::all_of(j.begin(), j.end(), [](const Json & e) { return e.is_string(); })) {
        os << prefix << ":";
        for (const auto & e : j)
            os << " " << e.get<std::string>();
        os << "\n";
    }
    else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i)
            flatten(j[i], prefix + "." + std::to_string(i), os);
    }
    else if (j.is_string())
        os << prefix << ": " << j.get<std::string>() << "\n";
    else
        os << prefix << ": " << j.dump() << "\n";
}

ProblemFile load_problem(const std::string & path)
{
    return parse_problem(read_source(path));
}

// ---------------------------------------------------------------------------

Outcome cmd_solve(const std::string & file, const std::string & formula)
{
    Outcome out;
    Formula instance;
    std::vector<std::string> vars;
    if (! formula.empty()) {
        instance = standardize(parse_formula(formula_text(formula)));
        vars = instance.variables();
        if (! is_horn(instance)) {
            out.code = not_horn;
            out.doc["status"] = "NOT-HORN";
            out.human = "NOT-HORN\n";
            return out;
        }
        auto r = horn_solve(instance);
        if (! r.satisfiable) {
            out.code = negative;
            out.doc["status"] = "UNSAT";
            out.human = "UNSAT\n";
            return out;
        }
        if (! evaluate(instance, r.assignment))
            throw Error("solve: witness failed verification");
        out.doc["status"] = "SAT";
        out.doc["assignment"] = assignment_json(vars, r.assignment);
        out.human = "SAT\n" + assignment_text(vars, r.assignment);
        return out;
    }
    ProblemFile pf = load_problem(file);
    if (! pf.constraints)
        throw InputError("'" + file + "' has no constraints section");
    auto r = solve_csp_instance(pf.language, *pf.constraints);
    switch (r.kind) {
    case CspOutcome::Kind::NotHorn:
        out.code = not_horn;
        out.doc["status"] = "NOT-HORN";
        out.human = "NOT-HORN\n";
        break;
    case CspOutcome::Kind::Unsat:
        out.code = negative;
        out.doc["status"] = "UNSAT";
        out.human = "UNSAT\n";
        break;
    case CspOutcome::Kind::Sat:
        if (! evaluate(r.instance, r.assignment))
            throw Error("solve: witness failed verification");
        out.doc["status"] = "SAT";
        out.doc["assignment"] = assignment_json(r.variables, r.assignment);
        out.human = "SAT\n" + assignment_text(r.variables, r.assignment);
        break;
    }
    return out;
}

Outcome cmd_sat(const std::string & formula, const RunConfig & s)
{
    Outcome out;
    Formula phi = parse_formula(formula_text(formula));
    auto w = formula_sat(phi, s.sat);
    if (! w) {
        out.code = negative;
        out.doc["status"] = "UNSAT";
        out.human = "UNSAT\n";
        return out;
    }
    out.doc["status"] = "SAT";
    out.doc["assignment"] = assignment_json(phi.variables(), *w);
    out.human = "SAT\n" + assignment_text(phi.variables(), *w);
    return out;
}

Outcome cmd_implies(const std::string & premises, const std::string & conclusion)
{
    Outcome out;
    auto psi_alone = parse_equations(conclusion);
    if (psi_alone.equations.size() != 1)
        throw InputError("implies: the conclusion must be a single linear equation");
    std::string joined = premises.find_first_not_of(" \t\n;") == std::string::npos ? conclusion
                                                                                  : premises + "; " + conclusion;
    auto sys = parse_equations(joined);
    Atom psi = sys.equations.back();
    sys.equations.pop_back();
    bool result = implies(sys.equations, psi);
    out.code = result ? ok : negative;
    out.doc["implies"] = result ? "true" : "false";
    out.human = result ? "true\n" : "false\n";
    return out;
}

IntMatrix parse_matrix(const std::string & text)
{
    std::vector<IntVector> rows;
    std::string norm = text;
    std::replace(norm.begin(), norm.end(), ';', '\n');
    std::istringstream lines(norm);
    std::string line;
    std::size_t number = 0;
    while (std::getline(lines, line)) {
        ++number;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream cells(line);
        IntVector row;
        std::string cell;
        while (cells >> cell) {
            std::size_t start = cell[0] == '-' || cell[0] == '+' ? 1 : 0;
            if (start == cell.size() ||
                ! std::all_of(cell.begin() + static_cast<long>(start), cell.end(),
                              [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
                throw InputError("matrix row " + std::to_string(number) + ": '" + cell + "' is not an integer");
            row.emplace_back(cell[0] == '+' ? cell.substr(1) : cell);
        }
        if (row.empty())
            continue;
        if (! rows.empty() && row.size() != rows.front().size())
            throw InputError("matrix row " + std::to_string(number) + " has " + std::to_string(row.size()) +
                             " entries, expected " + std::to_string(rows.front().size()));
        rows.push_back(std::move(row));
    }
    IntMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            m(i, j) = rows[i][j];
    return m;
}

Outcome cmd_hnf(const std::string & file, const std::string & matrix)
{
    Outcome out;
    IntMatrix M = parse_matrix(matrix.empty() ? read_source(file) : matrix);
    auto r = hermite_normal_form(M);
    out.doc["rank"] = std::to_string(r.rank);
    Json pivots = Json::array();
    for (auto p : r.pivot_rows)
        pivots.push_back(std::to_string(p));
    out.doc["pivot_rows"] = pivots;
    out.doc["H"] = matrix_json(r.H);
    out.doc["U"] = matrix_json(r.U);
    out.human = "rank " + std::to_string(r.rank) + "\nH =\n" + matrix_text(r.H) + "U =\n" + matrix_text(r.U);
    return out;
}

Outcome cmd_normalize(const std::string & formula, const RunConfig & s)
{
    Outcome out;
    Formula phi = parse_formula(formula_text(formula));
    Formula standard = standardize(phi);
    Formula reduced = reduce_formula(standard, s.sat);
    out.doc["normalized"] = to_string(phi);
    out.doc["standard"] = to_string(standard);
    out.doc["reduced"] = to_string(reduced);
    out.doc["horn"] = is_horn(reduced) ? "true" : "false";
    out.human = "normalized: " + to_string(phi) + "\nstandard:   " + to_string(standard) +
                "\nreduced:    " + to_string(reduced) + "\nhorn:       " + (is_horn(reduced) ? "yes" : "no") + "\n";
    return out;
}

Outcome cmd_core(const std::string & file, const RunConfig & s)
{
    Outcome out;
    ProblemFile pf = load_problem(file);
    CoreResult c = core_reduce(pf.language, s.bound, s.sat);
    auto sample = endomorphism_sample(c.language, std::min<Int>(s.bound, Int(16)), s.sat);
    const bool one = c.kind == CoreResult::Kind::OneElement;
    out.doc["core"] = one ? "ONE-ELEMENT-CORE" : "CORE";
    Json steps = Json::array();
    for (const auto & l : c.steps)
        steps.push_back(str(l));
    out.doc["steps"] = steps;
    out.doc["scale"] = str(c.scale);
    out.doc["bound"] = str(c.bound);
    out.doc["endomorphisms"] = sample.pattern;
    Json rels = Json::object();
    for (const auto & r : c.language.relations())
        rels[r.name] = to_string(r.definition);
    out.doc["relations"] = rels;

    std::ostringstream h;
    h << (one ? "ONE-ELEMENT-CORE (0 is an endomorphism)\n" : "CORE");
    if (! one) {
        h << " within |lambda| <= " << str(c.bound);
        if (! c.steps.empty()) {
            h << ", divided by";
            for (const auto & l : c.steps)
                h << " " << str(l);
        }
        h << "\n";
    }
    h << "endomorphisms (sampled to " << str(sample.bound) << "): " << sample.pattern << "\n";
    if (! one)
        for (const auto & r : c.language.relations())
            h << "  " << r.name << "/" << r.arity() << " := " << to_string(r.definition) << "\n";
    out.human = h.str();
    return out;
}

Outcome cmd_classify(const std::string & file, const RunConfig & s)
{
    Outcome out;
    ProblemFile pf = load_problem(file);
    ClassifyOptions opts;
    opts.endomorphism_bound = s.bound;
    opts.horn = s.horn;
    opts.sat = s.sat;
    opts.jobs = s.jobs;
    Verdict v = classify(pf.language, opts);
    out.code = v.kind == VerdictKind::Unknown ? unknown : ok;

    out.doc["verdict"] = to_string(v.kind);
    out.doc["core"] = v.core.kind == CoreResult::Kind::OneElement ? "ONE-ELEMENT-CORE" : "CORE";
    Json steps = Json::array();
    for (const auto & l : v.core.steps)
        steps.push_back(str(l));
    out.doc["core_steps"] = steps;
    Json rels = Json::object();
    for (const auto & r : v.relations) {
        Json e = Json::object();
        e["core_definition"] = to_string(r.core_definition);
        e["outcome"] = to_string(r.result.kind);
        e["method"] = r.result.method;
        if (r.result.kind == HornSearchResult::Kind::Horn)
            e["horn_definition"] = to_string(r.result.horn_formula);
        if (! r.result.certificate.empty())
            e["certificate"] = r.result.certificate;
        rels[r.name] = e;
    }
    out.doc["relations"] = rels;
    out.doc["justification"] = v.justification;

    std::ostringstream h;
    h << to_string(v.kind) << "\n";
    for (const auto & r : v.relations) {
        h << "  " << r.name << ": " << to_string(r.result.kind) << " (" << r.result.method << ")\n";
        if (r.result.kind == HornSearchResult::Kind::Horn)
            h << "    " << to_string(r.result.horn_formula) << "\n";
        else if (! r.result.certificate.empty())
            h << "    " << r.result.certificate << "\n";
    }
    h << v.justification << "\n";
    out.human = h.str();
    return out;
}

Outcome cmd_classify_structured(const std::string & file, const RunConfig & s)
{
    // The library report is the structured form.
    ProblemFile pf = load_problem(file);
    ClassifyOptions opts;
    opts.endomorphism_bound = s.bound;
    opts.horn = s.horn;
    opts.sat = s.sat;
    opts.jobs = s.jobs;
    Verdict v = classify(pf.language, opts);
    Outcome out;
    out.code = v.kind == VerdictKind::Unknown ? unknown : ok;
    out.human = format_report(v);
    return out;
}

Outcome cmd_quotient(const std::string & file, const Int & d, const RunConfig & s)
{
    if (d < 1)
        throw InputError("quotient: modulus must be at least 1");
    Outcome out;
    ProblemFile pf = load_problem(file);
    QuotientStructure q = quotient(pf.language, d, s.sat);
    out.doc["modulus"] = str(d);
    std::ostringstream h;
    h << "modulo " << str(d) << "\n";
    Json rels = Json::object();
    bool all_cosets = true;
    for (const auto & [name, tuples] : q.relations) {
        Json e = Json::object();
        Json ts = Json::array();
        for (const auto & t : tuples)
            ts.push_back(tuple_json(t));
        e["tuples"] = ts;
        h << "  " << name << ": " << tuples.size() << " tuple(s)";
        if (tuples.empty()) {
            e["coset"] = "empty";
            h << ", empty\n";
        }
        else {
            auto m = maltsev_coset_test(tuples, d);
            e["coset"] = m.pass ? "true" : "false";
            h << (m.pass ? ", coset\n" : ", not a coset");
            if (! m.pass) {
                all_cosets = false;
                Json w = Json::array();
                for (const auto & t : m.witness)
                    w.push_back(tuple_json(t));
                e["witness"] = w;
                e["image"] = tuple_json(m.image);
                auto show = [](const IntVector & t) {
                    std::string s = "(";
                    for (std::size_t i = 0; i < t.size(); ++i)
                        s += (i ? "," : "") + str(t[i]);
                    return s + ")";
                };
                h << ": " << show(m.witness[0]) << " - " << show(m.witness[1]) << " + " << show(m.witness[2])
                  << " = " << show(m.image) << "\n";
            }
        }
        if (name != plus_relation && tuples.size() <= 64) {
            h << "   ";
            for (const auto & t : tuples) {
                h << " (";
                for (std::size_t i = 0; i < t.size(); ++i)
                    h << (i ? "," : "") << str(t[i]);
                h << ")";
            }
            h << "\n";
        }
        rels[name] = e;
    }
    out.doc["relations"] = rels;
    out.code = all_cosets ? ok : negative;
    out.human = h.str();
    return out;
}

PpFormula parse_family(const std::string & text, const ConstraintLanguage & language)
{
    auto colon = text.find(':');
    if (colon == std::string::npos)
        throw InputError("family: expected 'l, x : ATOM, ATOM, ...'");
    PpFormula theta;
    std::istringstream head(text.substr(0, colon));
    std::string v;
    while (std::getline(head, v, ',')) {
        v.erase(0, v.find_first_not_of(" \t"));
        v.erase(v.find_last_not_of(" \t") + 1);
        if (! is_identifier(v))
            throw InputError("family: invalid free variable '" + v + "'");
        theta.free.push_back(v);
    }
    // Reuse the problem-file parser for the atoms.
    std::string body = format_language(language) + "constraints\n";
    std::string rest = text.substr(colon + 1);
    std::size_t start = 0;
    for (;;) {
        auto close = rest.find(')', start);
        if (close == std::string::npos)
            break;
        std::string atom = rest.substr(start, close - start + 1);
        atom.erase(0, atom.find_first_not_of(" \t,"));
        body += atom + "\n";
        start = close + 1;
    }
    if (rest.find_first_not_of(" \t,", start) != std::string::npos)
        throw InputError("family: trailing text after the last atom");
    theta.atoms = *parse_problem(body).constraints;
    return theta;
}

OneInThreeInstance parse_clauses(const std::string & text, std::size_t variables)
{
    OneInThreeInstance inst;
    std::string norm = text;
    std::replace(norm.begin(), norm.end(), ';', '\n');
    std::istringstream lines(norm);
    std::string line;
    std::size_t top = 0;
    while (std::getline(lines, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream cells(line);
        std::vector<long> c;
        long x;
        while (cells >> x)
            c.push_back(x);
        if (! cells.eof())
            throw InputError("clauses: '" + line + "' is not a list of variable indices");
        if (c.empty())
            continue;
        if (c.size() != 3 || std::any_of(c.begin(), c.end(), [](long i) { return i < 0; }))
            throw InputError("clauses: each clause is three non-negative variable indices");
        inst.clauses.push_back({static_cast<std::size_t>(c[0]), static_cast<std::size_t>(c[1]),
                                static_cast<std::size_t>(c[2])});
        top = std::max({top, inst.clauses.back()[0] + 1, inst.clauses.back()[1] + 1, inst.clauses.back()[2] + 1});
    }
    inst.variables = std::max(top, variables);
    return inst;
}

Outcome cmd_gadget(const std::string & file, const std::string & family, const std::string & clauses,
                   std::size_t variables, bool check, const RunConfig & s)
{
    Outcome out;
    ProblemFile pf = load_problem(file);
    PpFormula theta = parse_family(family, pf.language);
    OneInThreeInstance inst = parse_clauses(formula_text(clauses), variables);
    GadgetOptions opts;
    opts.sat = s.sat;
    GadgetInstance g;
    try {
        g = gadget_one_in_three(pf.language, theta, inst, opts);
    }
    catch (const InvalidArgument & e) {
        throw InputError(e.what());
    }
    Json base = Json::array();
    for (const auto & a : g.family.base)
        base.push_back(str(a));
    out.doc["family_slice"] = base;
    out.doc["m1"] = str(g.family.m1);
    out.doc["m2"] = str(g.family.m2);
    out.doc["lambda_variable"] = g.lambda_variable;
    Json names = Json::array();
    for (const auto & n : g.variable_names)
        names.push_back(n);
    out.doc["variables"] = names;
    out.doc["problem"] = format_problem(pf.language, g.constraints);

    std::ostringstream h;
    h << "# slice at lambda = 1: {";
    for (std::size_t i = 0; i < g.family.base.size(); ++i)
        h << (i ? ", " : "") << str(g.family.base[i]);
    h << "}, m1 = " << str(g.family.m1) << ", m2 = " << str(g.family.m2) << "\n";
    h << "# variable i of the 1-in-3 instance is p<i>: 0 for false, (m2 - m1) * " << g.lambda_variable
      << " for true\n";
    h << format_problem(pf.language, g.constraints);

    if (check) {
        bool expected = one_in_three_satisfiable(inst);
        Formula phi = instantiate(pf.language, g.constraints, {g.lambda_variable});
        Int bound = abs(g.family.m1) + abs(g.family.m2) + 2;
        bool csp = box_sat(phi, Box{bound}).has_value();
        out.doc["check"]["one_in_three"] = expected ? "SAT" : "UNSAT";
        out.doc["check"]["csp"] = csp ? "SAT" : "UNSAT";
        out.doc["check"]["agree"] = csp == expected ? "true" : "false";
        h << "# check: 1-in-3 " << (expected ? "SAT" : "UNSAT") << ", CSP on box [-" << str(bound) << ", "
          << str(bound) << "] " << (csp ? "SAT" : "UNSAT") << "\n";
        if (csp != expected)
            out.code = negative;
    }
    out.human = h.str();
    return out;
}

Outcome cmd_oracle(const std::string & formula, const std::string & equiv, bool count, const RunConfig & s)
{
    Outcome out;
    Formula phi = parse_formula(formula_text(formula));
    Box box{s.box};
    out.doc["box"] = str(s.box);
    if (! equiv.empty()) {
        Formula psi = parse_formula(formula_text(equiv));
        bool same = box_equiv_parallel(phi, psi, box);
        out.code = same ? ok : negative;
        out.doc["equivalent"] = same ? "true" : "false";
        out.human = same ? "true\n" : "false\n";
        return out;
    }
    if (count) {
        auto n = box_count(phi, box);
        out.doc["count"] = std::to_string(n);
        out.code = n > 0 ? ok : negative;
        out.human = std::to_string(n) + "\n";
        return out;
    }
    auto w = box_sat_parallel(phi, box);
    if (! w) {
        out.code = negative;
        out.doc["status"] = "NONE-IN-BOX";
        out.human = "NONE-IN-BOX\n";
        return out;
    }
    out.doc["status"] = "FOUND";
    out.doc["assignment"] = assignment_json(phi.variables(), *w);
    out.human = "FOUND\n" + assignment_text(phi.variables(), *w);
    return out;
}

void emit(const Outcome & out, const std::string & format)
{
    if (format == "json")
        std::cout << out.doc.dump(2) << "\n";
    else if (format == "structured")
        flatten(out.doc, "", std::cout);
    else
        std::cout << out.human;
}

Int parse_int_option(const std::string & name, const std::string & text)
{
    std::size_t start = ! text.empty() && text[0] == '-' ? 1 : 0;
    if (start == text.size() || ! std::all_of(text.begin() + static_cast<long>(start), text.end(),
                                               [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw CLI::ValidationError(name, "'" + text + "' is not a decimal integer");
    return Int(text);
}

int run(const RunConfig & c)
{
    if (c.jobs > 0)
        omp_set_num_threads(c.jobs);
    try {
        Outcome out;
        std::string format = c.format;
        if (c.subcommand == "solve")
            out = cmd_solve(c.file, c.formula);
        else if (c.subcommand == "sat")
            out = cmd_sat(c.formula, c);
        else if (c.subcommand == "implies")
            out = cmd_implies(c.formula, c.other);
        else if (c.subcommand == "hnf")
            out = cmd_hnf(c.file, c.matrix);
        else if (c.subcommand == "normalize")
            out = cmd_normalize(c.formula, c);
        else if (c.subcommand == "core")
            out = cmd_core(c.file, c);
        else if (c.subcommand == "classify" && format == "structured") {
            out = cmd_classify_structured(c.file, c);
            format = "human";
        }
        else if (c.subcommand == "classify")
            out = cmd_classify(c.file, c);
        else if (c.subcommand == "quotient")
            out = cmd_quotient(c.file, c.modulus, c);
        else if (c.subcommand == "gadget")
            out = cmd_gadget(c.file, c.family, c.clauses, c.variables, c.check, c);
        else if (c.subcommand == "oracle")
            out = cmd_oracle(c.formula, c.other, c.count, c);
        else {
            std::cerr << "zhorn: unknown subcommand '" << c.subcommand << "'\n";
            return usage;
        }
        emit(out, format);
        return out.code;
    }
    catch (const ParseError & e) {
        std::cerr << "zhorn: input:" << e.what() << "\n";
        return input;
    }
    catch (const InputError & e) {
        std::cerr << "zhorn: " << e.what() << "\n";
        return input;
    }
    catch (const InvalidArgument & e) {
        std::cerr << "zhorn: " << e.what() << "\n";
        return input;
    }
    catch (const ExpansionCapExceeded & e) {
        std::cerr << "zhorn: UNKNOWN: " << e.what() << " (raise ZHORN_DNF_CAP)\n";
        return unknown;
    }
    catch (const OracleCapExceeded & e) {
        std::cerr << "zhorn: UNKNOWN: " << e.what() << "\n";
        return unknown;
    }
}

} // namespace

int main(int argc, char ** argv)
{
    CLI::App app{"Exact CSP solving and classification over (Z; +, 1)", "zhorn"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", "zhorn 1.0.0");

    RunConfig c;
    std::string bound_text = "64", box_text = "10", modulus_text;
    app.add_option("--format", c.format, "Output format")
        ->check(CLI::IsMember({"human", "structured", "json"}))
        ->capture_default_str();
    app.add_option("--bound", bound_text, "Endomorphism search bound |lambda| <= N")->capture_default_str();
    app.add_option("--box", box_text, "Oracle box half-width")->capture_default_str();
    app.add_option("--jobs", c.jobs, "OpenMP threads (0: runtime default)")->check(CLI::NonNegativeNumber);
    app.add_option("--horn-coefficient", c.horn.max_coefficient, "Horn search: largest coefficient")
        ->capture_default_str();
    app.add_option("--horn-modulus", c.horn.max_modulus, "Horn search: largest modulus")->capture_default_str();
    app.add_option("--horn-clauses", c.horn.max_clauses, "Horn search: largest clause count")->capture_default_str();
    app.add_option("--horn-literals", c.horn.max_literals, "Horn search: largest clause size")->capture_default_str();

    auto * solve = app.add_subcommand("solve", "Solve a Horn CSP instance or a raw Horn formula");
    solve->add_option("file", c.file, "Problem file with a constraints section ('-' for stdin)");
    solve->add_option("--formula", c.formula, "Standard Horn formula (text or @file)");

    auto * sat = app.add_subcommand("sat", "Satisfiability of a quantifier-free formula");
    sat->add_option("formula", c.formula, "Formula (text or @file)")->required();

    auto * imp = app.add_subcommand("implies", "Does a linear system imply a linear equation");
    imp->add_option("premises", c.formula, "';'-separated linear equations")->required();
    imp->add_option("conclusion", c.other, "One linear equation")->required();

    auto * hnf = app.add_subcommand("hnf", "Hermite normal form H = M U");
    hnf->add_option("file", c.file, "Matrix file: one row per line ('-' for stdin)");
    hnf->add_option("--matrix", c.matrix, "Inline matrix, rows separated by ';'");

    auto * norm = app.add_subcommand("normalize", "Normalize, standardize and reduce a formula");
    norm->add_option("formula", c.formula, "Formula (text or @file)")->required();

    app.add_subcommand("core", "Reduce a language to its core")
        ->add_option("file", c.file, "Language file")
        ->required();
    app.add_subcommand("classify", "Classify the CSP of a language")
        ->add_option("file", c.file, "Language file")
        ->required();

    auto * quo = app.add_subcommand("quotient", "Quotient structure modulo d with coset tests");
    quo->add_option("file", c.file, "Language file")->required();
    quo->add_option("--modulus", modulus_text, "Modulus d >= 1")->required();

    auto * gad = app.add_subcommand("gadget", "Reduce a 1-in-3-SAT instance to the CSP of a language");
    gad->add_option("file", c.file, "Language file")->required();
    gad->add_option("--family", c.family, "Binary pp-formula, e.g. 'l, x : S(l, x), S(l, y), plus(x, y, l)'")
        ->required();
    gad->add_option("--clauses", c.clauses, "Clauses as index triples separated by ';' (or @file)")->required();
    gad->add_option("--variables", c.variables, "Number of 1-in-3 variables (default: largest index + 1)");
    gad->add_flag("--check", c.check, "Compare the oracle answer with brute-force 1-in-3");

    auto * ora = app.add_subcommand("oracle", "Brute-force search on the box [-B, B]^n");
    ora->add_option("formula", c.formula, "Formula (text or @file)")->required();
    ora->add_option("--equiv", c.other, "Compare with this formula pointwise");
    ora->add_flag("--count", c.count, "Count satisfying box points");

    try {
        app.parse(argc, argv);
        c.subcommand = app.get_subcommands().front()->get_name();
        c.bound = parse_int_option("--bound", bound_text);
        c.box = parse_int_option("--box", box_text);
        if (c.bound < 0 || c.box < 0)
            throw CLI::ValidationError("--bound/--box", "must be non-negative");
        if (quo->parsed())
            c.modulus = parse_int_option("--modulus", modulus_text);
        if (const char * cap = std::getenv("ZHORN_DNF_CAP")) {
            char * end = nullptr;
            unsigned long long v = std::strtoull(cap, &end, 10);
            if (end == cap || *end != '\0' || v == 0)
                throw CLI::ValidationError("ZHORN_DNF_CAP", "must be a positive integer");
            c.sat.dnf_cap = static_cast<std::size_t>(v);
        }
        if (solve->parsed() && c.file.empty() == c.formula.empty())
            throw CLI::ValidationError("solve", "give exactly one of a problem file or --formula");
        if (hnf->parsed() && c.file.empty() == c.matrix.empty())
            throw CLI::ValidationError("hnf", "give exactly one of a matrix file or --matrix");
    }
    catch (const CLI::ParseError & e) {
        int code = app.exit(e);
        return code == 0 ? ok : usage;
    }
    return run(c);
}
