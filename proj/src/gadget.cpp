#include <zhorn/gadget.hpp>

#include <algorithm>
#include <map>

namespace zhorn {

bool one_in_three_satisfiable(const OneInThreeInstance & instance)
{
    if (instance.variables >= 31)
        throw InvalidArgument("one_in_three_satisfiable: too many variables for brute force");
    for (const auto & c : instance.clauses)
        for (auto v : c)
            if (v >= instance.variables)
                throw InvalidArgument("one_in_three_satisfiable: clause refers to an unknown variable");
    const unsigned long total = 1UL << instance.variables;
    for (unsigned long mask = 0; mask < total; ++mask) {
        bool ok = std::all_of(instance.clauses.begin(), instance.clauses.end(), [&](const auto & c) {
            return ((mask >> c[0]) & 1) + ((mask >> c[1]) & 1) + ((mask >> c[2]) & 1) == 1;
        });
        if (ok)
            return true;
    }
    return false;
}

namespace {

std::vector<Int> slice(const Formula & matrix, const Int & lambda, long window, const SatOptions & options)
{
    const auto & vars = matrix.variables();
    std::vector<std::string> aux(vars.begin() + 2, vars.end());
    std::vector<Int> out;
    for (long a = -window; a <= window; ++a) {
        std::vector<AffineImage> images{AffineImage::constant_value(lambda), AffineImage::constant_value(a)};
        for (std::size_t i = 0; i < aux.size(); ++i)
            images.push_back(AffineImage::variable(i));
        if (formula_sat(substitute(matrix, aux, images), options))
            out.emplace_back(a);
    }
    return out;
}

} // namespace

FamilyAnalysis analyze_family(const ConstraintLanguage & language, const PpFormula & theta,
                              const GadgetOptions & options)
{
    if (theta.free.size() != 2)
        throw InvalidArgument("gadget: the family formula needs exactly two free variables");
    const Formula matrix = theta.matrix(language);
    const long half = options.slice_window / 2;

    FamilyAnalysis fa;
    fa.base = slice(matrix, 1, options.slice_window, options.sat);
    if (fa.base.size() < 2)
        throw InvalidArgument("gadget: slice at lambda = 1 has " + std::to_string(fa.base.size()) +
                              " element(s); at least 2 are required");
    for (long l = -options.lambda_window; l <= options.lambda_window; ++l) {
        auto s = slice(matrix, l, options.slice_window, options.sat);
        if (s.empty())
            continue;
        const std::string at = "gadget: slice at lambda = " + std::to_string(l);
        if (s.size() < 2)
            throw InvalidArgument(at + " has " + std::to_string(s.size()) + " element; at least 2 are required");
        if (abs(s.front()) > half || abs(s.back()) > half)
            throw InvalidArgument(at + " reaches the edge of the window [-" + std::to_string(options.slice_window) +
                                  ", " + std::to_string(options.slice_window) + "]; it may be infinite");
        std::vector<Int> scaled;
        for (const auto & a : fa.base)
            scaled.push_back(a * l);
        std::sort(scaled.begin(), scaled.end());
        if (s != scaled)
            throw InvalidArgument(at + " is not lambda times the slice at lambda = 1");
        fa.lambdas.emplace_back(l);
    }
    fa.m1 = fa.base[0];
    fa.m2 = fa.base[1];
    return fa;
}

namespace {

class Builder {
public:
    explicit Builder(std::vector<Constraint> & out) :
        out_(out)
    {
    }

    const std::string lambda = "L";

    std::string multiple(const Int & m)
    {
        if (m == 1)
            return lambda;
        auto key = m.get_str();
        if (auto it = names_.find(key); it != names_.end())
            return it->second;
        std::string name;
        if (m == 0) {
            name = "Z";
            emit("plus", {name, name, name});
        }
        else if (m > 1) {
            std::string prev = multiple(m - 1);
            name = "M" + key;
            emit("plus", {prev, lambda, name});
        }
        else {
            std::string pos = multiple(-m);
            std::string zero = multiple(0);
            name = "N" + Int(-m).get_str();
            emit("plus", {pos, name, zero});
        }
        names_[key] = name;
        return name;
    }

    void emit(const std::string & rel, std::vector<std::string> args) { out_.push_back({rel, std::move(args)}); }

private:
    std::vector<Constraint> & out_;
    std::map<std::string, std::string> names_;
};

} // namespace

GadgetInstance gadget_one_in_three(const ConstraintLanguage & language, const PpFormula & theta,
                                   const OneInThreeInstance & instance, const GadgetOptions & options)
{
    GadgetInstance g;
    g.family = analyze_family(language, theta, options);
    for (const auto & c : instance.clauses)
        for (auto v : c)
            if (v >= instance.variables)
                throw InvalidArgument("gadget: clause refers to an unknown variable");

    Builder b(g.constraints);
    g.lambda_variable = b.lambda;
    for (std::size_t i = 0; i < instance.variables; ++i)
        g.variable_names.push_back("p" + std::to_string(i));

    std::vector<char> used(instance.variables, 0);
    for (const auto & c : instance.clauses)
        for (auto v : c)
            used[v] = 1;

    const Int gap = g.family.m2 - g.family.m1;
    const std::string target = instance.clauses.empty() ? std::string() : b.multiple(gap);
    const std::string shift = g.family.m1 == 0 ? std::string() : b.multiple(g.family.m1);

    for (std::size_t i = 0; i < instance.variables; ++i) {
        if (! used[i])
            continue;
        const std::string & p = g.variable_names[i];
        std::string u = p;
        if (! shift.empty()) {
            u = "u" + std::to_string(i);
            b.emit("plus", {p, shift, u});
        }
        std::map<std::string, std::string> rename{{theta.free[0], b.lambda}, {theta.free[1], u}};
        for (const auto & atom : theta.atoms) {
            std::vector<std::string> args;
            for (const auto & a : atom.arguments) {
                auto it = rename.find(a);
                args.push_back(it != rename.end() ? it->second : "t" + std::to_string(i) + "_" + a);
            }
            b.emit(atom.relation, std::move(args));
        }
    }
    for (std::size_t j = 0; j < instance.clauses.size(); ++j) {
        const auto & c = instance.clauses[j];
        const std::string s = "s" + std::to_string(j);
        b.emit("plus", {g.variable_names[c[0]], g.variable_names[c[1]], s});
        b.emit("plus", {s, g.variable_names[c[2]], target});
    }
    return g;
}

} // namespace zhorn
