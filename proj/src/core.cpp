#include <zhorn/core.hpp>

#include <algorithm>

namespace zhorn {

namespace {

const Atom false_atom{LinearForm{}, 1, 0};

Atom divide_atom(const Atom & atom, const Int & lambda)
{
    if (! atom.is_modular()) {
        if (! divides(lambda, atom.rhs))
            return false_atom;
        return Atom{atom.lhs, atom.rhs / lambda, 0};
    }
    const Int & d = atom.modulus;
    Int l = gcd(lambda, d);
    if (! divides(l, atom.rhs))
        return false_atom;
    Int m = d / l;
    Int e = *mod_inverse(lambda / l, m);
    return Atom{atom.lhs, floor_mod(e * (atom.rhs / l), m), m};
}

} // namespace

Formula divide_formula(const Formula & psi, const Int & lambda)
{
    if (lambda == 0)
        throw InvalidArgument("divide_formula: lambda must be nonzero");
    std::vector<Clause> clauses;
    for (const auto & c : psi.clauses()) {
        Clause out;
        for (const auto & l : c.literals)
            out.literals.push_back({divide_atom(l.atom, lambda), l.positive});
        clauses.push_back(std::move(out));
    }
    return Formula(psi.variables(), std::move(clauses));
}

bool is_endomorphism(const ConstraintLanguage & language, const Int & lambda, const SatOptions & options)
{
    if (lambda == 0) {
        for (const auto & r : language.relations()) {
            IntVector zero(r.arity(), Int(0));
            if (! evaluate(r.definition, zero) && formula_sat(r.definition, options))
                return false;
        }
        return true;
    }
    for (const auto & r : language.relations())
        if (! entails(r.definition, scale_variables(r.definition, lambda), options))
            return false;
    return true;
}

bool is_self_embedding(const ConstraintLanguage & language, const Int & lambda, const SatOptions & options)
{
    if (lambda == 0)
        throw InvalidArgument("is_self_embedding: lambda must be nonzero");
    for (const auto & r : language.relations())
        if (! equivalent(r.definition, scale_variables(r.definition, lambda), options))
            return false;
    return true;
}

namespace {

void match_pattern(EndomorphismSample & s)
{
    const Int & B = s.bound;
    std::vector<Int> nonzero;
    bool has_zero = false;
    for (const auto & m : s.members) {
        if (m == 0)
            has_zero = true;
        else
            nonzero.push_back(m);
    }
    auto expected = [&](auto pred) {
        std::vector<Int> out;
        for (Int x = -B; x <= B; ++x)
            if (x != 0 && pred(x))
                out.push_back(x);
        return out;
    };

    std::string shape;
    if (nonzero == expected([](const Int &) { return true; }))
        shape = "Z\\{0}";
    else if (nonzero == std::vector<Int>{Int(1)})
        shape = "{1}";
    else {
        // 1 + dZ for the smallest d consistent with the sample.
        for (Int d = 2; d <= 2 * B; ++d) {
            if (nonzero == expected([&](const Int & x) { return floor_mod(x - 1, d) == 0; })) {
                shape = "1+" + d.get_str() + "Z";
                s.pattern_modulus = d;
                break;
            }
        }
    }
    if (shape.empty()) {
        s.pattern = "irregular";
        return;
    }
    if (has_zero)
        s.pattern = shape == "Z\\{0}" ? "Z" : shape + " and 0";
    else
        s.pattern = shape;
}

} // namespace

EndomorphismSample endomorphism_sample(const ConstraintLanguage & language, const Int & bound,
                                       const SatOptions & options)
{
    if (bound < 1)
        throw InvalidArgument("endomorphism_sample: bound must be positive");
    EndomorphismSample s;
    s.bound = bound;
    const long b = bound.get_si();
    std::vector<char> member(static_cast<std::size_t>(2 * b + 1), 0);
    bool failed = false;
    std::string failure;
#pragma omp parallel for schedule(dynamic)
    for (long k = -b; k <= b; ++k) {
        try {
            member[static_cast<std::size_t>(k + b)] = is_endomorphism(language, Int(k), options) ? 1 : 0;
        }
        catch (const std::exception & e) {
#pragma omp critical
            {
                failed = true;
                failure = e.what();
            }
        }
    }
    if (failed)
        throw Error(failure);
    for (long k = -b; k <= b; ++k)
        if (member[static_cast<std::size_t>(k + b)])
            s.members.emplace_back(k);
    match_pattern(s);
    return s;
}

CoreResult core_reduce(const ConstraintLanguage & language, const Int & bound, const SatOptions & options)
{
    CoreResult out;
    out.bound = bound;
    out.language = language;
    if (is_endomorphism(language, 0, options)) {
        out.kind = CoreResult::Kind::OneElement;
        out.bound_limited = false;
        return out;
    }
    // Each division strictly shrinks the language up to homomorphic
    // equivalence, so this guard is only a safety net.
    constexpr int max_steps = 64;
    for (int step = 0; step < max_steps; ++step) {
        std::optional<Int> found;
        for (Int k = 2; k <= bound && ! found; ++k)
            for (const Int & lambda : {Int(k), Int(-k)})
                if (is_endomorphism(out.language, lambda, options) && ! is_self_embedding(out.language, lambda, options)) {
                    found = lambda;
                    break;
                }
        if (! found)
            return out;
        std::vector<Formula> divided;
        for (const auto & r : out.language.relations())
            divided.push_back(reduce_formula(divide_formula(r.definition, *found), options));
        out.language = out.language.with_definitions(divided);
        out.steps.push_back(*found);
        out.scale *= *found;
    }
    throw Error("core_reduce: no fixpoint after " + std::to_string(max_steps) + " divisions");
}

} // namespace zhorn
