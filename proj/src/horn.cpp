#include <zhorn/horn.hpp>
#include <zhorn/presburger.hpp>

#include <algorithm>
#include <map>
#include <memory>

namespace zhorn {

bool is_horn(const Clause & clause)
{
    std::size_t positives = 0;
    for (const auto & l : clause.literals) {
        if (l.positive)
            ++positives;
        else if (l.atom.is_modular())
            return false;
    }
    return positives <= 1;
}

bool is_horn(const Formula & phi)
{
    return std::all_of(phi.clauses().begin(), phi.clauses().end(), [](const Clause & c) { return is_horn(c); });
}

IntVector construct_witness(std::span<const Atom> units, const std::vector<Clause> & residual, std::size_t dimension)
{
    IntMatrix A(0, dimension);
    IntVector b;
    for (const auto & u : units) {
        if (u.is_modular() || u.lhs.extent() > dimension)
            throw Error("construct_witness: unit pool must be linear over the given dimension");
        IntVector row(dimension, Int(0));
        for (const auto & [v, c] : u.lhs.terms())
            row[v] = c;
        A.append_row(row);
        b.push_back(u.rhs);
    }
    auto lattice = solve_diophantine(A, b);
    if (! lattice)
        throw Error("construct_witness: unit pool is infeasible");

    std::vector<Atom> disequalities;
    for (const auto & c : residual) {
        bool any = false;
        for (const auto & l : c.literals)
            if (! l.positive) {
                if (l.atom.is_modular())
                    throw Error("construct_witness: negated modular literal");
                disequalities.push_back(l.atom);
                any = true;
            }
        if (! any)
            throw Error("construct_witness: residual clause without a negative literal");
    }
    auto point = witness_on_lattice(*lattice, disequalities);
    if (! point)
        throw Error("construct_witness: a residual literal is implied by the unit pool");
    return *point;
}

namespace {

struct WorkClause {
    std::vector<Literal> literals;
    bool active = true;

    bool single_positive() const { return literals.size() == 1 && literals.front().positive; }
};

} // namespace

HornResult horn_solve(const Formula & input)
{
    if (! input.is_standard() || ! is_horn(input))
        throw InvalidArgument("horn_solve: formula is not a standard Horn formula");
    const Formula phi = introduce_quantifiers(input);
    const std::size_t n = phi.arity();

    HornResult result;
    std::vector<Atom> units;
    std::vector<WorkClause> work;
    for (const auto & c : phi.clauses()) {
        if (c.empty())
            return result;
        WorkClause w{c.literals, true};
        if (w.single_positive()) {
            units.push_back(w.literals.front().atom);
            w.active = false;
        }
        work.push_back(std::move(w));
    }

    auto oracle = std::make_unique<ImplicationOracle>(units, n);
    if (! oracle->feasible())
        return result;

    for (;;) {
        ++result.sweeps;

        // Gather the distinct negative atoms still present, then query them
        // against the current unit pool.
        std::vector<const Atom *> queries;
        {
            std::map<Atom, std::size_t> seen;
            for (const auto & w : work)
                if (w.active)
                    for (const auto & l : w.literals)
                        if (! l.positive && seen.emplace(l.atom, queries.size()).second)
                            queries.push_back(&l.atom);
        }
        std::vector<char> implied(queries.size(), 0);
        const ImplicationOracle & snapshot = *oracle;
#pragma omp parallel for schedule(dynamic) if (queries.size() > 16)
        for (std::size_t q = 0; q < queries.size(); ++q)
            implied[q] = snapshot.implies(*queries[q]) ? 1 : 0;
        std::map<Atom, bool> memo;
        for (std::size_t q = 0; q < queries.size(); ++q)
            memo.emplace(*queries[q], implied[q] != 0);

        bool deleted = false;
        std::vector<Atom> new_units;
        for (auto & w : work) {
            if (! w.active)
                continue;
            auto before = w.literals.size();
            std::erase_if(w.literals, [&](const Literal & l) { return ! l.positive && memo.at(l.atom); });
            if (w.literals.size() == before)
                continue;
            deleted = true;
            if (w.literals.empty())
                return result;
            if (w.single_positive()) {
                new_units.push_back(w.literals.front().atom);
                w.active = false;
            }
        }
        if (! new_units.empty()) {
            for (auto & u : new_units) {
                units.push_back(std::move(u));
                oracle = std::make_unique<ImplicationOracle>(units, n);
                if (! oracle->feasible())
                    return result;
            }
        }
        if (! deleted)
            break;
    }

    std::vector<Clause> residual;
    for (const auto & w : work)
        if (w.active)
            residual.push_back(Clause{w.literals});
    IntVector x = construct_witness(units, residual, n);
    x.resize(input.arity());
    result.satisfiable = true;
    result.assignment = std::move(x);
    return result;
}

CspOutcome solve_csp_instance(const ConstraintLanguage & language, const std::vector<Constraint> & constraints)
{
    CspOutcome out;
    out.instance = standardize(instantiate(language, constraints));
    out.variables = out.instance.variables();
    if (! is_horn(out.instance)) {
        out.kind = CspOutcome::Kind::NotHorn;
        return out;
    }
    HornResult r = horn_solve(out.instance);
    if (r.satisfiable) {
        out.kind = CspOutcome::Kind::Sat;
        out.assignment = std::move(r.assignment);
    }
    else
        out.kind = CspOutcome::Kind::Unsat;
    return out;
}

} // namespace zhorn
