#include <zhorn/presburger.hpp>

#include <algorithm>
#include <cmath>

namespace zhorn {

ExpansionCapExceeded::ExpansionCapExceeded(std::size_t cap, double required) :
    Error("DNF expansion needs " + std::to_string(static_cast<long double>(required)) +
          " conjunctive systems, cap is " + std::to_string(cap)),
    cap_(cap)
{
}

namespace {

IntVector dense_row(const LinearForm & form, std::size_t width)
{
    IntVector row(width, Int(0));
    for (const auto & [v, c] : form.terms())
        row[v] = c;
    return row;
}

std::size_t dimension_of(std::span<const Atom> atoms)
{
    std::size_t n = 0;
    for (const auto & a : atoms)
        n = std::max(n, a.lhs.extent());
    return n;
}

} // namespace

std::optional<IntVector> witness_on_lattice(const AffineLattice & lattice, std::span<const Atom> disequalities)
{
    const std::size_t m = lattice.basis.size();
    std::vector<IntVector> coeffs;
    IntVector constants;
    for (const auto & d : disequalities) {
        IntVector c(m, Int(0));
        bool nonzero = false;
        for (std::size_t j = 0; j < m; ++j) {
            for (const auto & [v, a] : d.lhs.terms())
                c[j] += a * lattice.basis[j][v];
            nonzero = nonzero || c[j] != 0;
        }
        Int e = d.rhs - d.lhs.evaluate(lattice.particular);
        if (! nonzero) {
            if (e == 0)
                return std::nullopt;
            continue;
        }
        coeffs.push_back(std::move(c));
        constants.push_back(std::move(e));
    }

    IntVector t(m, Int(0));
    if (! coeffs.empty()) {
        Int S = 0;
        for (std::size_t k = 0; k < coeffs.size(); ++k) {
            Int sum = abs(constants[k]);
            for (const auto & c : coeffs[k])
                sum += abs(c);
            S = std::max(S, sum);
        }
        S += 1;
        Int p = S;
        for (std::size_t j = 0; j < m; ++j) {
            t[j] = p;
            p *= S;
        }
    }
    return lattice.point(t);
}

std::optional<IntVector> conjunction_sat(const ConjunctiveSystem & system)
{
    const std::size_t n = system.variables.size();
    const std::size_t width = n + system.congruences.size();
    IntMatrix A(0, width);
    IntVector b;
    for (const auto & e : system.equalities) {
        if (e.is_modular())
            throw InvalidArgument("conjunction_sat: modular atom among equalities");
        A.append_row(dense_row(e.lhs, width));
        b.push_back(e.rhs);
    }
    for (std::size_t k = 0; k < system.congruences.size(); ++k) {
        const auto & c = system.congruences[k];
        if (! c.is_modular())
            throw InvalidArgument("conjunction_sat: linear atom among congruences");
        IntVector row = dense_row(c.lhs, width);
        row[n + k] = -c.modulus;
        A.append_row(row);
        b.push_back(c.rhs);
    }
    for (const auto & d : system.disequalities)
        if (d.is_modular())
            throw InvalidArgument("conjunction_sat: modular disequality (standardize first)");

    auto lattice = solve_diophantine(A, b);
    if (! lattice)
        return std::nullopt;
    auto point = witness_on_lattice(*lattice, system.disequalities);
    if (! point)
        return std::nullopt;
    point->resize(n);
    return point;
}

ImplicationOracle::ImplicationOracle(std::vector<Atom> system, std::size_t dimension) :
    system_(std::move(system)),
    dimension_(std::max(dimension, dimension_of(system_)))
{
    IntMatrix A(0, dimension_);
    IntVector b;
    augmented_ = IntMatrix(0, dimension_ + 1);
    for (const auto & e : system_) {
        if (e.is_modular())
            throw InvalidArgument("implication: modular atom in system");
        IntVector row = dense_row(e.lhs, dimension_);
        A.append_row(row);
        b.push_back(e.rhs);
        row.push_back(e.rhs);
        augmented_.append_row(row);
    }
    feasible_ = solve_diophantine(A, b).has_value();
    rank_ = rank_rational(augmented_);
}

bool ImplicationOracle::implies(const Atom & psi) const
{
    if (psi.is_modular())
        throw InvalidArgument("implication: modular consequent");
    if (! feasible_)
        return true;
    if (psi.lhs.extent() > dimension_) {
        // psi mentions a variable the system leaves free.
        ImplicationOracle wider(system_, psi.lhs.extent());
        return wider.implies(psi);
    }
    IntMatrix extended = augmented_;
    IntVector row = dense_row(psi.lhs, dimension_);
    row.push_back(psi.rhs);
    extended.append_row(row);
    return rank_rational(extended) == rank_;
}

bool implies(std::span<const Atom> phi, const Atom & psi)
{
    ImplicationOracle oracle(std::vector<Atom>(phi.begin(), phi.end()), psi.lhs.extent());
    return oracle.implies(psi);
}

namespace {

bool conflicting(const Literal & a, const Literal & b)
{
    if (a.atom.lhs != b.atom.lhs || a.atom.modulus != b.atom.modulus)
        return false;
    if (a.atom.rhs == b.atom.rhs)
        return a.positive != b.positive;
    return a.positive && b.positive;
}

class Distributor {
public:
    Distributor(const Formula & phi, const SatOptions & options) :
        phi_(phi)
    {
        double product = 1;
        for (const auto & c : phi_.clauses())
            product *= static_cast<double>(c.size());
        if (product > static_cast<double>(options.dnf_cap))
            throw ExpansionCapExceeded(options.dnf_cap, product);
        order_.resize(phi_.clauses().size());
        for (std::size_t i = 0; i < order_.size(); ++i)
            order_[i] = i;
        // Small clauses first keeps the search tree narrow near the root.
        std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
            return phi_.clauses()[a].size() < phi_.clauses()[b].size();
        });
    }

    std::optional<IntVector> run()
    {
        if (phi_.is_false())
            return std::nullopt;
        chosen_.clear();
        return search(0);
    }

private:
    std::optional<IntVector> search(std::size_t depth)
    {
        if (depth == order_.size())
            return leaf();
        const Clause & c = phi_.clauses()[order_[depth]];
        for (const auto & lit : c.literals) {
            bool clash = false;
            for (const Literal * other : chosen_)
                if (conflicting(lit, *other)) {
                    clash = true;
                    break;
                }
            if (clash)
                continue;
            bool duplicate = std::any_of(chosen_.begin(), chosen_.end(),
                                         [&](const Literal * o) { return *o == lit; });
            if (! duplicate)
                chosen_.push_back(&lit);
            auto r = search(depth + 1);
            if (! duplicate)
                chosen_.pop_back();
            if (r)
                return r;
        }
        return std::nullopt;
    }

    std::optional<IntVector> leaf()
    {
        ConjunctiveSystem sys;
        sys.variables = phi_.variables();
        for (const Literal * l : chosen_) {
            if (l->atom.is_modular()) {
                if (! l->positive)
                    throw InvalidArgument("formula_sat: negated modular atom (standardize first)");
                sys.congruences.push_back(l->atom);
            }
            else if (l->positive)
                sys.equalities.push_back(l->atom);
            else
                sys.disequalities.push_back(l->atom);
        }
        return conjunction_sat(sys);
    }

    const Formula & phi_;
    std::vector<std::size_t> order_;
    std::vector<const Literal *> chosen_;
};

} // namespace

std::optional<IntVector> formula_sat(const Formula & phi, const SatOptions & options)
{
    if (! phi.is_standard())
        return formula_sat(standardize(phi), options);
    return Distributor(phi, options).run();
}

namespace {

// phi |= clause, both over the same variable list.
bool entails_clause(const Formula & phi, const Clause & clause, const SatOptions & options)
{
    std::vector<Clause> clauses = phi.clauses();
    for (const auto & l : clause.literals)
        clauses.push_back(negate_literal(l));
    return ! formula_sat(Formula(phi.variables(), std::move(clauses)), options).has_value();
}

std::vector<std::string> union_of(const Formula & a, const Formula & b)
{
    std::vector<std::string> vars = a.variables();
    for (const auto & v : b.variables())
        if (std::find(vars.begin(), vars.end(), v) == vars.end())
            vars.push_back(v);
    return vars;
}

} // namespace

bool entails(const Formula & phi, const Formula & psi, const SatOptions & options)
{
    auto vars = union_of(phi, psi);
    Formula a = standardize(rebase(phi, vars));
    Formula b = standardize(rebase(psi, vars));
    for (const auto & c : b.clauses())
        if (! entails_clause(a, c, options))
            return false;
    return true;
}

bool equivalent(const Formula & phi, const Formula & psi, const SatOptions & options)
{
    return entails(phi, psi, options) && entails(psi, phi, options);
}

Formula reduce_formula(const Formula & phi, const SatOptions & options)
{
    Formula cur = standardize(phi);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < cur.clauses().size();) {
            std::vector<Clause> rest = cur.clauses();
            Clause removed = rest[i];
            rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
            Formula candidate(cur.variables(), rest);
            if (entails_clause(candidate, removed, options)) {
                cur = std::move(candidate);
                changed = true;
            }
            else
                ++i;
        }
        for (std::size_t i = 0; i < cur.clauses().size(); ++i) {
            for (std::size_t j = 0; j < cur.clauses()[i].size();) {
                Clause shorter = cur.clauses()[i];
                shorter.literals.erase(shorter.literals.begin() + static_cast<std::ptrdiff_t>(j));
                if (entails_clause(cur, shorter, options)) {
                    std::vector<Clause> clauses = cur.clauses();
                    clauses[i] = std::move(shorter);
                    Formula next(cur.variables(), std::move(clauses));
                    cur = std::move(next);
                    changed = true;
                    if (i >= cur.clauses().size() || cur.is_false())
                        break;
                }
                else
                    ++j;
            }
            if (cur.is_false())
                break;
        }
    }
    return cur;
}

} // namespace zhorn
