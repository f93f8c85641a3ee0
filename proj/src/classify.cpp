#include <zhorn/classify.hpp>
#include <zhorn/horn.hpp>
#include <zhorn/oracle.hpp>

#include <algorithm>
#include <set>
#include <sstream>

#include <omp.h>

namespace zhorn {

namespace {

std::string tuple_string(const IntVector & t)
{
    std::string s = "(";
    for (std::size_t i = 0; i < t.size(); ++i)
        s += (i ? "," : "") + t[i].get_str();
    return s + ")";
}

bool quotient_member(const Formula & def, const Int & d, const IntVector & residues, const SatOptions & options)
{
    std::vector<AffineImage> images;
    for (const auto & a : residues)
        images.push_back(AffineImage{LinearForm::variable(0, d), a});
    return formula_sat(substitute(def, {"q"}, images), options).has_value();
}

} // namespace

std::vector<IntVector> quotient_relation(const Formula & definition, const Int & d, const SatOptions & options)
{
    std::vector<IntVector> out;
    for (auto & t : enumerate_modular(definition.arity(), d))
        if (quotient_member(definition, d, t, options))
            out.push_back(std::move(t));
    return out;
}

std::vector<IntVector> quotient_relation_parallel(const Formula & definition, const Int & d,
                                                  const SatOptions & options)
{
    auto tuples = enumerate_modular(definition.arity(), d);
    std::vector<char> member(tuples.size(), 0);
    std::string error;
#pragma omp parallel for schedule(dynamic, 8)
    for (std::size_t i = 0; i < tuples.size(); ++i) {
        try {
            member[i] = quotient_member(definition, d, tuples[i], options) ? 1 : 0;
        }
        catch (const std::exception & e) {
#pragma omp critical
            error = e.what();
        }
    }
    if (! error.empty())
        throw Error(error);
    std::vector<IntVector> out;
    for (std::size_t i = 0; i < tuples.size(); ++i)
        if (member[i])
            out.push_back(std::move(tuples[i]));
    return out;
}

QuotientStructure quotient(const ConstraintLanguage & language, const Int & d, const SatOptions & options,
                           bool parallel)
{
    if (d < 1)
        throw InvalidArgument("quotient: modulus must be positive");
    QuotientStructure q;
    q.modulus = d;
    auto add = [&](const RelationDef & r) {
        q.relations[r.name] = parallel ? quotient_relation_parallel(r.definition, d, options)
                                       : quotient_relation(r.definition, d, options);
    };
    add(ConstraintLanguage::plus());
    for (const auto & r : language.relations())
        add(r);
    return q;
}

namespace {

IntVector maltsev(const IntVector & a, const IntVector & b, const IntVector & c, const Int & d)
{
    IntVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = floor_mod(a[i] - b[i] + c[i], d);
    return out;
}

// First violating (b, c) for a fixed a, in lexicographic order.
std::optional<MaltsevResult> violation_for(const std::vector<IntVector> & rel, const std::set<IntVector> & members,
                                           const IntVector & a, const Int & d)
{
    for (const auto & b : rel)
        for (const auto & c : rel) {
            IntVector img = maltsev(a, b, c, d);
            if (! members.contains(img))
                return MaltsevResult{false, {a, b, c}, std::move(img)};
        }
    return std::nullopt;
}

} // namespace

MaltsevResult maltsev_coset_test(const std::vector<IntVector> & relation, const Int & d)
{
    std::set<IntVector> members(relation.begin(), relation.end());
    for (const auto & a : relation)
        if (auto v = violation_for(relation, members, a, d))
            return *v;
    return {};
}

MaltsevResult maltsev_coset_test_parallel(const std::vector<IntVector> & relation, const Int & d)
{
    std::set<IntVector> members(relation.begin(), relation.end());
    std::vector<std::optional<MaltsevResult>> found(relation.size());
    const long n = static_cast<long>(relation.size());
    long best = n;
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) {
        long cur;
#pragma omp atomic read
        cur = best;
        if (i > cur)
            continue;
        found[static_cast<std::size_t>(i)] = violation_for(relation, members, relation[static_cast<std::size_t>(i)], d);
        if (found[static_cast<std::size_t>(i)]) {
#pragma omp critical
            best = std::min(best, i);
        }
    }
    for (auto & f : found)
        if (f)
            return *f;
    return {};
}

MaltsevResult maltsev_coset_test(const QuotientStructure & q, const std::string & relation)
{
    auto it = q.relations.find(relation);
    if (it == q.relations.end())
        throw InvalidArgument("maltsev_coset_test: unknown relation '" + relation + "'");
    if (it->second.empty())
        throw InvalidArgument("maltsev_coset_test: relation '" + relation + "' is empty");
    return maltsev_coset_test(it->second, q.modulus);
}

std::string to_string(NonHornReason reason)
{
    switch (reason) {
    case NonHornReason::None: return "none";
    case NonHornReason::FiniteNonSingleton: return "FINITE-NON-SINGLETON";
    case NonHornReason::MultiCoset: return "MULTI-COSET";
    }
    return "?";
}

UnaryHornResult unary_horn_test(const EventuallyPeriodicSet & set, const std::string & variable)
{
    UnaryHornResult out;
    const std::vector<std::string> vars{variable};
    const LinearForm x = LinearForm::variable(0);
    if (set.is_finite()) {
        if (set.added().size() >= 2) {
            out.reason = NonHornReason::FiniteNonSingleton;
            return out;
        }
        out.horn = true;
        out.formula = set.added().empty()
                          ? Formula::falsity(vars)
                          : Formula(vars, {Clause{{Literal{Atom::linear(x, *set.added().begin()), true}}}});
        return out;
    }
    auto residues = set.residues();
    if (residues.size() != 1 || ! set.added().empty()) {
        out.reason = NonHornReason::MultiCoset;
        return out;
    }
    std::vector<Clause> clauses;
    if (set.period() > 1)
        clauses.push_back(Clause{{Literal{Atom::modular(x, residues.front(), set.period()), true}}});
    for (const auto & b : set.removed())
        clauses.push_back(Clause{{Literal{Atom::linear(x, b), false}}});
    out.horn = true;
    out.formula = Formula(vars, std::move(clauses));
    return out;
}

std::string to_string(HornSearchResult::Kind kind)
{
    switch (kind) {
    case HornSearchResult::Kind::Horn: return "HORN";
    case HornSearchResult::Kind::NonHornCertified: return "NON-HORN-CERTIFIED";
    case HornSearchResult::Kind::Unknown: return "UNKNOWN";
    }
    return "?";
}

namespace {

std::string set_string(const EventuallyPeriodicSet & s)
{
    std::ostringstream os;
    os << s;
    return os.str();
}

bool within_bounds(const Atom & a, const HornSearchBounds & bounds)
{
    if (a.modulus > bounds.max_modulus)
        return false;
    for (const auto & t : a.lhs.terms())
        if (abs(t.second) > bounds.max_coefficient)
            return false;
    return true;
}

std::vector<Int> divisors(const Int & d)
{
    std::vector<Int> out;
    for (Int k = 1; k <= d; ++k)
        if (divides(k, d))
            out.push_back(k);
    return out;
}

std::optional<HornSearchResult> slice_certificate(const Formula & phi, const HornSearchBounds & bounds)
{
    const std::size_t k = phi.arity();
    const long W = bounds.slice_window;
    for (std::size_t keep = 0; keep < k; ++keep) {
        std::vector<long> consts(k - 1, -W);
        for (;;) {
            std::vector<AffineImage> images;
            std::size_t j = 0;
            IntVector shown;
            for (std::size_t i = 0; i < k; ++i) {
                if (i == keep)
                    images.push_back(AffineImage::variable(0));
                else {
                    images.push_back(AffineImage::constant_value(consts[j]));
                    shown.emplace_back(consts[j]);
                    ++j;
                }
            }
            Formula slice = substitute(phi, {phi.variables()[keep]}, images);
            auto set = unary_decompose(slice);
            auto u = unary_horn_test(set, phi.variables()[keep]);
            if (! u.horn) {
                HornSearchResult r;
                r.kind = HornSearchResult::Kind::NonHornCertified;
                r.method = "unary slice";
                std::ostringstream os;
                os << "fixing the coordinates other than " << phi.variables()[keep] << " to " << tuple_string(shown)
                   << " leaves " << set_string(set) << ", " << to_string(u.reason)
                   << "; substituting constants into a Horn definition would give a Horn definition of this slice";
                r.certificate = os.str();
                return r;
            }
            // Odometer over the fixed coordinates.
            std::size_t p = consts.size();
            while (p > 0 && consts[p - 1] == W) {
                consts[p - 1] = -W;
                --p;
            }
            if (p == 0)
                break;
            ++consts[p - 1];
        }
    }
    return std::nullopt;
}

std::optional<HornSearchResult> modular_certificate(const Formula & phi, const HornSearchBounds & bounds,
                                                     const SatOptions & options)
{
    Int d = 1;
    for (const auto & a : phi.atoms())
        d = lcm(d, a.modulus);
    if (power(d, phi.arity()) > bounds.max_quotient_tuples)
        return std::nullopt;
    auto rel = quotient_relation_parallel(phi, d, options);
    if (rel.empty())
        return std::nullopt;
    auto m = maltsev_coset_test_parallel(rel, d);
    if (m.pass)
        return std::nullopt;
    HornSearchResult r;
    r.kind = HornSearchResult::Kind::NonHornCertified;
    r.method = "quotient Maltsev test";
    std::ostringstream os;
    os << "quotient modulo " << d.get_str() << " has " << rel.size() << " tuples; a=" << tuple_string(m.witness[0])
       << " b=" << tuple_string(m.witness[1]) << " c=" << tuple_string(m.witness[2])
       << " but a-b+c=" << tuple_string(m.image) << " is missing, so the quotient is not a coset";
    r.certificate = os.str();
    return r;
}

std::optional<HornSearchResult> envelope_search(const Formula & phi, const HornSearchBounds & bounds,
                                                 const SatOptions & options, std::string & note)
{
    const auto & vars = phi.variables();
    std::set<Atom> pool;
    auto add = [&](const Atom & a) {
        auto n = normalize(a);
        if (auto * atom = std::get_if<Atom>(&n); atom && within_bounds(*atom, bounds))
            pool.insert(*atom);
    };
    for (const auto & a : phi.atoms()) {
        add(a);
        if (a.is_modular())
            for (const auto & dd : divisors(a.modulus))
                if (dd > 1)
                    for (Int r = 0; r < dd; ++r)
                        add(Atom::modular(a.lhs, r, dd));
    }
    std::vector<Atom> positives(pool.begin(), pool.end());
    std::vector<Atom> negatives;
    for (const auto & a : positives)
        if (! a.is_modular())
            negatives.push_back(a);

    // Candidate clauses by size; a clause containing an entailed clause is
    // skipped.
    constexpr std::size_t max_candidates = 20000;
    std::vector<Clause> entailed;
    std::size_t tested = 0;
    auto subsumed = [&](const Clause & c) {
        for (const auto & e : entailed)
            if (std::all_of(e.literals.begin(), e.literals.end(), [&](const Literal & l) {
                    return std::find(c.literals.begin(), c.literals.end(), l) != c.literals.end();
                }))
                return true;
        return false;
    };
    auto consider = [&](Clause c) -> bool {
        if (subsumed(c))
            return true;
        if (++tested > max_candidates)
            return false;
        Formula single(vars, {c});
        if (single.is_true())
            return true;
        if (entails(phi, single, options))
            entailed.push_back(std::move(c));
        return true;
    };

    for (int size = 1; size <= bounds.max_literals; ++size) {
        for (int with_positive = 1; with_positive >= 0; --with_positive) {
            const int nneg = size - with_positive;
            if (nneg > static_cast<int>(negatives.size()))
                continue;
            std::vector<std::size_t> idx(static_cast<std::size_t>(nneg));
            for (int i = 0; i < nneg; ++i)
                idx[static_cast<std::size_t>(i)] = static_cast<std::size_t>(i);
            for (;;) {
                Clause base;
                for (auto i : idx)
                    base.literals.push_back({negatives[i], false});
                if (with_positive) {
                    for (const auto & p : positives) {
                        if (std::any_of(base.literals.begin(), base.literals.end(),
                                        [&](const Literal & l) { return l.atom == p; }))
                            continue;
                        Clause c = base;
                        c.literals.push_back({p, true});
                        if (! consider(std::move(c))) {
                            note = "candidate limit reached";
                            return std::nullopt;
                        }
                    }
                }
                else if (nneg > 0 && ! consider(base)) {
                    note = "candidate limit reached";
                    return std::nullopt;
                }
                // next combination
                int p = nneg - 1;
                while (p >= 0 && idx[static_cast<std::size_t>(p)] == negatives.size() - static_cast<std::size_t>(nneg - p))
                    --p;
                if (p < 0)
                    break;
                ++idx[static_cast<std::size_t>(p)];
                for (int q = p + 1; q < nneg; ++q)
                    idx[static_cast<std::size_t>(q)] = idx[static_cast<std::size_t>(q - 1)] + 1;
            }
        }
    }
    Formula envelope(vars, entailed);
    note = std::to_string(tested) + " candidate clauses over " + std::to_string(pool.size()) + " atoms";
    if (! entails(envelope, phi, options))
        return std::nullopt;
    HornSearchResult r;
    r.kind = HornSearchResult::Kind::Horn;
    r.method = "Horn envelope";
    r.horn_formula = reduce_formula(envelope, options);
    r.certificate = "equivalent Horn formula found (" + note + ")";
    return r;
}

} // namespace

HornSearchResult horn_search(const Formula & phi, const HornSearchBounds & bounds, const SatOptions & options)
{
    const Formula std_phi = standardize(phi);
    const Formula reduced = reduce_formula(std_phi, options);
    if (is_horn(reduced)) {
        HornSearchResult r;
        r.kind = HornSearchResult::Kind::Horn;
        r.method = "syntactic";
        r.horn_formula = reduced;
        r.certificate = "reduced definition is Horn";
        return r;
    }
    if (std_phi.arity() == 1) {
        auto set = unary_decompose(std_phi);
        auto u = unary_horn_test(set, std_phi.variables().front());
        HornSearchResult r;
        r.method = "unary decomposition";
        if (u.horn) {
            r.kind = HornSearchResult::Kind::Horn;
            r.horn_formula = u.formula;
            r.certificate = "set is " + set_string(set);
        }
        else {
            r.kind = HornSearchResult::Kind::NonHornCertified;
            r.certificate = "set is " + set_string(set) + ", " + to_string(u.reason);
        }
        return r;
    }
    if (std_phi.is_fully_modular())
        if (auto r = modular_certificate(std_phi, bounds, options))
            return *r;
    if (auto r = slice_certificate(reduced, bounds))
        return *r;
    std::string note;
    if (auto r = envelope_search(reduced, bounds, options, note))
        return *r;
    HornSearchResult r;
    r.kind = HornSearchResult::Kind::Unknown;
    r.method = "bounds exhausted";
    std::ostringstream os;
    os << "no certificate; Horn envelope with coefficients <= " << bounds.max_coefficient << ", moduli <= "
       << bounds.max_modulus << ", <= " << bounds.max_literals << " literals per clause is not equivalent (" << note
       << ")";
    r.certificate = os.str();
    return r;
}

std::string to_string(VerdictKind kind)
{
    switch (kind) {
    case VerdictKind::TrivialP: return "TRIVIAL-P";
    case VerdictKind::HornP: return "HORN-P";
    case VerdictKind::NpComplete: return "NP-COMPLETE";
    case VerdictKind::Unknown: return "UNKNOWN";
    }
    return "?";
}

Verdict classify(const ConstraintLanguage & language, const ClassifyOptions & options)
{
    Verdict v;
    v.core = core_reduce(language, options.endomorphism_bound, options.sat);
    if (v.core.kind == CoreResult::Kind::OneElement) {
        v.kind = VerdictKind::TrivialP;
        v.justification = "0 is an endomorphism, so the structure is homomorphically equivalent to its "
                          "one-element substructure on {0}; every instance is satisfied by the all-zero assignment";
        return v;
    }

    std::vector<const RelationDef *> rels;
    for (const auto & r : v.core.language.relations())
        rels.push_back(&r);
    std::sort(rels.begin(), rels.end(), [](auto * a, auto * b) { return a->name < b->name; });
    v.relations.resize(rels.size());
    std::string error;
    const int threads = options.jobs > 0 ? options.jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (std::size_t i = 0; i < rels.size(); ++i) {
        try {
            v.relations[i] = {rels[i]->name, rels[i]->definition,
                              horn_search(rels[i]->definition, options.horn, options.sat)};
        }
        catch (const std::exception & e) {
#pragma omp critical
            error = e.what();
        }
    }
    if (! error.empty())
        throw Error(error);

    const std::string core_note = v.core.steps.empty()
                                      ? "no endomorphism with |lambda| <= " + v.core.bound.get_str() +
                                            " fails to be a self-embedding"
                                      : "after dividing out " + std::to_string(v.core.steps.size()) +
                                            " non-embedding endomorphism(s)";
    bool all_horn = true, certified = false;
    for (const auto & r : v.relations) {
        all_horn = all_horn && r.result.kind == HornSearchResult::Kind::Horn;
        certified = certified || r.result.kind == HornSearchResult::Kind::NonHornCertified;
    }
    if (certified) {
        v.kind = VerdictKind::NpComplete;
        v.justification = "a core containing + (" + core_note +
                          ") with a relation that is not Horn-definable has an NP-hard CSP; membership in NP "
                          "holds for every reduct of (Z;+,1) with finitely many relations";
    }
    else if (all_horn) {
        v.kind = VerdictKind::HornP;
        v.justification = "every relation of the core has a quantifier-free Horn definition; the CSP is solved "
                          "in polynomial time by positive unit resolution with integer implication tests";
    }
    else {
        v.kind = VerdictKind::Unknown;
        v.justification = "some core relation is neither shown Horn nor certified non-Horn within the bounds";
    }
    return v;
}

std::string format_report(const Verdict & v)
{
    std::ostringstream os;
    os << "verdict: " << to_string(v.kind) << "\n";
    if (v.core.kind == CoreResult::Kind::OneElement)
        os << "core: one-element\n";
    else {
        os << "core: reduced\n";
        os << "core.endomorphism_bound: " << v.core.bound.get_str() << "\n";
        os << "core.steps:";
        for (const auto & s : v.core.steps)
            os << " " << s.get_str();
        os << "\n";
        os << "core.scale: " << v.core.scale.get_str() << "\n";
    }
    for (const auto & r : v.relations) {
        os << "relation." << r.name << ".core_definition: " << to_string(r.core_definition) << "\n";
        os << "relation." << r.name << ".outcome: " << to_string(r.result.kind) << "\n";
        os << "relation." << r.name << ".method: " << r.result.method << "\n";
        if (r.result.kind == HornSearchResult::Kind::Horn)
            os << "relation." << r.name << ".horn_definition: " << to_string(r.result.horn_formula) << "\n";
        os << "relation." << r.name << ".certificate: " << r.result.certificate << "\n";
    }
    os << "justification: " << v.justification << "\n";
    return os.str();
}

} // namespace zhorn
