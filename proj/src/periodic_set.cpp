#include <zhorn/periodic_set.hpp>

#include <ostream>

namespace zhorn {

namespace {

std::size_t checked_period(const Int & p)
{
    if (p < 1)
        throw InvalidArgument("EventuallyPeriodicSet: period must be positive");
    if (p > max_materialized_period)
        throw Error("EventuallyPeriodicSet: period " + p.get_str() + " is too large to materialize");
    return p.get_ui();
}

std::size_t residue_index(const Int & x, const Int & period)
{
    return floor_mod(x, period).get_ui();
}

} // namespace

EventuallyPeriodicSet::EventuallyPeriodicSet() :
    period_(1),
    mask_(1, 0)
{
}

EventuallyPeriodicSet::EventuallyPeriodicSet(const Int & period, const std::vector<Int> & residues,
                                             const std::set<Int> & added, const std::set<Int> & removed) :
    period_(period),
    mask_(checked_period(period), 0),
    added_(added),
    removed_(removed)
{
    for (const auto & r : residues)
        mask_[residue_index(r, period_)] = 1;
    for (const auto & a : added)
        if (removed.contains(a))
            throw InvalidArgument("EventuallyPeriodicSet: a point is both added and removed");
    canonicalize();
}

EventuallyPeriodicSet EventuallyPeriodicSet::empty()
{
    return {};
}

EventuallyPeriodicSet EventuallyPeriodicSet::integers()
{
    return EventuallyPeriodicSet(1, {Int(0)});
}

EventuallyPeriodicSet EventuallyPeriodicSet::point(const Int & value)
{
    return EventuallyPeriodicSet(1, {}, {value});
}

EventuallyPeriodicSet EventuallyPeriodicSet::progression(const Int & residue, const Int & modulus)
{
    return EventuallyPeriodicSet(modulus, {residue});
}

std::vector<Int> EventuallyPeriodicSet::residues() const
{
    std::vector<Int> out;
    for (std::size_t r = 0; r < mask_.size(); ++r)
        if (mask_[r])
            out.emplace_back(static_cast<unsigned long>(r));
    return out;
}

bool EventuallyPeriodicSet::in_base(const Int & x) const
{
    return mask_[residue_index(x, period_)] != 0;
}

bool EventuallyPeriodicSet::contains(const Int & x) const
{
    if (added_.contains(x))
        return true;
    if (removed_.contains(x))
        return false;
    return in_base(x);
}

bool EventuallyPeriodicSet::is_finite() const
{
    for (char m : mask_)
        if (m)
            return false;
    return true;
}

bool EventuallyPeriodicSet::is_empty() const
{
    return is_finite() && added_.empty();
}

void EventuallyPeriodicSet::canonicalize()
{
    std::erase_if(added_, [&](const Int & a) { return in_base(a); });
    std::erase_if(removed_, [&](const Int & a) { return ! in_base(a); });

    const std::size_t p = mask_.size();
    for (std::size_t q = 1; q < p; ++q) {
        if (p % q != 0)
            continue;
        bool periodic = true;
        for (std::size_t r = q; r < p && periodic; ++r)
            periodic = mask_[r] == mask_[r % q];
        if (periodic) {
            mask_.resize(q);
            period_ = static_cast<unsigned long>(q);
            return;
        }
    }
}

std::vector<char> EventuallyPeriodicSet::lifted(std::size_t period) const
{
    std::vector<char> out(period);
    for (std::size_t r = 0; r < period; ++r)
        out[r] = mask_[r % mask_.size()];
    return out;
}

template <typename Op>
EventuallyPeriodicSet EventuallyPeriodicSet::combine(const EventuallyPeriodicSet & other, Op op) const
{
    Int L = lcm(period_, other.period_);
    std::size_t l = checked_period(L);
    auto a = lifted(l), b = other.lifted(l);
    EventuallyPeriodicSet out;
    out.period_ = L;
    out.mask_.assign(l, 0);
    for (std::size_t r = 0; r < l; ++r)
        out.mask_[r] = op(a[r] != 0, b[r] != 0) ? 1 : 0;

    std::set<Int> exceptional;
    for (const auto * s : {&added_, &removed_, &other.added_, &other.removed_})
        exceptional.insert(s->begin(), s->end());
    for (const auto & x : exceptional) {
        bool member = op(contains(x), other.contains(x));
        bool base = out.mask_[residue_index(x, L)] != 0;
        if (member && ! base)
            out.added_.insert(x);
        else if (! member && base)
            out.removed_.insert(x);
    }
    out.canonicalize();
    return out;
}

EventuallyPeriodicSet EventuallyPeriodicSet::unite(const EventuallyPeriodicSet & other) const
{
    return combine(other, [](bool a, bool b) { return a || b; });
}

EventuallyPeriodicSet EventuallyPeriodicSet::intersect(const EventuallyPeriodicSet & other) const
{
    return combine(other, [](bool a, bool b) { return a && b; });
}

EventuallyPeriodicSet EventuallyPeriodicSet::complement() const
{
    EventuallyPeriodicSet out = *this;
    for (auto & m : out.mask_)
        m = ! m;
    std::swap(out.added_, out.removed_);
    out.canonicalize();
    return out;
}

std::ostream & operator<<(std::ostream & os, const EventuallyPeriodicSet & s)
{
    auto list = [&](const auto & xs) {
        os << "{";
        bool first = true;
        for (const auto & x : xs) {
            os << (first ? "" : ",") << x.get_str();
            first = false;
        }
        os << "}";
    };
    os << "period " << s.period().get_str() << " residues ";
    list(s.residues());
    os << " added ";
    list(s.added());
    os << " removed ";
    list(s.removed());
    return os;
}

namespace {

EventuallyPeriodicSet atom_set(const Atom & atom)
{
    // Normalized one-variable atoms: a*x = c or a*x = c mod d with a > 0.
    if (atom.lhs.empty()) {
        bool holds = atom.is_modular() ? divides(atom.modulus, atom.rhs) : atom.rhs == 0;
        return holds ? EventuallyPeriodicSet::integers() : EventuallyPeriodicSet::empty();
    }
    const Int a = atom.lhs.terms().front().second;
    if (! atom.is_modular()) {
        if (! divides(a, atom.rhs))
            return EventuallyPeriodicSet::empty();
        return EventuallyPeriodicSet::point(atom.rhs / a);
    }
    const Int & d = atom.modulus;
    Int g = gcd(a, d);
    if (! divides(g, atom.rhs))
        return EventuallyPeriodicSet::empty();
    Int m = d / g;
    auto inv = mod_inverse(a / g, m);
    return EventuallyPeriodicSet::progression(floor_mod((atom.rhs / g) * *inv, m), m);
}

} // namespace

EventuallyPeriodicSet unary_decompose(const Formula & phi)
{
    if (phi.arity() != 1)
        throw InvalidArgument("unary_decompose: formula must have exactly one variable");
    EventuallyPeriodicSet result = EventuallyPeriodicSet::integers();
    for (const auto & c : phi.clauses()) {
        EventuallyPeriodicSet clause_set;
        for (const auto & l : c.literals) {
            auto s = atom_set(l.atom);
            clause_set = clause_set.unite(l.positive ? s : s.complement());
        }
        result = result.intersect(clause_set);
    }
    return result;
}

} // namespace zhorn
