#pragma once

#include <zhorn/formula.hpp>

#include <iosfwd>
#include <set>
#include <vector>

namespace zhorn {

/// A subset of Z of the form (R° ∪ R⁺) \ R⁻, where R° is a union of residue
/// classes modulo the period and R⁺, R⁻ are finite. Always canonical: the
/// period is minimal, R⁺ is disjoint from R° and R⁻ lies inside R°.
class EventuallyPeriodicSet {
public:
    /// The empty set.
    EventuallyPeriodicSet();

    /// Residues are taken modulo `period` (which must be >= 1).
    EventuallyPeriodicSet(const Int & period, const std::vector<Int> & residues, const std::set<Int> & added = {},
                          const std::set<Int> & removed = {});

    static EventuallyPeriodicSet empty();
    static EventuallyPeriodicSet integers();
    static EventuallyPeriodicSet point(const Int & value);
    /// residue + modulus Z.
    static EventuallyPeriodicSet progression(const Int & residue, const Int & modulus);

    const Int & period() const { return period_; }
    std::vector<Int> residues() const;
    const std::set<Int> & added() const { return added_; }
    const std::set<Int> & removed() const { return removed_; }

    bool contains(const Int & x) const;
    bool is_finite() const;
    bool is_empty() const;

    EventuallyPeriodicSet complement() const;
    EventuallyPeriodicSet unite(const EventuallyPeriodicSet & other) const;
    EventuallyPeriodicSet intersect(const EventuallyPeriodicSet & other) const;

    friend bool operator==(const EventuallyPeriodicSet &, const EventuallyPeriodicSet &) = default;

private:
    bool in_base(const Int & x) const;
    void canonicalize();
    std::vector<char> lifted(std::size_t period) const;

    template <typename Op>
    EventuallyPeriodicSet combine(const EventuallyPeriodicSet & other, Op op) const;

    Int period_;
    std::vector<char> mask_;  // mask_[r] for r in [0, period)
    std::set<Int> added_;
    std::set<Int> removed_;
};

std::ostream & operator<<(std::ostream & os, const EventuallyPeriodicSet & s);

/// Largest period the set algebra will materialize.
inline constexpr unsigned long max_materialized_period = 1UL << 24;

/// Exact decomposition of a formula in one variable (arity must be 1).
EventuallyPeriodicSet unary_decompose(const Formula & phi);

} // namespace zhorn
