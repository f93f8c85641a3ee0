#include <zhorn/oracle.hpp>

#include <algorithm>
#include <atomic>
#include <limits>

namespace zhorn {

namespace {

// Formula compiled for repeated evaluation. T is std::int64_t on the fast
// path (sums accumulate in __int128) or Int otherwise.
template <typename T>
struct Compiled {
    struct Lit {
        std::vector<std::pair<std::size_t, T>> terms;
        T rhs;
        T modulus;
        bool positive;
    };
    using ClauseLits = std::vector<Lit>;

    std::size_t n = 0;
    bool always_false = false;
    std::vector<std::vector<ClauseLits>> due;  // due[k]: clauses whose last variable is k
    std::vector<ClauseLits> all;
};

template <typename T>
T convert(const Int & v)
{
    if constexpr (std::is_same_v<T, Int>)
        return v;
    else
        return static_cast<T>(v.get_si());
}

template <typename T>
Compiled<T> compile(const Formula & phi)
{
    Compiled<T> c;
    c.n = phi.arity();
    c.due.resize(c.n);
    for (const auto & clause : phi.clauses()) {
        if (clause.empty()) {
            c.always_false = true;
            continue;
        }
        typename Compiled<T>::ClauseLits lits;
        std::size_t last = 0;
        for (const auto & l : clause.literals) {
            typename Compiled<T>::Lit cl;
            for (const auto & [v, a] : l.atom.lhs.terms()) {
                cl.terms.emplace_back(v, convert<T>(a));
                last = std::max(last, v);
            }
            cl.rhs = convert<T>(l.atom.rhs);
            cl.modulus = convert<T>(l.atom.modulus);
            cl.positive = l.positive;
            lits.push_back(std::move(cl));
        }
        c.all.push_back(lits);
        if (c.n > 0)
            c.due[last].push_back(std::move(lits));
    }
    return c;
}

bool lit_holds(const Compiled<std::int64_t>::Lit & l, const std::int64_t * x)
{
    __int128 sum = 0;
    for (const auto & [v, a] : l.terms)
        sum += static_cast<__int128>(a) * x[v];
    __int128 diff = sum - l.rhs;
    bool sat = l.modulus == 0 ? diff == 0 : diff % l.modulus == 0;
    return sat == l.positive;
}

bool lit_holds(const Compiled<Int>::Lit & l, const Int * x)
{
    Int sum = 0;
    for (const auto & [v, a] : l.terms)
        sum += a * x[v];
    Int diff = sum - l.rhs;
    bool sat = l.modulus == 0 ? diff == 0 : divides(l.modulus, diff);
    return sat == l.positive;
}

template <typename T>
bool clause_holds(const typename Compiled<T>::ClauseLits & lits, const T * x)
{
    for (const auto & l : lits)
        if (lit_holds(l, x))
            return true;
    return false;
}

bool fits_fast_path(const Formula & phi, const Int & bound)
{
    const Int limit = Int(1) << 40;
    if (bound > (Int(1) << 20))
        return false;
    for (const auto & a : phi.atoms()) {
        if (abs(a.rhs) > limit || a.modulus > limit)
            return false;
        for (const auto & t : a.lhs.terms())
            if (abs(t.second) > limit)
                return false;
    }
    return true;
}

template <typename T>
class Search {
public:
    Search(const Compiled<T> & c, const Int & bound, std::uint64_t cap, std::atomic<std::uint64_t> & visited) :
        c_(c),
        lo_(convert<T>(-bound)),
        hi_(convert<T>(bound)),
        cap_(cap),
        visited_(visited),
        x_(c.n, T(0))
    {
    }

    // Depth-first from variable `depth`, variables before it already set.
    // Returns true when a full solution is found (left in x_). When counting,
    // explores everything and adds solutions to count_.
    bool run(std::size_t depth, bool counting)
    {
        if (depth == c_.n) {
            ++count_;
            return ! counting;
        }
        for (T v = lo_; v <= hi_; ++v) {
            if (visited_.fetch_add(1, std::memory_order_relaxed) >= cap_)
                throw OracleCapExceeded("oracle: visited-node cap of " + std::to_string(cap_) + " exceeded");
            x_[depth] = v;
            bool ok = true;
            for (const auto & lits : c_.due[depth])
                if (! clause_holds<T>(lits, x_.data())) {
                    ok = false;
                    break;
                }
            if (ok && run(depth + 1, counting))
                return true;
        }
        return false;
    }

    IntVector solution() const
    {
        IntVector out;
        for (const auto & v : x_) {
            if constexpr (std::is_same_v<T, Int>)
                out.push_back(v);
            else
                out.emplace_back(static_cast<long>(v));
        }
        return out;
    }

    void fix(std::size_t i, const T & v) { x_[i] = v; }
    bool due_holds(std::size_t depth) const
    {
        for (const auto & lits : c_.due[depth])
            if (! clause_holds<T>(lits, x_.data()))
                return false;
        return true;
    }

    std::uint64_t count() const { return count_; }

private:
    const Compiled<T> & c_;
    T lo_, hi_;
    std::uint64_t cap_;
    std::atomic<std::uint64_t> & visited_;
    std::vector<T> x_;
    std::uint64_t count_ = 0;
};

void check_box(const Box & box)
{
    if (box.bound < 0)
        throw InvalidArgument("oracle: box bound must be non-negative");
}

template <typename T>
std::optional<IntVector> sat_serial(const Formula & phi, const Box & box)
{
    auto c = compile<T>(phi);
    if (c.always_false)
        return std::nullopt;
    std::atomic<std::uint64_t> visited{0};
    Search<T> s(c, box.bound, box.cap, visited);
    if (s.run(0, false))
        return s.solution();
    return std::nullopt;
}

template <typename T>
std::optional<IntVector> sat_parallel(const Formula & phi, const Box & box)
{
    auto c = compile<T>(phi);
    if (c.always_false)
        return std::nullopt;
    if (c.n == 0)
        return IntVector{};
    const long width = 2 * box.bound.get_si() + 1;
    std::vector<std::optional<IntVector>> found(static_cast<std::size_t>(width));
    std::atomic<long> best{width};
    std::atomic<std::uint64_t> visited{0};
    bool capped = false;
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < width; ++i) {
        if (i > best.load() || capped)
            continue;
        try {
            Search<T> s(c, box.bound, box.cap, visited);
            s.fix(0, convert<T>(Int(i) - box.bound));
            if (s.due_holds(0) && s.run(1, false)) {
                found[static_cast<std::size_t>(i)] = s.solution();
                long cur = best.load();
                while (i < cur && ! best.compare_exchange_weak(cur, i)) {
                }
            }
        }
        catch (const OracleCapExceeded &) {
#pragma omp critical
            capped = true;
        }
    }
    for (auto & f : found)
        if (f)
            return f;
    if (capped)
        throw OracleCapExceeded("oracle: visited-node cap of " + std::to_string(box.cap) + " exceeded");
    return std::nullopt;
}

template <typename T>
std::uint64_t count_points(const Formula & phi, const Box & box)
{
    auto c = compile<T>(phi);
    if (c.always_false)
        return 0;
    std::atomic<std::uint64_t> visited{0};
    Search<T> s(c, box.bound, box.cap, visited);
    s.run(0, true);
    return s.count();
}

std::uint64_t point_count(std::size_t n, const Box & box)
{
    Int total = power(2 * box.bound + 1, n);
    if (total > box.cap)
        throw OracleCapExceeded("oracle: box has " + total.get_str() + " points, cap is " + std::to_string(box.cap));
    return total.get_ui();
}

template <typename T>
bool equiv_impl(const Formula & a, const Formula & b, const Box & box, bool parallel)
{
    auto ca = compile<T>(a), cb = compile<T>(b);
    const std::size_t n = a.arity();
    const std::uint64_t total = point_count(n, box);
    const std::uint64_t width = 2 * box.bound.get_ui() + 1;
    auto holds = [](const Compiled<T> & c, const std::vector<T> & x) {
        if (c.always_false)
            return false;
        for (const auto & lits : c.all)
            if (! clause_holds<T>(lits, x.data()))
                return false;
        return true;
    };
    std::atomic<bool> differ{false};
    auto check_range = [&](std::uint64_t begin, std::uint64_t end) {
        std::vector<T> x(n);
        for (std::uint64_t idx = begin; idx < end && ! differ.load(std::memory_order_relaxed); ++idx) {
            std::uint64_t r = idx;
            for (std::size_t i = n; i-- > 0;) {
                x[i] = convert<T>(Int(static_cast<unsigned long>(r % width)) - box.bound);
                r /= width;
            }
            if (holds(ca, x) != holds(cb, x))
                differ = true;
        }
    };
    if (! parallel) {
        check_range(0, total);
        return ! differ;
    }
    const std::uint64_t chunk = 4096;
    const std::int64_t chunks = static_cast<std::int64_t>((total + chunk - 1) / chunk);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t k = 0; k < chunks; ++k)
        check_range(static_cast<std::uint64_t>(k) * chunk, std::min(total, static_cast<std::uint64_t>(k + 1) * chunk));
    return ! differ;
}

std::pair<Formula, Formula> common_base(const Formula & phi, const Formula & psi)
{
    std::vector<std::string> vars = phi.variables();
    for (const auto & v : psi.variables())
        if (std::find(vars.begin(), vars.end(), v) == vars.end())
            vars.push_back(v);
    return {rebase(phi, vars), rebase(psi, vars)};
}

} // namespace

std::optional<IntVector> box_sat(const Formula & phi, const Box & box)
{
    check_box(box);
    return fits_fast_path(phi, box.bound) ? sat_serial<std::int64_t>(phi, box) : sat_serial<Int>(phi, box);
}

std::optional<IntVector> box_sat_parallel(const Formula & phi, const Box & box)
{
    check_box(box);
    return fits_fast_path(phi, box.bound) ? sat_parallel<std::int64_t>(phi, box) : sat_parallel<Int>(phi, box);
}

std::uint64_t box_count(const Formula & phi, const Box & box)
{
    check_box(box);
    return fits_fast_path(phi, box.bound) ? count_points<std::int64_t>(phi, box) : count_points<Int>(phi, box);
}

bool box_equiv(const Formula & phi, const Formula & psi, const Box & box)
{
    check_box(box);
    auto [a, b] = common_base(phi, psi);
    bool fast = fits_fast_path(a, box.bound) && fits_fast_path(b, box.bound);
    return fast ? equiv_impl<std::int64_t>(a, b, box, false) : equiv_impl<Int>(a, b, box, false);
}

bool box_equiv_parallel(const Formula & phi, const Formula & psi, const Box & box)
{
    check_box(box);
    auto [a, b] = common_base(phi, psi);
    bool fast = fits_fast_path(a, box.bound) && fits_fast_path(b, box.bound);
    return fast ? equiv_impl<std::int64_t>(a, b, box, true) : equiv_impl<Int>(a, b, box, true);
}

std::vector<IntVector> enumerate_modular(std::size_t k, const Int & d, std::uint64_t cap)
{
    if (d < 1)
        throw InvalidArgument("enumerate_modular: modulus must be positive");
    Int total = power(d, k);
    if (total > cap)
        throw OracleCapExceeded("enumerate_modular: " + total.get_str() + " tuples exceed cap " + std::to_string(cap));
    std::vector<IntVector> out;
    out.reserve(total.get_ui());
    IntVector t(k, Int(0));
    for (;;) {
        out.push_back(t);
        std::size_t i = k;
        while (i > 0) {
            --i;
            if (++t[i] < d)
                break;
            t[i] = 0;
            if (i == 0) {
                i = k + 1;
                break;
            }
        }
        if (k == 0 || i == k + 1)
            break;
    }
    return out;
}

} // namespace zhorn
