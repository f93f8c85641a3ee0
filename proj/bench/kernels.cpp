// Serial reference kernels against their OpenMP counterparts. Every pair is
// run on the same input; the parallel result is checked against the serial
// one once per benchmark before timing.

#include <zhorn/classify.hpp>
#include <zhorn/oracle.hpp>
#include <zhorn/parser.hpp>

#include <benchmark/benchmark.h>

#include <stdexcept>

using namespace zhorn;

namespace {

const Formula & box_formula()
{
    // No solution in the box, so the whole space is searched.
    static const Formula phi = parse_formula("x + 2*y - 3*z = 1 mod 7 & !(x = y) & x + y + z + w = 100");
    return phi;
}

const Formula & equiv_left()
{
    static const Formula phi = parse_formula("(x = 0 mod 2 | y = 1 mod 3) & !(x + y = 4)");
    return phi;
}

const Formula & equiv_right()
{
    static const Formula phi = parse_formula("(x = 0 mod 2 | y = 1 mod 3) & !(x + y = 4) & (!(x = 9) | !(y = -9))");
    return phi;
}

const Formula & quotient_formula()
{
    static const Formula phi =
        parse_formula("(x1 = 1 mod 4 | x2 = 0) & (x3 = 2 mod 5 | !(x1 + x2 = x3)) & x4 = 1 mod 3");
    return phi;
}

std::vector<IntVector> coset_relation(const Int & d, std::size_t k)
{
    // All tuples with coordinate sum 0 mod d: a subgroup, so the test
    // visits every triple.
    std::vector<IntVector> out;
    for (const auto & t : enumerate_modular(k, d)) {
        Int s = 0;
        for (const auto & v : t)
            s += v;
        if (floor_mod(s, d) == 0)
            out.push_back(t);
    }
    return out;
}

void require(bool ok, const char * what)
{
    if (! ok)
        throw std::logic_error(std::string("serial and parallel kernels disagree: ") + what);
}

void BM_box_sat(benchmark::State & state)
{
    Box box{state.range(0)};
    const bool parallel = state.range(1) != 0;
    require(box_sat(box_formula(), box) == box_sat_parallel(box_formula(), box), "box_sat");
    for (auto _ : state)
        benchmark::DoNotOptimize(parallel ? box_sat_parallel(box_formula(), box) : box_sat(box_formula(), box));
}

void BM_box_equiv(benchmark::State & state)
{
    Box box{state.range(0)};
    const bool parallel = state.range(1) != 0;
    require(box_equiv(equiv_left(), equiv_right(), box) == box_equiv_parallel(equiv_left(), equiv_right(), box),
            "box_equiv");
    for (auto _ : state)
        benchmark::DoNotOptimize(parallel ? box_equiv_parallel(equiv_left(), equiv_right(), box)
                                          : box_equiv(equiv_left(), equiv_right(), box));
}

void BM_quotient_relation(benchmark::State & state)
{
    Int d = state.range(0);
    const bool parallel = state.range(1) != 0;
    require(quotient_relation(quotient_formula(), d) == quotient_relation_parallel(quotient_formula(), d),
            "quotient_relation");
    for (auto _ : state)
        benchmark::DoNotOptimize(parallel ? quotient_relation_parallel(quotient_formula(), d)
                                          : quotient_relation(quotient_formula(), d));
}

void BM_maltsev(benchmark::State & state)
{
    Int d = state.range(0);
    const bool parallel = state.range(1) != 0;
    auto relation = coset_relation(d, 3);
    require(maltsev_coset_test(relation, d).pass == maltsev_coset_test_parallel(relation, d).pass, "maltsev");
    for (auto _ : state)
        benchmark::DoNotOptimize(parallel ? maltsev_coset_test_parallel(relation, d).pass
                                          : maltsev_coset_test(relation, d).pass);
}

} // namespace

BENCHMARK(BM_box_sat)->ArgNames({"box", "parallel"})->ArgsProduct({{8, 16}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_box_equiv)->ArgNames({"box", "parallel"})->ArgsProduct({{40, 120}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_quotient_relation)
    ->ArgNames({"d", "parallel"})
    ->ArgsProduct({{4, 6}, {0, 1}})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_maltsev)->ArgNames({"d", "parallel"})->ArgsProduct({{5, 7}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
