#include "fixtures.hpp"

#include <zhorn/lattice.hpp>

#include <gtest/gtest.h>

using namespace zhorn;
namespace fx = zhorn::fixtures;

namespace {

// Column-style HNF shape: pivot rows strictly increase, pivots positive,
// entries left of a pivot reduced, entries above a pivot zero, columns past
// the rank zero.
void expect_hnf_shape(const HermiteResult & r)
{
    const IntMatrix & H = r.H;
    ASSERT_EQ(r.pivot_rows.size(), r.rank);
    for (std::size_t j = 0; j < r.rank; ++j) {
        const std::size_t p = r.pivot_rows[j];
        if (j > 0) {
            EXPECT_GT(p, r.pivot_rows[j - 1]);
        }
        EXPECT_GT(H(p, j), 0);
        for (std::size_t i = 0; i < p; ++i)
            EXPECT_EQ(H(i, j), 0);
        for (std::size_t c = 0; c < j; ++c) {
            EXPECT_GE(H(p, c), 0);
            EXPECT_LT(H(p, c), H(p, j));
        }
    }
    for (std::size_t j = r.rank; j < H.cols(); ++j)
        for (std::size_t i = 0; i < H.rows(); ++i)
            EXPECT_EQ(H(i, j), 0);
}

// Rank by searching for a nonzero minor, for cross-checking.
std::size_t rank_by_minors(const IntMatrix & M)
{
    const std::size_t m = M.rows(), n = M.cols();
    for (std::size_t k = std::min(m, n); k > 0; --k) {
        std::vector<std::size_t> rows(k), cols(k);
        std::vector<bool> rsel(m, false), csel(n, false);
        std::fill(rsel.begin(), rsel.begin() + static_cast<long>(k), true);
        do {
            std::fill(csel.begin(), csel.end(), false);
            std::fill(csel.begin(), csel.begin() + static_cast<long>(k), true);
            do {
                IntMatrix sub(k, k);
                std::size_t a = 0;
                for (std::size_t i = 0; i < m; ++i) {
                    if (! rsel[i])
                        continue;
                    std::size_t b = 0;
                    for (std::size_t j = 0; j < n; ++j)
                        if (csel[j])
                            sub(a, b++) = M(i, j);
                    ++a;
                }
                if (determinant(sub) != 0)
                    return k;
            } while (std::prev_permutation(csel.begin(), csel.end()));
        } while (std::prev_permutation(rsel.begin(), rsel.end()));
    }
    return 0;
}

} // namespace

TEST(Hermite, Identity)
{
    auto r = hermite_normal_form(IntMatrix::identity(2));
    EXPECT_EQ(r.H, IntMatrix::identity(2));
    EXPECT_EQ(r.U, IntMatrix::identity(2));
}

TEST(Hermite, OneByOne)
{
    auto r = hermite_normal_form(IntMatrix{{2}});
    EXPECT_EQ(r.H, (IntMatrix{{2}}));
    EXPECT_EQ(r.U, (IntMatrix{{1}}));
}

TEST(Hermite, DegenerateShapes)
{
    auto r = hermite_normal_form(IntMatrix(0, 3));
    EXPECT_EQ(r.rank, 0u);
    EXPECT_EQ(r.U, IntMatrix::identity(3));
    auto z = hermite_normal_form(IntMatrix(2, 2));
    EXPECT_EQ(z.rank, 0u);
}

TEST(Hermite, RandomFourByFour)
{
    fx::Rng rng(21);
    for (int i = 0; i < 50; ++i) {
        IntMatrix M = fx::random_matrix(rng, 4, 4, -100, 100);
        auto r = hermite_normal_form(M);
        EXPECT_EQ(r.H, M * r.U);
        EXPECT_EQ(abs(determinant(r.U)), 1);
        expect_hnf_shape(r);
    }
}

TEST(Rank, Examples)
{
    EXPECT_EQ(rank_rational(IntMatrix(3, 2)), 0u);
    EXPECT_EQ(rank_rational(IntMatrix::identity(5)), 5u);
    EXPECT_EQ(rank_rational(IntMatrix{{1, 2}, {2, 4}}), 1u);
}

TEST(Rank, MatchesMinors)
{
    fx::Rng rng(22);
    for (int i = 0; i < 200; ++i) {
        auto rows = static_cast<std::size_t>(fx::uniform(rng, 1, 4));
        auto cols = static_cast<std::size_t>(fx::uniform(rng, 1, 4));
        IntMatrix M = fx::random_matrix(rng, rows, cols, -2, 2);
        ASSERT_EQ(rank_rational(M), rank_by_minors(M)) << M;
    }
}

TEST(Determinant, Small)
{
    EXPECT_EQ(determinant(IntMatrix{{1, 2}, {3, 4}}), -2);
    EXPECT_EQ(determinant(IntMatrix{{0, 1}, {1, 0}}), -1);
    EXPECT_EQ(determinant(IntMatrix{{2, 0, 0}, {0, 3, 0}, {0, 0, 4}}), 24);
}

TEST(Diophantine, UniqueSolution)
{
    auto L = solve_diophantine(IntMatrix{{1, 1}, {1, -1}}, {2, 0});
    ASSERT_TRUE(L);
    EXPECT_EQ(L->particular, (IntVector{1, 1}));
    EXPECT_TRUE(L->basis.empty());
}

TEST(Diophantine, Parity)
{
    EXPECT_FALSE(solve_diophantine(IntMatrix{{2}}, {3}));
}

TEST(Diophantine, OneEquationTwoUnknowns)
{
    auto L = solve_diophantine(IntMatrix{{2, 4}}, {6});
    ASSERT_TRUE(L);
    EXPECT_EQ(L->particular, (IntVector{1, 1}));
    ASSERT_EQ(L->basis.size(), 1u);
    EXPECT_EQ(L->basis[0], (IntVector{2, -1}));
    // exact lattice equality on the window
    for (long x = -20; x <= 20; ++x)
        for (long y = -20; y <= 20; ++y)
            EXPECT_EQ(L->contains({x, y}), 2 * x + 4 * y == 6);
}

TEST(Diophantine, EmptySystemIsEverything)
{
    auto L = solve_diophantine(IntMatrix(0, 3), {});
    ASSERT_TRUE(L);
    EXPECT_EQ(L->basis.size(), 3u);
    EXPECT_TRUE(L->contains({5, -7, 11}));
}

TEST(Diophantine, BoxSoundnessAndCompleteness)
{
    fx::Rng rng(23);
    const long B = 8;
    for (int i = 0; i < 120; ++i) {
        auto rows = static_cast<std::size_t>(fx::uniform(rng, 1, 2));
        IntMatrix A = fx::random_matrix(rng, rows, 2, -4, 4);
        IntVector b;
        for (std::size_t r = 0; r < rows; ++r)
            b.emplace_back(fx::uniform(rng, -6, 6));
        auto L = solve_diophantine(A, b);
        for (long x = -B; x <= B; ++x)
            for (long y = -B; y <= B; ++y) {
                bool solves = A * IntVector{x, y} == b;
                bool in = L && L->contains({x, y});
                ASSERT_EQ(solves, in) << A << " b=" << b[0] << " at " << x << "," << y;
            }
        if (L) {
            EXPECT_EQ(A * L->particular, b);
            for (const auto & v : L->basis)
                EXPECT_EQ(A * v, IntVector(rows, Int(0)));
        }
    }
}
