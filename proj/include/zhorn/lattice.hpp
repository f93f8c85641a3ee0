#pragma once

#include <zhorn/integer.hpp>

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

namespace zhorn {

/// Dense integer matrix, row-major.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols);
    IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

    static IntMatrix identity(std::size_t n);
    /// Matrix with the given vectors as columns; every vector has `rows` entries.
    static IntMatrix from_columns(std::size_t rows, const std::vector<IntVector> & columns);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int & operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const Int & operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    IntVector row(std::size_t r) const;
    IntVector column(std::size_t c) const;

    void append_row(const IntVector & row);

    friend bool operator==(const IntMatrix &, const IntMatrix &) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Int> entries_;
};

IntMatrix operator*(const IntMatrix & a, const IntMatrix & b);
IntVector operator*(const IntMatrix & a, const IntVector & x);

std::ostream & operator<<(std::ostream & os, const IntMatrix & m);

struct HermiteResult {
    IntMatrix H;
    IntMatrix U;
    std::size_t rank = 0;
    /// pivot_rows[j] is the row holding the pivot of column j, for j < rank.
    std::vector<std::size_t> pivot_rows;
};

/// Column-style Hermite normal form H = M * U with U unimodular. Pivots are
/// positive, entries left of a pivot in its row lie in [0, pivot), and the
/// zero columns are rightmost.
HermiteResult hermite_normal_form(const IntMatrix & M);

/// Rank over the rationals by fraction-free (Bareiss) elimination.
std::size_t rank_rational(const IntMatrix & M);

/// Exact determinant of a square matrix by fraction-free elimination.
Int determinant(const IntMatrix & M);

/// The set { particular + sum t_j * basis_j : t in Z^m }.
struct AffineLattice {
    std::size_t dimension = 0;
    IntVector particular;
    std::vector<IntVector> basis;

    IntVector point(const IntVector & parameters) const;
    bool contains(const IntVector & x) const;
};

/// Integer solutions of A x = b. The basis is returned in Hermite form and
/// the particular point reduced against it, so the representation depends
/// only on the solution set.
std::optional<AffineLattice> solve_diophantine(const IntMatrix & A, const IntVector & b);

} // namespace zhorn
