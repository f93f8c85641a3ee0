#include <zhorn/lattice.hpp>

#include <ostream>
#include <utility>

namespace zhorn {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols) :
    rows_(rows),
    cols_(cols),
    entries_(rows * cols, Int(0))
{
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows)
{
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    for (const auto & r : rows) {
        if (r.size() != cols_)
            throw InvalidArgument("IntMatrix: ragged initializer");
        for (long v : r)
            entries_.emplace_back(v);
    }
}

IntMatrix IntMatrix::identity(std::size_t n)
{
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_columns(std::size_t rows, const std::vector<IntVector> & columns)
{
    IntMatrix m(rows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (columns[c].size() != rows)
            throw InvalidArgument("IntMatrix::from_columns: column length mismatch");
        for (std::size_t r = 0; r < rows; ++r)
            m(r, c) = columns[c][r];
    }
    return m;
}

IntVector IntMatrix::row(std::size_t r) const
{
    return IntVector(entries_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                     entries_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

IntVector IntMatrix::column(std::size_t c) const
{
    IntVector out;
    out.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        out.push_back((*this)(r, c));
    return out;
}

void IntMatrix::append_row(const IntVector & row)
{
    if (rows_ == 0 && cols_ == 0)
        cols_ = row.size();
    if (row.size() != cols_)
        throw InvalidArgument("IntMatrix::append_row: length mismatch");
    entries_.insert(entries_.end(), row.begin(), row.end());
    ++rows_;
}

IntMatrix operator*(const IntMatrix & a, const IntMatrix & b)
{
    if (a.cols() != b.rows())
        throw InvalidArgument("matrix product: dimension mismatch");
    IntMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k) == 0)
                continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

IntVector operator*(const IntMatrix & a, const IntVector & x)
{
    if (a.cols() != x.size())
        throw InvalidArgument("matrix-vector product: dimension mismatch");
    IntVector y(a.rows(), Int(0));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k)
            y[i] += a(i, k) * x[k];
    return y;
}

std::ostream & operator<<(std::ostream & os, const IntMatrix & m)
{
    os << "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (i)
            os << "; ";
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j)
                os << " ";
            os << m(i, j).get_str();
        }
    }
    return os << "]";
}

namespace {

// Column operations applied to H and U in lockstep.
struct ColumnOps {
    IntMatrix & H;
    IntMatrix & U;

    void swap(std::size_t a, std::size_t b)
    {
        for (std::size_t r = 0; r < H.rows(); ++r)
            std::swap(H(r, a), H(r, b));
        for (std::size_t r = 0; r < U.rows(); ++r)
            std::swap(U(r, a), U(r, b));
    }

    void negate(std::size_t c)
    {
        for (std::size_t r = 0; r < H.rows(); ++r)
            H(r, c) = -H(r, c);
        for (std::size_t r = 0; r < U.rows(); ++r)
            U(r, c) = -U(r, c);
    }

    // col_dst -= q * col_src
    void subtract(std::size_t dst, std::size_t src, const Int & q)
    {
        if (q == 0)
            return;
        for (std::size_t r = 0; r < H.rows(); ++r)
            H(r, dst) -= q * H(r, src);
        for (std::size_t r = 0; r < U.rows(); ++r)
            U(r, dst) -= q * U(r, src);
    }

    // (col_a, col_b) <- (s*col_a + t*col_b, u*col_a + v*col_b), with s*v - t*u = 1.
    void combine(std::size_t a, std::size_t b, const Int & s, const Int & t, const Int & u, const Int & v)
    {
        auto apply = [&](IntMatrix & M) {
            for (std::size_t r = 0; r < M.rows(); ++r) {
                Int x = M(r, a), y = M(r, b);
                M(r, a) = s * x + t * y;
                M(r, b) = u * x + v * y;
            }
        };
        apply(H);
        apply(U);
    }
};

} // namespace

HermiteResult hermite_normal_form(const IntMatrix & M)
{
    HermiteResult res{M, IntMatrix::identity(M.cols()), 0, {}};
    ColumnOps ops{res.H, res.U};
    IntMatrix & H = res.H;
    const std::size_t n = M.cols();
    std::size_t r = 0;
    for (std::size_t i = 0; i < M.rows() && r < n; ++i) {
        for (std::size_t c = r + 1; c < n; ++c) {
            if (H(i, c) == 0)
                continue;
            if (H(i, r) == 0) {
                ops.swap(r, c);
                continue;
            }
            Int a = H(i, r), b = H(i, c);
            auto e = extended_gcd(a, b);
            ops.combine(r, c, e.s, e.t, Int(-b / e.g), Int(a / e.g));
        }
        if (H(i, r) == 0)
            continue;
        if (H(i, r) < 0)
            ops.negate(r);
        for (std::size_t c = 0; c < r; ++c)
            ops.subtract(c, r, floor_div(H(i, c), H(i, r)));
        res.pivot_rows.push_back(i);
        ++r;
    }
    res.rank = r;
    return res;
}

namespace {

// Bareiss elimination in place; returns the rank and the sign of the row
// permutation applied.
std::size_t bareiss(IntMatrix & A, int & sign)
{
    sign = 1;
    const std::size_t m = A.rows(), n = A.cols();
    Int prev = 1;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < n && rank < m; ++col) {
        std::size_t p = rank;
        while (p < m && A(p, col) == 0)
            ++p;
        if (p == m)
            continue;
        if (p != rank) {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(A(p, j), A(rank, j));
            sign = -sign;
        }
        for (std::size_t i = rank + 1; i < m; ++i) {
            for (std::size_t j = col + 1; j < n; ++j) {
                Int v = A(rank, col) * A(i, j) - A(i, col) * A(rank, j);
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                A(i, j) = std::move(v);
            }
            A(i, col) = 0;
        }
        prev = A(rank, col);
        ++rank;
    }
    return rank;
}

} // namespace

std::size_t rank_rational(const IntMatrix & M)
{
    IntMatrix A = M;
    int sign;
    return bareiss(A, sign);
}

Int determinant(const IntMatrix & M)
{
    if (M.rows() != M.cols())
        throw InvalidArgument("determinant: matrix is not square");
    if (M.rows() == 0)
        return 1;
    IntMatrix A = M;
    int sign;
    if (bareiss(A, sign) < M.rows())
        return 0;
    return sign * A(M.rows() - 1, M.cols() - 1);
}

IntVector AffineLattice::point(const IntVector & parameters) const
{
    if (parameters.size() != basis.size())
        throw InvalidArgument("AffineLattice::point: wrong parameter count");
    IntVector x = particular;
    for (std::size_t j = 0; j < basis.size(); ++j)
        for (std::size_t i = 0; i < dimension; ++i)
            x[i] += parameters[j] * basis[j][i];
    return x;
}

bool AffineLattice::contains(const IntVector & x) const
{
    if (x.size() != dimension)
        return false;
    IntVector diff(dimension);
    for (std::size_t i = 0; i < dimension; ++i)
        diff[i] = x[i] - particular[i];
    IntMatrix B = IntMatrix::from_columns(dimension, basis);
    return solve_diophantine(B, diff).has_value();
}

std::optional<AffineLattice> solve_diophantine(const IntMatrix & A, const IntVector & b)
{
    if (A.rows() != b.size())
        throw InvalidArgument("solve_diophantine: row count does not match right-hand side");
    const std::size_t n = A.cols();
    auto hnf = hermite_normal_form(A);
    const IntMatrix & H = hnf.H;

    // Forward substitution on the echelon structure of H.
    IntVector y(n, Int(0));
    std::size_t next_pivot = 0;
    for (std::size_t i = 0; i < A.rows(); ++i) {
        Int residual = b[i];
        for (std::size_t j = 0; j < next_pivot; ++j)
            residual -= H(i, j) * y[j];
        if (next_pivot < hnf.rank && hnf.pivot_rows[next_pivot] == i) {
            const Int & pivot = H(i, next_pivot);
            if (! divides(pivot, residual))
                return std::nullopt;
            y[next_pivot] = residual / pivot;
            ++next_pivot;
        }
        else if (residual != 0)
            return std::nullopt;
    }

    AffineLattice L;
    L.dimension = n;
    L.particular = hnf.U * y;
    std::vector<IntVector> kernel;
    for (std::size_t j = hnf.rank; j < n; ++j)
        kernel.push_back(hnf.U.column(j));

    if (! kernel.empty()) {
        auto canon = hermite_normal_form(IntMatrix::from_columns(n, kernel));
        for (std::size_t j = 0; j < canon.rank; ++j) {
            L.basis.push_back(canon.H.column(j));
            const std::size_t p = canon.pivot_rows[j];
            Int q = floor_div(L.particular[p], canon.H(p, j));
            if (q != 0)
                for (std::size_t i = 0; i < n; ++i)
                    L.particular[i] -= q * canon.H(i, j);
        }
    }
    return L;
}

} // namespace zhorn
