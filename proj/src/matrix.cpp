#include "sosgap/matrix.hpp"

#include "sosgap/error.hpp"

#include <utility>

namespace sosgap {

Matrix Matrix::identity(std::size_t n)
{
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Matrix Matrix::conj_transpose() const
{
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j).conj();
    return t;
}

bool Matrix::is_hermitian() const
{
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i; j < cols_; ++j)
            if (!((*this)(i, j) == (*this)(j, i).conj())) return false;
    return true;
}

Matrix operator*(const Matrix& a, const Matrix& b)
{
    if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product: inner dimensions differ");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const auto& aik = a(i, k);
            if (aik.is_zero()) continue;
            for (std::size_t j = 0; j < b.cols_; ++j)
                if (!b(k, j).is_zero()) c(i, j) += aik * b(k, j);
        }
    return c;
}

RowEchelon row_reduce(Matrix m)
{
    RowEchelon out;
    std::vector<std::size_t> order(m.rows());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c).is_zero()) ++p;
        if (p == m.rows()) continue;
        if (p != r) {
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
            std::swap(order[p], order[r]);
        }
        const GaussianRational inv = GaussianRational(1) / m(r, c);
        for (std::size_t j = c; j < m.cols(); ++j)
            if (!m(r, j).is_zero()) m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c).is_zero()) continue;
            const GaussianRational f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j)
                if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
        }
        out.pivots.push_back(c);
        out.source.push_back(order[r]);
        ++r;
    }
    out.reduced = std::move(m);
    return out;
}

std::size_t rank(const Matrix& m)
{
    return row_reduce(m).pivots.size();
}

std::optional<std::vector<GaussianRational>> solve(const Matrix& m, std::span<const GaussianRational> rhs)
{
    if (rhs.size() != m.rows()) throw DimensionMismatch("solve: right-hand side length differs from row count");
    Matrix aug(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
        aug(i, m.cols()) = rhs[i];
    }
    const RowEchelon e = row_reduce(std::move(aug));
    if (!e.pivots.empty() && e.pivots.back() == m.cols()) return std::nullopt;
    std::vector<GaussianRational> x(m.cols());
    for (std::size_t r = 0; r < e.pivots.size(); ++r) x[e.pivots[r]] = e.reduced(r, m.cols());
    return x;
}

std::optional<Matrix> inverse(const Matrix& m)
{
    if (m.rows() != m.cols()) throw DimensionMismatch("inverse: matrix is not square");
    const std::size_t n = m.rows();
    Matrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    const RowEchelon e = row_reduce(std::move(aug));
    if (e.pivots.size() < n || (n > 0 && e.pivots[n - 1] != n - 1)) return std::nullopt;
    Matrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
    return inv;
}

GaussianRational quadratic_form(const Matrix& m, std::span<const GaussianRational> v)
{
    if (m.rows() != v.size() || m.cols() != v.size())
        throw DimensionMismatch("quadratic_form: vector length differs from matrix size");
    GaussianRational acc;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (v[i].is_zero()) continue;
        GaussianRational row;
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!v[j].is_zero() && !m(i, j).is_zero()) row += m(i, j) * v[j];
        acc += v[i].conj() * row;
    }
    return acc;
}

} // namespace sosgap
