#pragma once

#include "sosgap/gaussian_rational.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace sosgap {

/// Dense row-major matrix over the Gaussian rationals.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    GaussianRational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const GaussianRational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const GaussianRational> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    Matrix conj_transpose() const;
    bool is_hermitian() const;

    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend bool operator==(const Matrix& a, const Matrix& b) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<GaussianRational> data_;
};

struct RowEchelon {
    Matrix reduced;                   // reduced row echelon form
    std::vector<std::size_t> pivots;  // pivot column of each nonzero row
    std::vector<std::size_t> source;  // original row index that supplied each pivot
};

RowEchelon row_reduce(Matrix m);

std::size_t rank(const Matrix& m);

/// Solves m * x = rhs exactly; nullopt when inconsistent. Free variables are set to zero.
std::optional<std::vector<GaussianRational>> solve(const Matrix& m, std::span<const GaussianRational> rhs);

/// Exact inverse of a square matrix; nullopt when singular.
std::optional<Matrix> inverse(const Matrix& m);

/// v^H * m * v
GaussianRational quadratic_form(const Matrix& m, std::span<const GaussianRational> v);

} // namespace sosgap
