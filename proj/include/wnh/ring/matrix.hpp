#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "wnh/ring/expr.hpp"

namespace wnh {

// Dense matrix of Exprs, row-major.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    static Matrix identity(std::size_t n);
    static Matrix column(const std::vector<Expr>& v);
    static Matrix row(const std::vector<Expr>& v);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Expr& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Expr& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    const std::vector<Expr>& data() const { return data_; }

    bool is_zero() const;
    bool has_nonlocal() const;
    Matrix transpose() const;
    Matrix map(const std::function<Expr(const Expr&)>& f) const;
    std::vector<Expr> column_vector(std::size_t j) const;
    std::vector<Expr> row_vector(std::size_t i) const;

    Matrix& operator+=(const Matrix& o);
    Matrix& operator-=(const Matrix& o);
    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    Matrix operator-() const;
    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Matrix operator*(const Expr& c, const Matrix& a);

    friend bool operator==(const Matrix& a, const Matrix& b);

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Expr> data_;
};

Expr determinant(const Matrix& m);
// Throws DivisionByZero when singular.
Matrix inverse(const Matrix& m);
Matrix total_derivative(const Matrix& m, std::uint32_t times = 1);

}  // namespace wnh
