#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace chuasync {

/// Dense real matrix, row-major. Sized for the problems here: comparison
/// matrices of dimension 2(N-1), i.e. a few hundred at most.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

    std::span<const double> row(std::size_t r) const noexcept {
        return {data_.data() + r * cols_, cols_};
    }

    double* data() noexcept { return data_.data(); }
    const double* data() const noexcept { return data_.data(); }

    double trace() const;
    double max_abs() const;
    bool all_finite() const;

    /// Determinant by LU with partial pivoting. Used by tests and the
    /// characteristic-polynomial oracle; not performance critical.
    double determinant() const;

    Matrix& operator+=(const Matrix& other);
    Matrix& operator*=(double s);

    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend bool operator==(const Matrix& a, const Matrix& b) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// y = A x. Serial reference implementation.
void matvec_serial(const Matrix& a, std::span<const double> x, std::span<double> y);

/// y = A x with the row loop parallelized. Bitwise identical to the serial
/// variant: each row's dot product keeps the same summation order.
void matvec_parallel(const Matrix& a, std::span<const double> x, std::span<double> y);

} // namespace chuasync
