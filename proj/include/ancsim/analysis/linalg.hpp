#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace ancsim::analysis {

/// Dense row-major real matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> d);
  /// Symmetric Toeplitz matrix T[i][j] = lags[|i−j|].
  static Matrix toeplitz(std::span<const double> lags);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

  std::vector<double> operator*(std::span<const double> v) const;
  Matrix operator*(const Matrix& other) const;
  Matrix operator+(const Matrix& other) const;
  Matrix operator*(double s) const;
  Matrix transposed() const;

  double frobenius_norm() const noexcept;
  bool symmetric(double rel_tol = 1e-12) const noexcept;
  bool all_finite() const noexcept;

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

double quadratic_form(const Matrix& m, std::span<const double> w);

struct SymmetricEigen {
  std::vector<double> values;  // ascending
  Matrix vectors;              // column k pairs with values[k]
};

/// Cyclic Jacobi rotations. Throws DataError for non-square, asymmetric or
/// non-finite input.
SymmetricEigen eigen_symmetric(const Matrix& m);

/// λ_max/λ_min of a symmetric matrix; +inf when λ_min ≤ 0.
double condition_number(const Matrix& m);

struct LinearSolution {
  std::vector<double> x;
  bool jitter_applied = false;
  double jitter = 0.0;
  double condition_estimate = 0.0;
};

/// Solves A·x = b for symmetric positive (semi-)definite A by Cholesky.
/// Matrices with condition number ≥ max_condition raise SingularMatrixError
/// (pass infinity to skip the check).
/// If factorisation still breaks down, a diagonal jitter of 1e−12·trace/n is
/// added (doubling up to 1e−6·trace/n) and reported in the result.
LinearSolution solve_spd(const Matrix& a, std::span<const double> b,
                         double max_condition = 1e12);

}  // namespace ancsim::analysis
