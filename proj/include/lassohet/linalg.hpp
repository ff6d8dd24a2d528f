#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace lassohet {

using Vector = std::vector<double>;

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NotPositiveDefinite : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NonSymmetric : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NoConvergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NonFiniteEntry : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Dense row-major matrix of 64-bit reals. Constructors reject NaN/Inf.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::size_t rows, std::size_t cols, Vector entries);

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  const Vector& data() const { return data_; }
  Vector& data() { return data_; }

  bool operator==(const Matrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Vector data_;
};

void check_finite(const Vector& v, const std::string& what);

/// Product with fixed i,j,k loop order; parallel over output rows, each
/// entry keeps a fixed summation order so results are bitwise reproducible.
Matrix matmul(const Matrix& a, const Matrix& b);

/// Naive serial triple loop, kept as the reference for tests and benchmarks.
Matrix matmul_serial(const Matrix& a, const Matrix& b);

Matrix transpose(const Matrix& a);
Vector matvec(const Matrix& a, const Vector& x);
Vector matvec_transposed(const Matrix& a, const Vector& x);

/// Cholesky factorization of a symmetric positive definite matrix.
/// Failure of a pivot (<= 1e-12 * max diagonal) throws NotPositiveDefinite.
class Cholesky {
 public:
  explicit Cholesky(const Matrix& a);

  Vector solve(const Vector& b) const;
  Matrix solve(const Matrix& b) const;

 private:
  Matrix l_;  // lower triangle
};

/// Solves A X = B for SPD A via Cholesky.
Matrix solve_spd(const Matrix& a, const Matrix& b);
Vector solve_spd(const Matrix& a, const Vector& b);

/// All eigenvalues of a symmetric matrix by cyclic Jacobi rotations,
/// sorted ascending. Converged when the off-diagonal Frobenius norm drops
/// below 1e-11 * ||A||_F; throws NoConvergence after 100 sweeps.
Vector symmetric_eigenvalues(const Matrix& a);

/// Largest eigenvalue of a symmetric PSD matrix by power iteration,
/// relative tolerance 1e-8, at most 10000 iterations.
double power_lambda_max(const Matrix& a);

double inf_norm(const Vector& v);
double l2_norm(const Vector& v);

/// Columns of X at the given distinct in-range indices, in the given order.
Matrix column_slice(const Matrix& x, const std::vector<std::size_t>& idx);

}  // namespace lassohet
