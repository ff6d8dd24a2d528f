#include "lassohet/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace lassohet {

void check_finite(const Vector& v, const std::string& what) {
  for (double x : v) {
    if (!std::isfinite(x)) {
      throw NonFiniteEntry(what + ": non-finite entry");
    }
  }
}

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {
  if (!std::isfinite(fill)) throw NonFiniteEntry("Matrix fill value");
}

Matrix::Matrix(std::size_t rows, std::size_t cols, Vector entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) {
    throw DimensionMismatch("Matrix: entries length != rows*cols");
  }
  check_finite(data_, "Matrix entries");
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionMismatch("matmul: inner dimensions differ");
  }
  const std::size_t n = a.rows(), k = a.cols(), m = b.cols();
  Matrix c(n, m);
  const double* ap = a.data().data();
  const double* bp = b.data().data();
  double* cp = c.data().data();
#pragma omp parallel for schedule(static) if (n * k * m > 32768)
  for (long long ii = 0; ii < static_cast<long long>(n); ++ii) {
    const std::size_t i = static_cast<std::size_t>(ii);
    for (std::size_t t = 0; t < k; ++t) {
      const double aik = ap[i * k + t];
      const double* brow = bp + t * m;
      double* crow = cp + i * m;
      for (std::size_t j = 0; j < m; ++j) crow[j] += aik * brow[j];
    }
  }
  return c;
}

Matrix matmul_serial(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionMismatch("matmul_serial: inner dimensions differ");
  }
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t t = 0; t < a.cols(); ++t) {
      for (std::size_t j = 0; j < b.cols(); ++j) {
        c(i, j) += a(i, t) * b(t, j);
      }
    }
  }
  return c;
}

Matrix transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  }
  return t;
}

Vector matvec(const Matrix& a, const Vector& x) {
  if (a.cols() != x.size()) throw DimensionMismatch("matvec: size mismatch");
  Vector y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

Vector matvec_transposed(const Matrix& a, const Vector& x) {
  if (a.rows() != x.size()) {
    throw DimensionMismatch("matvec_transposed: size mismatch");
  }
  Vector y(a.cols(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const double xi = x[i];
    for (std::size_t j = 0; j < a.cols(); ++j) y[j] += a(i, j) * xi;
  }
  return y;
}

Cholesky::Cholesky(const Matrix& a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("Cholesky: not square");
  const std::size_t n = a.rows();
  double max_diag = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    max_diag = std::max(max_diag, std::abs(a(i, i)));
  }
  const double pivot_tol = 1e-12 * max_diag;
  l_ = Matrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = a(j, j);
    for (std::size_t t = 0; t < j; ++t) d -= l_(j, t) * l_(j, t);
    if (d <= pivot_tol) {
      throw NotPositiveDefinite("Cholesky: pivot " + std::to_string(d) +
                                " at column " + std::to_string(j));
    }
    l_(j, j) = std::sqrt(d);
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (std::size_t t = 0; t < j; ++t) s -= l_(i, t) * l_(j, t);
      l_(i, j) = s / l_(j, j);
    }
  }
}

Vector Cholesky::solve(const Vector& b) const {
  const std::size_t n = l_.rows();
  if (b.size() != n) throw DimensionMismatch("Cholesky::solve: size mismatch");
  Vector y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = b[i];
    for (std::size_t t = 0; t < i; ++t) s -= l_(i, t) * y[t];
    y[i] = s / l_(i, i);
  }
  Vector x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    double s = y[ii];
    for (std::size_t t = ii + 1; t < n; ++t) s -= l_(t, ii) * x[t];
    x[ii] = s / l_(ii, ii);
  }
  return x;
}

Matrix Cholesky::solve(const Matrix& b) const {
  const std::size_t n = l_.rows();
  if (b.rows() != n) throw DimensionMismatch("Cholesky::solve: size mismatch");
  Matrix x(n, b.cols());
  Vector col(n);
  for (std::size_t j = 0; j < b.cols(); ++j) {
    for (std::size_t i = 0; i < n; ++i) col[i] = b(i, j);
    Vector sol = solve(col);
    for (std::size_t i = 0; i < n; ++i) x(i, j) = sol[i];
  }
  return x;
}

Matrix solve_spd(const Matrix& a, const Matrix& b) {
  return Cholesky(a).solve(b);
}

Vector solve_spd(const Matrix& a, const Vector& b) {
  return Cholesky(a).solve(b);
}

namespace {

double off_diagonal_frobenius(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (i != j) s += a(i, j) * a(i, j);
    }
  }
  return std::sqrt(s);
}

}  // namespace

Vector symmetric_eigenvalues(const Matrix& a) {
  if (a.rows() != a.cols()) {
    throw NonSymmetric("symmetric_eigenvalues: not square");
  }
  const std::size_t n = a.rows();
  double asym = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      asym = std::max(asym, std::abs(a(i, j) - a(j, i)));
      scale = std::max(scale, std::abs(a(i, j)));
    }
  }
  if (asym > 1e-10 * std::max(1.0, scale)) {
    throw NonSymmetric("symmetric_eigenvalues: asymmetry " +
                       std::to_string(asym));
  }

  // work on the symmetrized copy
  Matrix w(n, n);
  double frob = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      w(i, j) = 0.5 * (a(i, j) + a(j, i));
      frob += w(i, j) * w(i, j);
    }
  }
  frob = std::sqrt(frob);
  const double tol = 1e-11 * frob;

  if (n <= 1) {
    Vector ev(n);
    if (n == 1) ev[0] = w(0, 0);
    return ev;
  }

  const int max_sweeps = 100;
  int sweep = 0;
  while (off_diagonal_frobenius(w) > tol) {
    if (++sweep > max_sweeps) {
      throw NoConvergence("symmetric_eigenvalues: no convergence in 100 sweeps");
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = w(p, q);
        if (apq == 0.0) continue;
        const double theta = (w(q, q) - w(p, p)) / (2.0 * apq);
        double t;
        if (std::abs(theta) > 1e12) {
          t = 1.0 / (2.0 * theta);
        } else {
          t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
          if (theta < 0.0) t = -t;
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t i = 0; i < n; ++i) {
          const double wip = w(i, p), wiq = w(i, q);
          w(i, p) = c * wip - s * wiq;
          w(i, q) = s * wip + c * wiq;
        }
        for (std::size_t i = 0; i < n; ++i) {
          const double wpi = w(p, i), wqi = w(q, i);
          w(p, i) = c * wpi - s * wqi;
          w(q, i) = s * wpi + c * wqi;
        }
      }
    }
  }

  Vector ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = w(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

double power_lambda_max(const Matrix& a) {
  if (a.rows() != a.cols()) throw NonSymmetric("power_lambda_max: not square");
  const std::size_t n = a.rows();
  if (n == 0) return 0.0;
  // fixed deterministic start vector with all spectral components present
  Vector v(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = 1.0 + 0.5 * std::sin(static_cast<double>(i + 1));
  }
  double norm = l2_norm(v);
  for (double& x : v) x /= norm;

  double lambda = 0.0;
  for (int iter = 0; iter < 10000; ++iter) {
    Vector w = matvec(a, v);
    const double next = l2_norm(w);
    if (next == 0.0) return 0.0;  // started in the null space of a PSD matrix
    for (double& x : w) x /= next;
    if (iter > 0 && std::abs(next - lambda) <= 1e-8 * std::max(next, 1e-300)) {
      return next;
    }
    lambda = next;
    v = std::move(w);
  }
  throw NoConvergence("power_lambda_max: no convergence in 10000 iterations");
}

double inf_norm(const Vector& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double l2_norm(const Vector& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

Matrix column_slice(const Matrix& x, const std::vector<std::size_t>& idx) {
  for (std::size_t j : idx) {
    if (j >= x.cols()) {
      throw DimensionMismatch("column_slice: index " + std::to_string(j) +
                              " out of range");
    }
  }
  Matrix out(x.rows(), idx.size());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t c = 0; c < idx.size(); ++c) out(i, c) = x(i, idx[c]);
  }
  return out;
}

}  // namespace lassohet
