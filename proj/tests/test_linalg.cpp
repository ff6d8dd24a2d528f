#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "lassohet/linalg.hpp"
#include "lassohet/rng.hpp"

using namespace lassohet;

namespace {

Matrix random_matrix(std::size_t r, std::size_t c, std::uint64_t seed) {
  GaussianRng rng(seed);
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rng.next();
  }
  return m;
}

// independent reference product: j-outer loop order, long double accumulator
Matrix matmul_oracle(const Matrix& a, const Matrix& b) {
  Matrix c(a.rows(), b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j) {
    for (std::size_t i = 0; i < a.rows(); ++i) {
      long double s = 0.0L;
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      c(i, j) = static_cast<double>(s);
    }
  }
  return c;
}

// determinant via Gaussian elimination with partial pivoting
double det_oracle(Matrix a) {
  const std::size_t n = a.rows();
  double det = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
    }
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      det = -det;
    }
    det *= a(k, k);
    if (a(k, k) == 0.0) return 0.0;
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return det;
}

const Matrix kA(4, 4,
               {4.0, 1.0, -0.5, 0.25,   //
                1.0, 3.0, 0.75, -1.0,   //
                -0.5, 0.75, 5.0, 0.5,   //
                0.25, -1.0, 0.5, 2.0});

}  // namespace

TEST_CASE("matmul matches the independent triple-loop oracle") {
  Matrix a = random_matrix(17, 23, 1);
  Matrix b = random_matrix(23, 9, 2);
  Matrix c = matmul(a, b);
  Matrix ref = matmul_oracle(a, b);
  for (std::size_t i = 0; i < c.rows(); ++i) {
    for (std::size_t j = 0; j < c.cols(); ++j) {
      CHECK(c(i, j) == doctest::Approx(ref(i, j)).epsilon(1e-13));
    }
  }
}

TEST_CASE("parallel and serial matmul are bitwise identical") {
  Matrix a = random_matrix(64, 80, 3);
  Matrix b = random_matrix(80, 48, 4);
  CHECK(matmul(a, b) == matmul_serial(a, b));
}

TEST_CASE("matmul rejects mismatched shapes") {
  CHECK_THROWS_AS(matmul(Matrix(2, 3), Matrix(4, 2)), DimensionMismatch);
}

TEST_CASE("matrix construction rejects non-finite entries") {
  CHECK_THROWS_AS(Matrix(1, 2, {1.0, std::nan("")}), NonFiniteEntry);
  CHECK_THROWS_AS(Matrix(1, 1, {INFINITY}), NonFiniteEntry);
}

TEST_CASE("transpose and matvec agree with direct loops") {
  Matrix a = random_matrix(6, 11, 5);
  Matrix at = transpose(a);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) CHECK(at(j, i) == a(i, j));
  }
  Vector x(11);
  for (std::size_t j = 0; j < 11; ++j) x[j] = 0.1 * static_cast<double>(j) - 0.5;
  Vector y = matvec(a, x);
  Vector yt = matvec_transposed(at, x);  // A''x = Ax
  for (std::size_t i = 0; i < 6; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < 11; ++j) s += a(i, j) * x[j];
    CHECK(y[i] == doctest::Approx(s).epsilon(1e-14));
    CHECK(yt[i] == doctest::Approx(s).epsilon(1e-14));
  }
}

TEST_CASE("SPD solve matches the frozen reference solution") {
  // S = kA kA' + I/2, b fixed; solution frozen from an external solver
  Matrix s = matmul(kA, transpose(kA));
  for (std::size_t i = 0; i < 4; ++i) s(i, i) += 0.5;
  Vector b = {1.0, -2.0, 0.5, 3.0};
  Vector x = solve_spd(s, b);
  const Vector expected = {0.022488750955507, 0.047044196448802,
                           -0.043304899931783, 0.570128435964828};
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(x[i] == doctest::Approx(expected[i]).epsilon(1e-12));
  }
}

TEST_CASE("SPD solve residual is tiny on random instances") {
  for (std::uint64_t seed : {10, 11, 12}) {
    Matrix g = random_matrix(8, 8, seed);
    Matrix s = matmul(g, transpose(g));
    for (std::size_t i = 0; i < 8; ++i) s(i, i) += 1.0;
    Vector b(8);
    for (std::size_t i = 0; i < 8; ++i) b[i] = std::sin(static_cast<double>(i));
    Vector x = solve_spd(s, b);
    Vector r = matvec(s, x);
    for (std::size_t i = 0; i < 8; ++i) {
      CHECK(r[i] == doctest::Approx(b[i]).epsilon(1e-10));
    }
  }
}

TEST_CASE("Cholesky rejects indefinite and asymmetric-shaped input") {
  Matrix bad(2, 2, {1.0, 2.0, 2.0, 1.0});  // eigenvalues 3, -1
  CHECK_THROWS_AS(Cholesky{bad}, NotPositiveDefinite);
  CHECK_THROWS_AS(Cholesky{Matrix(2, 3)}, DimensionMismatch);
}

TEST_CASE("eigenvalues match the frozen reference") {
  Vector ev = symmetric_eigenvalues(kA);
  const Vector expected = {0.946134773420223, 3.099388722046646,
                           4.658791003476392, 5.295685501056740};
  REQUIRE(ev.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(ev[i] == doctest::Approx(expected[i]).epsilon(1e-12));
  }
}

TEST_CASE("eigenvalue sum and product equal trace and determinant") {
  for (std::uint64_t seed : {20, 21, 22}) {
    Matrix g = random_matrix(7, 7, seed);
    Matrix s = matmul(g, transpose(g));
    Vector ev = symmetric_eigenvalues(s);
    double trace = 0.0, sum = 0.0, prod = 1.0;
    for (std::size_t i = 0; i < 7; ++i) trace += s(i, i);
    for (double v : ev) {
      sum += v;
      prod *= v;
    }
    CHECK(sum == doctest::Approx(trace).epsilon(1e-10));
    CHECK(prod == doctest::Approx(det_oracle(s)).epsilon(1e-8));
  }
}

TEST_CASE("eigensolver rejects asymmetric input") {
  Matrix m(2, 2, {1.0, 5.0, 0.0, 1.0});
  CHECK_THROWS_AS(symmetric_eigenvalues(m), NonSymmetric);
}

TEST_CASE("power iteration agrees with the Jacobi extreme eigenvalue") {
  // frozen check on S = kA kA' + I/2 and random PSD instances
  Matrix s = matmul(kA, transpose(kA));
  for (std::size_t i = 0; i < 4; ++i) s(i, i) += 0.5;
  CHECK(power_lambda_max(s) == doctest::Approx(28.544284926102566).epsilon(1e-7));
  for (std::uint64_t seed : {30, 31}) {
    Matrix g = random_matrix(6, 6, seed);
    Matrix psd = matmul(g, transpose(g));
    CHECK(power_lambda_max(psd) ==
          doctest::Approx(symmetric_eigenvalues(psd).back()).epsilon(1e-6));
  }
}

TEST_CASE("norms and column_slice") {
  Vector v = {3.0, -4.0, 1.0};
  CHECK(inf_norm(v) == 4.0);
  CHECK(l2_norm(v) == doctest::Approx(std::sqrt(26.0)));
  Matrix a = random_matrix(5, 6, 40);
  Matrix s = column_slice(a, {1, 4});
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(s(i, 0) == a(i, 1));
    CHECK(s(i, 1) == a(i, 4));
  }
  CHECK_THROWS_AS(column_slice(a, {7}), DimensionMismatch);
}
