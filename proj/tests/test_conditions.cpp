#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "lassohet/conditions.hpp"
#include "lassohet/model.hpp"

using namespace lassohet;

namespace {

// explicit-inverse reference: ||X(Sc)' X(S) inv(X(S)'X(S)) b||_inf with the
// inverse computed by Gauss-Jordan, independent of the Cholesky path
double ic_lhs_oracle(const Matrix& x, const std::vector<std::size_t>& support,
                     const Vector& b) {
  const std::size_t q = support.size();
  Matrix xs = column_slice(x, support);
  Matrix gram = matmul(transpose(xs), xs);
  // Gauss-Jordan inverse
  Matrix aug(q, 2 * q);
  for (std::size_t i = 0; i < q; ++i) {
    for (std::size_t j = 0; j < q; ++j) aug(i, j) = gram(i, j);
    aug(i, q + i) = 1.0;
  }
  for (std::size_t k = 0; k < q; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < q; ++i) {
      if (std::abs(aug(i, k)) > std::abs(aug(piv, k))) piv = i;
    }
    for (std::size_t j = 0; j < 2 * q; ++j) std::swap(aug(k, j), aug(piv, j));
    const double d = aug(k, k);
    for (std::size_t j = 0; j < 2 * q; ++j) aug(k, j) /= d;
    for (std::size_t i = 0; i < q; ++i) {
      if (i == k) continue;
      const double f = aug(i, k);
      for (std::size_t j = 0; j < 2 * q; ++j) aug(i, j) -= f * aug(k, j);
    }
  }
  Vector inv_b(q, 0.0);
  for (std::size_t i = 0; i < q; ++i) {
    for (std::size_t j = 0; j < q; ++j) inv_b[i] += aug(i, q + j) * b[j];
  }
  Vector w = matvec(xs, inv_b);
  double worst = 0.0;
  for (std::size_t j = 0; j < x.cols(); ++j) {
    bool in_support = false;
    for (std::size_t s : support) in_support = in_support || s == j;
    if (in_support) continue;
    double dot = 0.0;
    for (std::size_t i = 0; i < x.rows(); ++i) dot += x(i, j) * w[i];
    worst = std::max(worst, std::abs(dot));
  }
  return worst;
}

}  // namespace

TEST_CASE("sample IC statistic matches the explicit-inverse oracle") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Matrix x = gen_iid_design(25, 9, seed);
    SparseCoefficients beta = make_example_beta(9, 4, 3.0, 1.0);
    const double got =
        irrepresentable_lhs(x, beta.support, beta.sign_vector);
    const double want = ic_lhs_oracle(x, beta.support, beta.sign_vector);
    CHECK(got == doctest::Approx(want).epsilon(1e-10));
  }
}

TEST_CASE("orthogonal design has zero IC statistic") {
  Matrix x(8, 4);
  for (std::size_t j = 0; j < 4; ++j) {
    x(2 * j, j) = 2.0;
    x(2 * j + 1, j) = -1.0;
  }
  SparseCoefficients beta = make_example_beta(4, 2, 2.0, 1.0);
  CHECK(irrepresentable_lhs(x, beta.support, beta.sign_vector) ==
        doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("population IC for an equicorrelated ensemble") {
  // Sigma = (1-rho) I + rho 11': Sigma21 Sigma11^{-1} b has a closed form;
  // for b = (1,1) and q = 2 each entry is 2 rho / (1 + rho)
  const double rho = 0.3;
  Matrix sigma(5, 5, 0.0);
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 5; ++j) sigma(i, j) = i == j ? 1.0 : rho;
  }
  GaussianEnsembleSpec spec{sigma, true};
  const double got = population_ic_lhs(spec, {0, 1}, {1.0, 1.0});
  CHECK(got == doctest::Approx(2.0 * rho / (1.0 + rho)).epsilon(1e-12));
}

TEST_CASE("sample IC converges to the population value") {
  const double rho = 0.25;
  Matrix sigma(6, 6, 0.0);
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = 0; j < 6; ++j) sigma(i, j) = i == j ? 1.0 : rho;
  }
  GaussianEnsembleSpec spec{sigma, true};
  const double population = population_ic_lhs(spec, {0, 1}, {1.0, 1.0});
  Matrix x = gen_ensemble_design(40000, spec, 33);
  const double sample = irrepresentable_lhs(x, {0, 1}, {1.0, 1.0});
  CHECK(sample == doctest::Approx(population).epsilon(0.05));
}

TEST_CASE("gram eigenvalue bounds and row norms") {
  Matrix x = gen_iid_design(300, 12, 44);
  SparseCoefficients beta = make_example_beta(12, 6, 2.0, 1.0);
  auto [c_min, c_max] = gram_eigen_bounds(x, beta.support);
  CHECK(c_min > 0.0);
  CHECK(c_max >= c_min);
  // for n >> q the sample Gram of N(0,1) columns is near the identity
  CHECK(c_min > 0.5);
  CHECK(c_max < 2.0);

  const double worst = max_row_norm_s(x, beta.support);
  double direct = 0.0;
  for (std::size_t i = 0; i < 300; ++i) {
    double s = 0.0;
    for (std::size_t j : beta.support) s += x(i, j) * x(i, j);
    direct = std::max(direct, s);
  }
  CHECK(worst == doctest::Approx(std::sqrt(direct)).epsilon(1e-12));
}

TEST_CASE("condition report assembles the pieces coherently") {
  Matrix x = gen_iid_design(120, 10, 55);
  SparseCoefficients beta = make_example_beta(10, 4, 5.0, 1.0);
  ConditionReport rep =
      condition_report(x, beta.support, beta.sign_vector, 0.1);
  CHECK(rep.eta == doctest::Approx(1.0 - rep.ic_lhs).epsilon(1e-14));
  CHECK(rep.holds_ic == (rep.ic_lhs <= 0.9));
  CHECK(rep.holds_min_eigen == (rep.c_min > 0.0));
  CHECK(rep.max_row_norm_s > 0.0);
}

TEST_CASE("degenerate support Gram reports singularity") {
  Matrix x = gen_iid_design(10, 5, 66);
  for (std::size_t i = 0; i < 10; ++i) x(i, 1) = 2.0 * x(i, 0);
  CHECK_THROWS_AS(irrepresentable_lhs(x, {0, 1}, {1.0, 1.0}), SingularGram);
}
