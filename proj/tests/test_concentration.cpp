#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "lassohet/concentration.hpp"

using namespace lassohet;

TEST_CASE("closed-form tail bounds match frozen references") {
  CHECK(gaussian_max_tail_bound(400, 3.5, 1.0) ==
        doctest::Approx(1.749992894546308).epsilon(1e-12));
  CHECK(chi2_max_tail_bound(100, 10, 40.5) ==
        doctest::Approx(77.819635291813555).epsilon(1e-12));
  CHECK_THROWS_AS(chi2_max_tail_bound(100, 10, 9.0), DomainError);
  CHECK_THROWS_AS(gaussian_max_tail_bound(10, 1.0, 0.0), DomainError);
}

TEST_CASE("gaussian max frequencies stay below the bound") {
  // t large enough that the bound is informative at dim = 400
  TailCheckResult res = gaussian_max_check(400, 5.0, 2000, 11);
  CHECK(res.bound < 0.01);
  CHECK(res.passed);
  CHECK(res.empirical <= res.bound + 3.0 * binomial_stderr(res.bound, 2000));
}

TEST_CASE("gaussian max bound is vacuous at small thresholds") {
  TailCheckResult res = gaussian_max_check(100, 1.0, 200, 12);
  CHECK(res.bound == 1.0);  // clipped: 2 n exp(-1/2) >> 1
  CHECK(res.passed);
}

TEST_CASE("chi2 max frequencies stay below the bound") {
  TailCheckResult res = chi2_max_check(100, 10, 40.5, 1000, 13);
  CHECK(res.passed);
  // 2t = 81 is ~8 sd out for chi2_10, so the event is rare
  CHECK(res.empirical < 0.01);
}

TEST_CASE("wishart eigenvalues concentrate inside the doubling interval") {
  TailCheckResult res =
      wishart_eigen_check(500, 10, Matrix::identity(10), 300, 14);
  CHECK(res.bound == doctest::Approx(0.99999938819535905).epsilon(1e-12));
  CHECK(res.passed);
  CHECK(res.empirical == 1.0);  // every trial inside [1/2, 2] at n = 500
  CHECK_FALSE(res.hypothesis_flag);
}

TEST_CASE("wishart check flags a large q/n ratio and bad shapes") {
  TailCheckResult res =
      wishart_eigen_check(20, 10, Matrix::identity(10), 20, 15);
  CHECK(res.hypothesis_flag);
  CHECK_THROWS_AS(wishart_eigen_check(50, 4, Matrix::identity(3), 5, 1),
                  DimensionMismatch);
}

TEST_CASE("row norm exceedance stays below 1/n") {
  TailCheckResult res = row_norm_bound_check(400, 20, 1.0, 400, 16);
  CHECK(res.bound == doctest::Approx(1.0 / 400.0));
  CHECK(res.passed);
  // threshold 2 * max(16q, 4 log n) = 640 vs E||row||^2 = 20: far tail
  CHECK(res.empirical == 0.0);
}

TEST_CASE("checks are deterministic in the seed") {
  TailCheckResult a = gaussian_max_check(50, 2.5, 300, 99);
  TailCheckResult b = gaussian_max_check(50, 2.5, 300, 99);
  CHECK(a.empirical == b.empirical);
  TailCheckResult c = gaussian_max_check(50, 2.5, 300, 100);
  // different seed is allowed to differ (not required, but near-certain)
  CHECK(a.trials == c.trials);
}
