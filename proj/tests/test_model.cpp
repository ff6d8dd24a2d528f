#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "lassohet/model.hpp"
#include "lassohet/rng.hpp"

using namespace lassohet;

TEST_CASE("from_dense extracts support, signs and norms") {
  SparseCoefficients sc =
      SparseCoefficients::from_dense({0.0, 2.5, 0.0, -1.5, 0.0});
  CHECK(sc.support == std::vector<std::size_t>{1, 3});
  CHECK(sc.sign_vector == Vector{1.0, -1.0});
  CHECK(sc.q == 2);
  CHECK(sc.min_abs == 1.5);
  CHECK(sc.l2 == doctest::Approx(std::sqrt(2.5 * 2.5 + 1.5 * 1.5)));
  CHECK_THROWS_AS(SparseCoefficients::from_dense({0.0, 0.0}), InvalidModel);
  CHECK_THROWS_AS(SparseCoefficients::from_dense({1.0, 2.0}), InvalidModel);
}

TEST_CASE("iid design is deterministic in the seed and has N(0,1) moments") {
  Matrix a = gen_iid_design(50, 40, 123);
  Matrix b = gen_iid_design(50, 40, 123);
  CHECK(a == b);
  Matrix c = gen_iid_design(50, 40, 124);
  CHECK(a.data() != c.data());

  Matrix big = gen_iid_design(400, 250, 9);
  double sum = 0.0, sq = 0.0;
  for (double v : big.data()) {
    sum += v;
    sq += v * v;
  }
  const double count = static_cast<double>(big.data().size());
  CHECK(std::abs(sum / count) < 0.01);            // se ~ 0.003
  CHECK(std::abs(sq / count - 1.0) < 0.02);       // se ~ 0.004
}

TEST_CASE("ensemble design reproduces the target covariance") {
  Matrix sigma(3, 3, {1.0, 0.5, 0.2,  //
                      0.5, 1.0, 0.3,  //
                      0.2, 0.3, 1.0});
  GaussianEnsembleSpec spec{sigma, true};
  Matrix x = gen_ensemble_design(20000, spec, 77);
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t b = 0; b < 3; ++b) {
      double s = 0.0;
      for (std::size_t i = 0; i < x.rows(); ++i) s += x(i, a) * x(i, b);
      s /= static_cast<double>(x.rows());
      CHECK(s == doctest::Approx(sigma(a, b)).epsilon(0.05).scale(1.0));
    }
  }
}

TEST_CASE("ensemble spec validation") {
  Matrix bad(2, 2, {1.0, 0.9, 0.2, 1.0});
  CHECK_THROWS_AS(GaussianEnsembleSpec{bad}.validate(), InvalidModel);
  Matrix not_spd(2, 2, {1.0, 1.5, 1.5, 1.0});
  CHECK_THROWS_AS(GaussianEnsembleSpec{not_spd}.validate(),
                  NotPositiveDefinite);
}

TEST_CASE("column normalization hits l2 norm sqrt(n)") {
  Matrix x = gen_iid_design(30, 5, 5);
  Matrix z = normalize_columns_sqrt_n(x);
  for (std::size_t j = 0; j < 5; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < 30; ++i) s += z(i, j) * z(i, j);
    CHECK(s == doctest::Approx(30.0).epsilon(1e-12));
  }
  Matrix with_zero(3, 2);
  with_zero(0, 0) = 1.0;
  CHECK_THROWS_AS(normalize_columns_sqrt_n(with_zero), ZeroColumn);
}

TEST_CASE("example coefficients and the first-table values") {
  SparseCoefficients beta = make_example_beta(1000, 20, 100.0, 5.0);
  CHECK(beta.q == 20);
  CHECK(beta.beta[0] == 100.0);
  CHECK(beta.beta[9] == 100.0);
  CHECK(beta.beta[10] == 5.0);
  CHECK(beta.beta[19] == 5.0);
  CHECK(beta.beta[20] == 0.0);
  CHECK(beta.min_abs == 5.0);
  // frozen reference values for beta_max = 100
  CHECK(beta.l2 == doctest::Approx(316.6228039798).epsilon(1e-10));
  CHECK(snr(beta, 400, 1.0) == doctest::Approx(31.5833220927).epsilon(1e-10));

  // uniform off-table probe
  SparseCoefficients flat = make_example_beta(100, 20, 5.0, 5.0);
  CHECK(flat.l2 == doctest::Approx(5.0 * std::sqrt(20.0)));
  CHECK(snr(flat, 400, 1.0) ==
        doctest::Approx(400.0 * 25.0 / (5.0 * std::sqrt(20.0))));
}

TEST_CASE("second-table coefficients hit the target snr exactly") {
  const double l2_target = 127.4754878398;
  for (double target : {31.5833220927, 78.4464540553, 282.8427124746}) {
    SparseCoefficients beta = table2_beta(1000, 20, 400, target, 1.0,
                                          l2_target);
    CHECK(snr(beta, 400, 1.0) == doctest::Approx(target).epsilon(1e-9));
    CHECK(beta.l2 == doctest::Approx(l2_target).epsilon(1e-9));
  }
  // frozen beta_min / beta_max at the third grid point
  SparseCoefficients b3 = table2_beta(1000, 20, 400, 39.4514921576, 1.0,
                                      l2_target);
  CHECK(b3.min_abs == doctest::Approx(3.5458067519).epsilon(1e-9));
  CHECK(b3.beta[0] == doctest::Approx(40.1550402126).epsilon(1e-9));
  CHECK_THROWS_AS(table2_beta(1000, 20, 400, 1e9, 1.0, l2_target),
                  InvalidModel);
}

TEST_CASE("poisson-like noise has conditional variance sigma2 |x_i' beta|") {
  Matrix x = gen_iid_design(6, 5, 31);
  SparseCoefficients beta =
      SparseCoefficients::from_dense({2.0, -1.0, 0.0, 0.0, 0.0});
  NoiseSpec spec{NoiseKind::PoissonLike, 2.0, 0.0};
  // per-observation empirical variance over many independent draws
  const std::size_t reps = 20000;
  Vector sq(6, 0.0);
  for (std::size_t r = 0; r < reps; ++r) {
    Vector eps = gen_noise(x, beta, spec, mix_seed(55, 0, 0, r));
    for (std::size_t i = 0; i < 6; ++i) sq[i] += eps[i] * eps[i];
  }
  for (std::size_t i = 0; i < 6; ++i) {
    const double mean = 2.0 * x(i, 0) - 1.0 * x(i, 1);
    const double want = 2.0 * std::abs(mean);
    CHECK(sq[i] / static_cast<double>(reps) ==
          doctest::Approx(want).epsilon(0.05));
  }
}

TEST_CASE("matched homoscedastic noise matches the average variance") {
  Matrix x = gen_iid_design(200, 10, 32);
  SparseCoefficients beta = make_example_beta(10, 4, 3.0, 1.0);
  NoiseSpec spec{NoiseKind::HomoscedasticMatched, 1.5, 0.0};
  double avg_abs = 0.0;
  for (std::size_t i = 0; i < 200; ++i) {
    double m = 0.0;
    for (std::size_t j : beta.support) m += x(i, j) * beta.beta[j];
    avg_abs += std::abs(m);
  }
  avg_abs /= 200.0;
  const std::size_t reps = 2000;
  double sq = 0.0;
  for (std::size_t r = 0; r < reps; ++r) {
    Vector eps = gen_noise(x, beta, spec, mix_seed(56, 0, 0, r));
    for (double e : eps) sq += e * e;
  }
  CHECK(sq / static_cast<double>(reps * 200) ==
        doctest::Approx(1.5 * avg_abs).epsilon(0.03));
}

TEST_CASE("noise never reads the irrelevant columns") {
  Matrix x1 = gen_iid_design(15, 8, 60);
  Matrix x2 = x1;
  SparseCoefficients beta =
      SparseCoefficients::from_dense({1.0, -2.0, 0, 0, 0, 0, 0, 0});
  for (std::size_t i = 0; i < 15; ++i) {
    for (std::size_t j = 2; j < 8; ++j) x2(i, j) = 99.0 + static_cast<double>(j);
  }
  NoiseSpec spec{NoiseKind::PoissonLike, 1.0, 0.0};
  CHECK(gen_noise(x1, beta, spec, 5) == gen_noise(x2, beta, spec, 5));
}

TEST_CASE("dataset assembles y = X beta + eps") {
  Matrix x = gen_iid_design(10, 6, 70);
  SparseCoefficients beta = make_example_beta(6, 2, 4.0, 2.0);
  NoiseSpec spec{NoiseKind::HomoscedasticFixed, 1.0, 0.25};
  Dataset d = make_dataset(x, beta, spec, 91);
  for (std::size_t i = 0; i < 10; ++i) {
    double m = 0.0;
    for (std::size_t j = 0; j < 6; ++j) m += d.x(i, j) * d.beta_star.beta[j];
    CHECK(d.y[i] == doctest::Approx(m + d.epsilon[i]).epsilon(1e-14));
  }
}
