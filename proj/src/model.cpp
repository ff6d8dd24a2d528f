#include "lassohet/model.hpp"

#include <cmath>
#include <utility>

#include "lassohet/rng.hpp"

namespace lassohet {

SparseCoefficients SparseCoefficients::from_dense(Vector beta) {
  check_finite(beta, "beta");
  SparseCoefficients sc;
  sc.beta = std::move(beta);
  for (std::size_t j = 0; j < sc.beta.size(); ++j) {
    if (sc.beta[j] != 0.0) {
      sc.support.push_back(j);
      sc.sign_vector.push_back(sc.beta[j] > 0.0 ? 1.0 : -1.0);
    }
  }
  sc.q = sc.support.size();
  if (sc.q == 0 || sc.q >= sc.beta.size()) {
    throw InvalidModel("SparseCoefficients: need 0 < q < p");
  }
  sc.min_abs = std::abs(sc.beta[sc.support[0]]);
  for (std::size_t j : sc.support) {
    sc.min_abs = std::min(sc.min_abs, std::abs(sc.beta[j]));
  }
  sc.l2 = l2_norm(sc.beta);
  return sc;
}

void GaussianEnsembleSpec::validate() const {
  if (sigma.rows() != sigma.cols()) {
    throw InvalidModel("GaussianEnsembleSpec: Sigma not square");
  }
  for (std::size_t i = 0; i < sigma.rows(); ++i) {
    for (std::size_t j = i + 1; j < sigma.cols(); ++j) {
      if (std::abs(sigma(i, j) - sigma(j, i)) > 1e-10) {
        throw InvalidModel("GaussianEnsembleSpec: Sigma not symmetric");
      }
    }
    if (unit_diagonal && std::abs(sigma(i, i) - 1.0) > 1e-12) {
      throw InvalidModel("GaussianEnsembleSpec: diagonal entry != 1");
    }
  }
  Cholesky check(sigma);  // throws NotPositiveDefinite if Sigma is not SPD
  (void)check;
}

Matrix gen_iid_design(std::size_t n, std::size_t p, std::uint64_t seed) {
  if (n < 1 || p < 1) throw InvalidModel("gen_iid_design: n, p must be >= 1");
  Matrix x(n, p);
  GaussianRng rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < p; ++j) x(i, j) = rng.next();
  }
  return x;
}

Matrix gen_ensemble_design(std::size_t n, const GaussianEnsembleSpec& spec,
                           std::uint64_t seed) {
  spec.validate();
  const std::size_t p = spec.sigma.rows();
  // row = L z with Sigma = L L^T, so Cov(row) = Sigma
  Matrix lower(p, p);
  {
    const Matrix& s = spec.sigma;
    for (std::size_t j = 0; j < p; ++j) {
      double d = s(j, j);
      for (std::size_t t = 0; t < j; ++t) d -= lower(j, t) * lower(j, t);
      lower(j, j) = std::sqrt(d);
      for (std::size_t i = j + 1; i < p; ++i) {
        double v = s(i, j);
        for (std::size_t t = 0; t < j; ++t) v -= lower(i, t) * lower(j, t);
        lower(i, j) = v / lower(j, j);
      }
    }
  }
  Matrix x(n, p);
  GaussianRng rng(seed);
  Vector z(p);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < p; ++j) z[j] = rng.next();
    for (std::size_t j = 0; j < p; ++j) {
      double s = 0.0;
      for (std::size_t t = 0; t <= j; ++t) s += lower(j, t) * z[t];
      x(i, j) = s;
    }
  }
  return x;
}

Matrix normalize_columns_sqrt_n(const Matrix& x) {
  const std::size_t n = x.rows();
  const double target = std::sqrt(static_cast<double>(n));
  Matrix out = x;
  for (std::size_t j = 0; j < x.cols(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x(i, j) * x(i, j);
    if (s == 0.0) {
      throw ZeroColumn("normalize_columns_sqrt_n: column " + std::to_string(j));
    }
    const double scale = target / std::sqrt(s);
    for (std::size_t i = 0; i < n; ++i) out(i, j) *= scale;
  }
  return out;
}

SparseCoefficients make_example_beta(std::size_t p, std::size_t q,
                                     double beta_max, double beta_min) {
  if (q == 0 || q % 2 != 0 || q >= p) {
    throw InvalidModel("make_example_beta: need even q with 0 < q < p");
  }
  if (!(beta_max >= beta_min) || !(beta_min > 0.0)) {
    throw InvalidModel("make_example_beta: need beta_max >= beta_min > 0");
  }
  Vector beta(p, 0.0);
  for (std::size_t j = 0; j < q / 2; ++j) beta[j] = beta_max;
  for (std::size_t j = q / 2; j < q; ++j) beta[j] = beta_min;
  return SparseCoefficients::from_dense(std::move(beta));
}

SparseCoefficients table2_beta(std::size_t p, std::size_t q, std::size_t n,
                               double target_snr, double sigma2,
                               double l2_target) {
  if (q == 0 || q % 2 != 0 || q >= p) {
    throw InvalidModel("table2_beta: need even q with 0 < q < p");
  }
  const double beta_min_sq =
      target_snr * sigma2 * l2_target / static_cast<double>(n);
  const double beta_max_sq =
      l2_target * l2_target / (static_cast<double>(q) / 2.0) - beta_min_sq;
  if (!(beta_min_sq > 0.0) || beta_max_sq < beta_min_sq) {
    throw InvalidModel("table2_beta: infeasible target");
  }
  return make_example_beta(p, q, std::sqrt(beta_max_sq),
                           std::sqrt(beta_min_sq));
}

Vector gen_noise(const Matrix& x, const SparseCoefficients& beta_star,
                 const NoiseSpec& spec, std::uint64_t seed) {
  spec.validate();
  if (x.cols() != beta_star.beta.size()) {
    throw DimensionMismatch("gen_noise: dimension mismatch");
  }
  const std::size_t n = x.rows();
  // mean only depends on the relevant columns; the irrelevant ones are
  // never read, so eps is independent of X(S^c) given X(S)
  Vector mean_abs(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j : beta_star.support) s += x(i, j) * beta_star.beta[j];
    mean_abs[i] = std::abs(s);
  }
  Vector eps(n);
  GaussianRng rng(seed);
  switch (spec.kind) {
    case NoiseKind::PoissonLike:
      for (std::size_t i = 0; i < n; ++i) {
        eps[i] = std::sqrt(spec.sigma2 * mean_abs[i]) * rng.next();
      }
      break;
    case NoiseKind::HomoscedasticMatched: {
      double avg = 0.0;
      for (double m : mean_abs) avg += m;
      avg /= static_cast<double>(n);
      const double sd = std::sqrt(spec.sigma2 * avg);
      for (std::size_t i = 0; i < n; ++i) eps[i] = sd * rng.next();
      break;
    }
    case NoiseKind::HomoscedasticFixed: {
      const double sd = std::sqrt(spec.fixed_variance);
      for (std::size_t i = 0; i < n; ++i) eps[i] = sd * rng.next();
      break;
    }
  }
  return eps;
}

double snr(const SparseCoefficients& beta_star, std::size_t n, double sigma2) {
  if (!(sigma2 > 0.0)) throw InvalidModel("snr: sigma2 must be > 0");
  return static_cast<double>(n) * beta_star.min_abs * beta_star.min_abs /
         (sigma2 * beta_star.l2);
}

Vector response(const Matrix& x, const SparseCoefficients& beta_star,
                const Vector& epsilon) {
  if (x.rows() != epsilon.size() || x.cols() != beta_star.beta.size()) {
    throw DimensionMismatch("response: dimension mismatch");
  }
  Vector y(x.rows());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j : beta_star.support) s += x(i, j) * beta_star.beta[j];
    y[i] = s + epsilon[i];
  }
  return y;
}

Dataset make_dataset(Matrix x, SparseCoefficients beta_star,
                     const NoiseSpec& spec, std::uint64_t seed) {
  Dataset d;
  d.epsilon = gen_noise(x, beta_star, spec, seed);
  d.y = response(x, beta_star, d.epsilon);
  d.x = std::move(x);
  d.beta_star = std::move(beta_star);
  d.noise = spec;
  d.seed = seed;
  return d;
}

}  // namespace lassohet
