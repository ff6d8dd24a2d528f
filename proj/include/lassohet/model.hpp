#pragma once

#include <cstdint>

#include "lassohet/linalg.hpp"

namespace lassohet {

struct InvalidModel : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct ZeroColumn : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// True coefficient vector with its sparsity metadata.
struct SparseCoefficients {
  Vector beta;                       // length p
  std::vector<std::size_t> support;  // ordered indices of nonzeros
  Vector sign_vector;                // +-1 over the support
  double min_abs = 0.0;              // smallest |beta_j| over the support
  double l2 = 0.0;
  std::size_t q = 0;

  static SparseCoefficients from_dense(Vector beta);
};

enum class NoiseKind { PoissonLike, HomoscedasticMatched, HomoscedasticFixed };

struct NoiseSpec {
  NoiseKind kind = NoiseKind::PoissonLike;
  double sigma2 = 1.0;
  double fixed_variance = 0.0;  // only read for HomoscedasticFixed

  void validate() const {
    if (!(sigma2 > 0.0)) throw InvalidModel("NoiseSpec: sigma2 must be > 0");
    if (kind == NoiseKind::HomoscedasticFixed && !(fixed_variance >= 0.0)) {
      throw InvalidModel("NoiseSpec: fixed variance must be >= 0");
    }
  }
};

/// Covariance for row-i.i.d. Gaussian designs.
struct GaussianEnsembleSpec {
  Matrix sigma;  // p x p
  bool unit_diagonal = true;

  void validate() const;
};

struct Dataset {
  Matrix x;
  SparseCoefficients beta_star;
  Vector epsilon;
  Vector y;
  NoiseSpec noise;
  std::uint64_t seed = 0;
};

/// n x p matrix with i.i.d. N(0,1) entries, filled row-major from the seed.
Matrix gen_iid_design(std::size_t n, std::size_t p, std::uint64_t seed);

/// n rows i.i.d. N(0, Sigma) via the Cholesky factor of Sigma.
Matrix gen_ensemble_design(std::size_t n, const GaussianEnsembleSpec& spec,
                           std::uint64_t seed);

/// Rescales every column to l2 norm sqrt(n).
Matrix normalize_columns_sqrt_n(const Matrix& x);

/// First q/2 entries beta_max, next q/2 beta_min, rest zero.
SparseCoefficients make_example_beta(std::size_t p, std::size_t q,
                                     double beta_max, double beta_min);

/// Coefficients with a target SNR at fixed ||beta||_2:
/// beta_min = sqrt(snr * sigma2 * l2_target / n),
/// beta_max = sqrt(l2_target^2 / (q/2) - beta_min^2).
SparseCoefficients table2_beta(std::size_t p, std::size_t q, std::size_t n,
                               double target_snr, double sigma2,
                               double l2_target);

/// Noise draw. PoissonLike: independent N(0, sigma2*|x_i' beta|). Matched:
/// common variance sigma2 * mean_i |x_i' beta|. Fixed: the given variance.
/// Reads only X(S) * beta(S), never the irrelevant columns.
Vector gen_noise(const Matrix& x, const SparseCoefficients& beta_star,
                 const NoiseSpec& spec, std::uint64_t seed);

/// n * M(beta)^2 / (sigma2 * ||beta||_2)
double snr(const SparseCoefficients& beta_star, std::size_t n, double sigma2);

/// Y = X beta + epsilon
Vector response(const Matrix& x, const SparseCoefficients& beta_star,
                const Vector& epsilon);

Dataset make_dataset(Matrix x, SparseCoefficients beta_star,
                     const NoiseSpec& spec, std::uint64_t seed);

}  // namespace lassohet
