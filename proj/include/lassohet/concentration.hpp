#pragma once

#include <cstdint>

#include "lassohet/model.hpp"

namespace lassohet {

struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Outcome of a Monte Carlo check of a closed-form tail bound. The bound
/// passes when the empirical frequency stays below bound + 3 binomial
/// standard errors.
struct TailCheckResult {
  double bound = 0.0;
  double empirical = 0.0;
  std::size_t trials = 0;
  bool passed = false;
  bool hypothesis_flag = false;  // raised when q/n is not small
};

/// 2 n exp(-t^2 / (2 max_var)) for the max of n centered Gaussians.
double gaussian_max_tail_bound(std::size_t n, double t, double max_var);

/// n exp(-t (1 - 2 sqrt(q/t))) bounding P[max chi2_q > 2t]; requires t > q.
double chi2_max_tail_bound(std::size_t n, std::size_t q, double t);

/// Frequency of all eigenvalues of (1/n) X'X falling inside
/// [ctilde_min/2, 2 ctilde_max] for rows i.i.d. N(0, Sigma11), vs the
/// 1 - 2 exp(-0.03 n) floor.
TailCheckResult wishart_eigen_check(std::size_t n, std::size_t q,
                                    const Matrix& sigma11, std::size_t trials,
                                    std::uint64_t seed);

/// Frequency of max_i ||x_i(S)||^2 >= 2 ctilde_max max(16q, 4 log n) for
/// rows with per-coordinate variance ctilde_max, vs the 1/n ceiling.
TailCheckResult row_norm_bound_check(std::size_t n, std::size_t q,
                                     double ctilde_max, std::size_t trials,
                                     std::uint64_t seed);

/// Empirical frequency of max_i |Z_i| >= t over dim i.i.d. N(0,1), checked
/// against gaussian_max_tail_bound.
TailCheckResult gaussian_max_check(std::size_t dim, double t,
                                   std::size_t trials, std::uint64_t seed);

/// Empirical frequency of max of dim i.i.d. chi2_q exceeding 2t, checked
/// against chi2_max_tail_bound.
TailCheckResult chi2_max_check(std::size_t dim, std::size_t q, double t,
                               std::size_t trials, std::uint64_t seed);

double binomial_stderr(double p_hat, std::size_t trials);

}  // namespace lassohet
