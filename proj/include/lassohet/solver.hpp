#pragma once

#include "lassohet/linalg.hpp"

namespace lassohet {

struct LassoSolution {
  Vector beta_hat;
  double lambda = 0.0;
  std::size_t iterations = 0;  // completed sweeps
  double objective = 0.0;
  double kkt_violation = 0.0;
  bool converged = true;
};

/// (1/2n) ||Y - X beta||_2^2 + lambda ||beta||_1
double objective(const Matrix& x, const Vector& y, const Vector& beta,
                 double lambda);

/// sign(z) * max(|z| - t, 0); returns 0 at the tie |z| == t
double soft_threshold(double z, double t);

/// Cyclic coordinate descent with cached column norms. Stops when the
/// largest coordinate update in a sweep drops below tol (default
/// 1e-8 * (1 + ||Y||_inf)) or after max_iter sweeps. Non-convergence
/// returns the best iterate with converged=false instead of throwing.
LassoSolution coordinate_descent(const Matrix& x, const Vector& y,
                                 double lambda, double tol = -1.0,
                                 std::size_t max_iter = 100000);

/// Warm-started solutions along a strictly descending positive grid.
std::vector<LassoSolution> lambda_grid_path(const Matrix& x, const Vector& y,
                                            const Vector& grid);

/// 100 log-spaced points from ||X'Y||_inf/n down to 1e-4 of it.
Vector default_lambda_grid(const Matrix& x, const Vector& y,
                           std::size_t points = 100, double ratio = 1e-4);

/// Max subgradient-condition violation of beta at the given lambda.
double kkt_violation(const Matrix& x, const Vector& y, const Vector& beta,
                     double lambda);

}  // namespace lassohet
