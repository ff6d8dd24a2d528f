#include "lassohet/solver.hpp"

#include <cmath>

namespace lassohet {

double objective(const Matrix& x, const Vector& y, const Vector& beta,
                 double lambda) {
  if (x.rows() != y.size() || x.cols() != beta.size()) {
    throw DimensionMismatch("objective: dimension mismatch");
  }
  if (lambda < 0.0) throw std::invalid_argument("objective: lambda < 0");
  double rss = 0.0;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    double r = y[i];
    for (std::size_t j = 0; j < x.cols(); ++j) r -= x(i, j) * beta[j];
    rss += r * r;
  }
  double l1 = 0.0;
  for (double b : beta) l1 += std::abs(b);
  return rss / (2.0 * static_cast<double>(x.rows())) + lambda * l1;
}

double soft_threshold(double z, double t) {
  if (z > t) return z - t;
  if (z < -t) return z + t;
  return 0.0;
}

double kkt_violation(const Matrix& x, const Vector& y, const Vector& beta,
                     double lambda) {
  const std::size_t n = x.rows();
  Vector resid(n);
  for (std::size_t i = 0; i < n; ++i) {
    double r = y[i];
    for (std::size_t j = 0; j < x.cols(); ++j) r -= x(i, j) * beta[j];
    resid[i] = r;
  }
  double worst = 0.0;
  for (std::size_t j = 0; j < x.cols(); ++j) {
    double g = 0.0;
    for (std::size_t i = 0; i < n; ++i) g += x(i, j) * resid[i];
    g /= static_cast<double>(n);
    if (beta[j] != 0.0) {
      worst = std::max(worst, std::abs(g - lambda * (beta[j] > 0 ? 1.0 : -1.0)));
    } else {
      worst = std::max(worst, std::max(0.0, std::abs(g) - lambda));
    }
  }
  return worst;
}

LassoSolution coordinate_descent(const Matrix& x, const Vector& y,
                                 double lambda, double tol,
                                 std::size_t max_iter) {
  const std::size_t n = x.rows();
  const std::size_t p = x.cols();
  if (y.size() != n) throw DimensionMismatch("coordinate_descent: y size");
  if (lambda < 0.0) {
    throw std::invalid_argument("coordinate_descent: lambda < 0");
  }
  if (tol < 0.0) tol = 1e-8 * (1.0 + inf_norm(y));

  Vector col_sq(p, 0.0);  // (1/n) ||X_j||^2
  for (std::size_t j = 0; j < p; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x(i, j) * x(i, j);
    if (s == 0.0) {
      throw std::invalid_argument("coordinate_descent: zero column " +
                                  std::to_string(j));
    }
    col_sq[j] = s / static_cast<double>(n);
  }

  Vector beta(p, 0.0);
  Vector resid = y;  // Y - X beta
  LassoSolution sol;
  sol.lambda = lambda;
  sol.converged = false;
  for (std::size_t sweep = 0; sweep < max_iter; ++sweep) {
    double max_update = 0.0;
    for (std::size_t j = 0; j < p; ++j) {
      double rho = 0.0;
      for (std::size_t i = 0; i < n; ++i) rho += x(i, j) * resid[i];
      rho = rho / static_cast<double>(n) + col_sq[j] * beta[j];
      const double next = soft_threshold(rho, lambda) / col_sq[j];
      const double delta = next - beta[j];
      if (delta != 0.0) {
        for (std::size_t i = 0; i < n; ++i) resid[i] -= x(i, j) * delta;
        beta[j] = next;
        max_update = std::max(max_update, std::abs(delta));
      }
    }
    sol.iterations = sweep + 1;
    if (max_update < tol) {
      sol.converged = true;
      break;
    }
  }
  sol.beta_hat = std::move(beta);
  sol.objective = objective(x, y, sol.beta_hat, lambda);
  sol.kkt_violation = kkt_violation(x, y, sol.beta_hat, lambda);
  return sol;
}

std::vector<LassoSolution> lambda_grid_path(const Matrix& x, const Vector& y,
                                            const Vector& grid) {
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (!(grid[k] > 0.0) || (k > 0 && !(grid[k] < grid[k - 1]))) {
      throw std::invalid_argument(
          "lambda_grid_path: grid must be strictly descending and positive");
    }
  }
  std::vector<LassoSolution> path;
  path.reserve(grid.size());
  const std::size_t n = x.rows();
  const std::size_t p = x.cols();
  const double tol = 1e-8 * (1.0 + inf_norm(y));

  Vector col_sq(p, 0.0);
  for (std::size_t j = 0; j < p; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x(i, j) * x(i, j);
    col_sq[j] = s / static_cast<double>(n);
  }

  Vector beta(p, 0.0);  // warm start carried along the grid
  Vector resid = y;
  for (double lambda : grid) {
    LassoSolution sol;
    sol.lambda = lambda;
    sol.converged = false;
    for (std::size_t sweep = 0; sweep < 100000; ++sweep) {
      double max_update = 0.0;
      for (std::size_t j = 0; j < p; ++j) {
        double rho = 0.0;
        for (std::size_t i = 0; i < n; ++i) rho += x(i, j) * resid[i];
        rho = rho / static_cast<double>(n) + col_sq[j] * beta[j];
        const double next = soft_threshold(rho, lambda) / col_sq[j];
        const double delta = next - beta[j];
        if (delta != 0.0) {
          for (std::size_t i = 0; i < n; ++i) resid[i] -= x(i, j) * delta;
          beta[j] = next;
          max_update = std::max(max_update, std::abs(delta));
        }
      }
      sol.iterations = sweep + 1;
      if (max_update < tol) {
        sol.converged = true;
        break;
      }
    }
    sol.beta_hat = beta;
    sol.objective = objective(x, y, beta, lambda);
    sol.kkt_violation = kkt_violation(x, y, beta, lambda);
    path.push_back(std::move(sol));
  }
  return path;
}

Vector default_lambda_grid(const Matrix& x, const Vector& y,
                           std::size_t points, double ratio) {
  const double top = inf_norm(matvec_transposed(x, y)) /
                     static_cast<double>(x.rows());
  Vector grid(points);
  const double log_top = std::log(top);
  const double log_bot = std::log(top * ratio);
  for (std::size_t k = 0; k < points; ++k) {
    const double f = points == 1
                         ? 0.0
                         : static_cast<double>(k) /
                               static_cast<double>(points - 1);
    grid[k] = std::exp(log_top + f * (log_bot - log_top));
  }
  return grid;
}

}  // namespace lassohet
