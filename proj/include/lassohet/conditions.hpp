#pragma once

#include "lassohet/model.hpp"
#include "lassohet/sign_oracle.hpp"

namespace lassohet {

struct ConditionReport {
  double ic_lhs = 0.0;
  double eta = 1.0;  // 1 - ic_lhs, may be <= 0
  double c_min = 0.0;
  double c_max = 0.0;
  double max_row_norm_s = 0.0;
  bool holds_ic = false;
  bool holds_min_eigen = false;
};

/// ||X(S^c)' X(S) (X(S)'X(S))^{-1} b||_inf; 0 when S^c is empty.
double irrepresentable_lhs(const Matrix& x,
                           const std::vector<std::size_t>& support,
                           const Vector& sign_vector);

/// ||Sigma21 Sigma11^{-1} b||_inf from the covariance blocks.
double population_ic_lhs(const GaussianEnsembleSpec& spec,
                         const std::vector<std::size_t>& support,
                         const Vector& sign_vector);

/// Extreme eigenvalues of (1/n) X(S)'X(S); c_min reported as 0 when the
/// support Gram is numerically singular.
std::pair<double, double> gram_eigen_bounds(
    const Matrix& x, const std::vector<std::size_t>& support);

/// max over rows of the l2 norm restricted to the support columns.
double max_row_norm_s(const Matrix& x,
                      const std::vector<std::size_t>& support);

ConditionReport condition_report(const Matrix& x,
                                 const std::vector<std::size_t>& support,
                                 const Vector& sign_vector,
                                 double eta_threshold = 0.0);

}  // namespace lassohet
