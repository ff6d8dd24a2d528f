#include "lassohet/conditions.hpp"

#include <cmath>

namespace lassohet {

double irrepresentable_lhs(const Matrix& x,
                           const std::vector<std::size_t>& support,
                           const Vector& sign_vector) {
  if (support.size() == x.cols()) return 0.0;  // empty S^c, empty max
  KktOracle oracle(x, support, sign_vector);
  KktDecomposition kkt = oracle.decompose(Vector(x.rows(), 0.0));
  return inf_norm(kkt.d);
}

double population_ic_lhs(const GaussianEnsembleSpec& spec,
                         const std::vector<std::size_t>& support,
                         const Vector& sign_vector) {
  const std::size_t p = spec.sigma.rows();
  std::vector<std::size_t> complement;
  for (std::size_t j = 0, s = 0; j < p; ++j) {
    if (s < support.size() && support[s] == j) {
      ++s;
    } else {
      complement.push_back(j);
    }
  }
  const std::size_t q = support.size();
  Matrix sigma11(q, q);
  for (std::size_t a = 0; a < q; ++a) {
    for (std::size_t b = 0; b < q; ++b) {
      sigma11(a, b) = spec.sigma(support[a], support[b]);
    }
  }
  Vector inv_b = solve_spd(sigma11, sign_vector);
  double worst = 0.0;
  for (std::size_t j : complement) {
    double s = 0.0;
    for (std::size_t b = 0; b < q; ++b) {
      s += spec.sigma(j, support[b]) * inv_b[b];
    }
    worst = std::max(worst, std::abs(s));
  }
  return worst;
}

std::pair<double, double> gram_eigen_bounds(
    const Matrix& x, const std::vector<std::size_t>& support) {
  const std::size_t q = support.size();
  Matrix xs = column_slice(x, support);
  Matrix gram = matmul(transpose(xs), xs);
  const double n = static_cast<double>(x.rows());
  for (auto& v : gram.data()) v /= n;
  Vector ev = symmetric_eigenvalues(gram);
  double c_min = q > 0 ? ev.front() : 0.0;
  double c_max = q > 0 ? ev.back() : 0.0;
  if (c_min < 0.0 && c_min > -1e-10) c_min = 0.0;
  return {c_min, c_max};
}

double max_row_norm_s(const Matrix& x,
                      const std::vector<std::size_t>& support) {
  double worst = 0.0;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j : support) s += x(i, j) * x(i, j);
    worst = std::max(worst, s);
  }
  return std::sqrt(worst);
}

ConditionReport condition_report(const Matrix& x,
                                 const std::vector<std::size_t>& support,
                                 const Vector& sign_vector,
                                 double eta_threshold) {
  ConditionReport rep;
  rep.ic_lhs = irrepresentable_lhs(x, support, sign_vector);
  rep.eta = 1.0 - rep.ic_lhs;
  auto [c_min, c_max] = gram_eigen_bounds(x, support);
  rep.c_min = c_min;
  rep.c_max = c_max;
  rep.max_row_norm_s = max_row_norm_s(x, support);
  rep.holds_ic = rep.ic_lhs <= 1.0 - eta_threshold;
  rep.holds_min_eigen = rep.c_min > 0.0;
  return rep;
}

}  // namespace lassohet
