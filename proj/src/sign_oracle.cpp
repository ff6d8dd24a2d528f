#include "lassohet/sign_oracle.hpp"

#include <cmath>
#include <limits>
#include <utility>

namespace lassohet {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

int sign(double x) {
  if (x > 0.0) return 1;
  if (x < 0.0) return -1;
  return 0;
}

bool sign_equal(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) {
    throw DimensionMismatch("sign_equal: length mismatch");
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sign(a[i]) != sign(b[i])) return false;
  }
  return true;
}

KktOracle::KktOracle(const Matrix& x, std::vector<std::size_t> support,
                     Vector sign_vector)
    : x_(x), support_(std::move(support)), sign_vector_(std::move(sign_vector)) {
  if (support_.size() != sign_vector_.size()) {
    throw DimensionMismatch("KktOracle: support/sign size mismatch");
  }
  for (std::size_t j = 0, s = 0; j < x_.cols(); ++j) {
    if (s < support_.size() && support_[s] == j) {
      ++s;
    } else {
      complement_.push_back(j);
    }
  }
  xs_ = column_slice(x_, support_);
  gram_ = matmul(transpose(xs_), xs_);

  Vector gram_inv_b;
  try {
    gram_inv_b = solve_spd(gram_, sign_vector_);
  } catch (const NotPositiveDefinite& e) {
    throw SingularGram(std::string("X(S)'X(S) not invertible: ") + e.what());
  }

  // h = ((1/n) X(S)'X(S))^{-1} b = n * Gram^{-1} b
  const double n = static_cast<double>(x_.rows());
  h_.resize(gram_inv_b.size());
  for (std::size_t i = 0; i < gram_inv_b.size(); ++i) {
    h_[i] = n * gram_inv_b[i];
  }

  // d_j = X_j' X(S) Gram^{-1} b
  Vector u = matvec(xs_, gram_inv_b);
  d_.assign(complement_.size(), 0.0);
  for (std::size_t i = 0; i < x_.rows(); ++i) {
    const double ui = u[i];
    if (ui == 0.0) continue;
    for (std::size_t c = 0; c < complement_.size(); ++c) {
      d_[c] += x_(i, complement_[c]) * ui;
    }
  }
}

KktDecomposition KktOracle::decompose(const Vector& epsilon) const {
  if (epsilon.size() != x_.rows()) {
    throw DimensionMismatch("KktOracle::decompose: epsilon size");
  }
  KktDecomposition kkt;
  kkt.support = support_;
  kkt.complement = complement_;
  kkt.d = d_;
  kkt.h = h_;

  Vector xs_t_eps = matvec_transposed(xs_, epsilon);
  try {
    kkt.g = solve_spd(gram_, xs_t_eps);
  } catch (const NotPositiveDefinite& e) {
    throw SingularGram(std::string("X(S)'X(S) not invertible: ") + e.what());
  }

  // r_j = X_j' (P - I) eps / n with P the projection onto span X(S)
  const double n = static_cast<double>(x_.rows());
  Vector proj = matvec(xs_, kkt.g);
  kkt.r.assign(complement_.size(), 0.0);
  for (std::size_t i = 0; i < x_.rows(); ++i) {
    const double wi = (proj[i] - epsilon[i]) / n;
    if (wi == 0.0) continue;
    for (std::size_t c = 0; c < complement_.size(); ++c) {
      kkt.r[c] += x_(i, complement_[c]) * wi;
    }
  }
  return kkt;
}

RecoveryVerdict KktOracle::verdict(const Vector& epsilon,
                                   const SparseCoefficients& beta_star) const {
  return feasible_lambda_interval_from_decomposition(decompose(epsilon),
                                                     beta_star);
}

KktDecomposition kkt_decompose(const Matrix& x, const Vector& epsilon,
                               const SparseCoefficients& beta_star) {
  if (x.rows() != epsilon.size() || x.cols() != beta_star.beta.size()) {
    throw DimensionMismatch("kkt_decompose: dimension mismatch");
  }
  KktOracle oracle(x, beta_star.support, beta_star.sign_vector);
  return oracle.decompose(epsilon);
}

RecoveryVerdict feasible_lambda_interval_from_decomposition(
    const KktDecomposition& kkt, const SparseCoefficients& beta_star) {
  RecoveryVerdict v;
  double lo = 0.0;
  double hi = kInf;
  bool infeasible = false;
  bool tie = false;
  v.diagnostics.reserve(kkt.complement.size() + kkt.support.size());

  // lambda (d_j - 1) < r_j < lambda (d_j + 1)
  for (std::size_t c = 0; c < kkt.complement.size(); ++c) {
    const double d = kkt.d[c];
    const double r = kkt.r[c];
    ConstraintSlack slack{kkt.complement[c], false, 0.0, kInf};

    const double a_low = d - 1.0;
    if (a_low > 0.0) {
      slack.upper = std::min(slack.upper, r / a_low);
    } else if (a_low == 0.0) {
      if (r <= 0.0) {
        infeasible = true;
        if (r == 0.0) tie = true;
      }
    } else {
      const double bound = r / a_low;
      if (bound > 0.0) slack.lower = std::max(slack.lower, bound);
    }

    const double a_high = d + 1.0;
    if (a_high > 0.0) {
      const double bound = r / a_high;
      if (bound > 0.0) slack.lower = std::max(slack.lower, bound);
    } else if (a_high == 0.0) {
      if (r >= 0.0) {
        infeasible = true;
        if (r == 0.0) tie = true;
      }
    } else {
      slack.upper = std::min(slack.upper, r / a_high);
    }

    lo = std::max(lo, slack.lower);
    hi = std::min(hi, slack.upper);
    v.diagnostics.push_back(slack);
  }

  // b_i (beta_i + g_i - lambda h_i) > 0
  for (std::size_t s = 0; s < kkt.support.size(); ++s) {
    const double b = beta_star.sign_vector[s];
    const double c = b * (beta_star.beta[kkt.support[s]] + kkt.g[s]);
    const double slope = b * kkt.h[s];
    ConstraintSlack slack{kkt.support[s], true, 0.0, kInf};
    if (slope > 0.0) {
      slack.upper = c / slope;
    } else if (slope == 0.0) {
      if (c <= 0.0) {
        infeasible = true;
        if (c == 0.0) tie = true;
      }
    } else {
      const double bound = c / slope;
      if (bound > 0.0) slack.lower = bound;
    }
    lo = std::max(lo, slack.lower);
    hi = std::min(hi, slack.upper);
    v.diagnostics.push_back(slack);
  }

  v.feasible_low = lo;
  v.feasible_high = infeasible ? lo : hi;
  v.nonempty = !infeasible && lo < hi;
  v.degenerate_boundary = tie || (!infeasible && lo == hi);
  return v;
}

RecoveryVerdict feasible_lambda_interval(const Matrix& x, const Vector& y,
                                         const SparseCoefficients& beta_star) {
  if (x.rows() != y.size()) {
    throw DimensionMismatch("feasible_lambda_interval: dimension mismatch");
  }
  Vector epsilon(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    double mean = 0.0;
    for (std::size_t j : beta_star.support) {
      mean += x(i, j) * beta_star.beta[j];
    }
    epsilon[i] = y[i] - mean;
  }
  KktOracle oracle(x, beta_star.support, beta_star.sign_vector);
  return oracle.verdict(epsilon, beta_star);
}

Vector compute_U(const Matrix& x, const Vector& epsilon,
                 const SparseCoefficients& beta_star, double lambda) {
  KktDecomposition kkt = kkt_decompose(x, epsilon, beta_star);
  Vector u(kkt.g.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    u[i] = kkt.g[i] - lambda * kkt.h[i];
  }
  return u;
}

Vector compute_V(const Matrix& x, const Vector& epsilon,
                 const SparseCoefficients& beta_star, double lambda) {
  KktDecomposition kkt = kkt_decompose(x, epsilon, beta_star);
  Vector v(kkt.d.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    v[j] = lambda * kkt.d[j] - kkt.r[j];
  }
  return v;
}

SignEvents events(const Matrix& x, const Vector& epsilon,
                  const SparseCoefficients& beta_star, double lambda) {
  KktDecomposition kkt = kkt_decompose(x, epsilon, beta_star);
  SignEvents ev;
  double max_v = 0.0;
  for (std::size_t j = 0; j < kkt.d.size(); ++j) {
    max_v = std::max(max_v, std::abs(lambda * kkt.d[j] - kkt.r[j]));
  }
  ev.m_v = max_v < lambda;
  double max_u = 0.0;
  for (std::size_t i = 0; i < kkt.g.size(); ++i) {
    max_u = std::max(max_u, std::abs(kkt.g[i] - lambda * kkt.h[i]));
  }
  ev.m_u = max_u < beta_star.min_abs;
  return ev;
}

Vector reconstruct_solution(const KktDecomposition& kkt,
                            const SparseCoefficients& beta_star,
                            double lambda) {
  Vector beta(beta_star.beta.size(), 0.0);
  for (std::size_t s = 0; s < kkt.support.size(); ++s) {
    beta[kkt.support[s]] =
        beta_star.beta[kkt.support[s]] + kkt.g[s] - lambda * kkt.h[s];
  }
  return beta;
}

}  // namespace lassohet
