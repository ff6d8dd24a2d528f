#pragma once

#include "lassohet/model.hpp"

namespace lassohet {

struct SingularGram : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Pieces of the KKT conditions for a sign-correct solution, split into
/// their lambda-free and lambda-linear parts. Over the complement:
/// d_j = X_j' X(S) (X(S)'X(S))^{-1} b and r_j = X_j' (P - I) eps / n with
/// P the projection onto the span of X(S). Over the support:
/// g = ((1/n) X(S)'X(S))^{-1} (1/n) X(S)' eps and h = ((1/n)X(S)'X(S))^{-1} b.
struct KktDecomposition {
  std::vector<std::size_t> support;
  std::vector<std::size_t> complement;
  Vector d;  // |S^c|
  Vector r;  // |S^c|
  Vector g;  // |S|
  Vector h;  // |S|
};

struct ConstraintSlack {
  std::size_t column = 0;   // column index in X
  bool from_support = false;
  double lower = 0.0;       // contributed lower bound on lambda
  double upper = 0.0;       // contributed upper bound (may be +inf)
};

/// The set of penalty levels at which a sign-correct Lasso solution
/// exists, as an interval. Upper end +inf is represented by the usual
/// IEEE infinity and serialized as "inf".
struct RecoveryVerdict {
  double feasible_low = 0.0;
  double feasible_high = 0.0;
  bool nonempty = false;
  bool boundary_low_strict = true;
  bool boundary_high_strict = true;
  bool degenerate_boundary = false;  // zero-width or tie cases, counted fail
  std::vector<ConstraintSlack> diagnostics;
};

int sign(double x);

/// Precomputes everything that depends only on (X, S, b): the support
/// Gram factor, d and h. One instance serves every noise draw and every
/// coefficient vector sharing the same support and sign pattern.
class KktOracle {
 public:
  KktOracle(const Matrix& x, std::vector<std::size_t> support,
            Vector sign_vector);

  KktDecomposition decompose(const Vector& epsilon) const;
  RecoveryVerdict verdict(const Vector& epsilon,
                          const SparseCoefficients& beta_star) const;

  const std::vector<std::size_t>& complement() const { return complement_; }

 private:
  const Matrix& x_;
  std::vector<std::size_t> support_;
  std::vector<std::size_t> complement_;
  Vector sign_vector_;
  Matrix xs_;
  Matrix gram_;
  Vector d_;
  Vector h_;
};

/// Elementwise sign equality with exact-zero semantics.
bool sign_equal(const Vector& a, const Vector& b);

KktDecomposition kkt_decompose(const Matrix& x, const Vector& epsilon,
                               const SparseCoefficients& beta_star);

/// Closed-form feasible-lambda interval from the KKT conditions: over the
/// complement lambda(d_j - 1) < r_j < lambda(d_j + 1), over the support
/// b_i (beta_i + g_i - lambda h_i) > 0. Both families strict; a zero-width
/// or boundary-only intersection counts as failure and is flagged.
RecoveryVerdict feasible_lambda_interval(const Matrix& x, const Vector& y,
                                         const SparseCoefficients& beta_star);

RecoveryVerdict feasible_lambda_interval_from_decomposition(
    const KktDecomposition& kkt, const SparseCoefficients& beta_star);

/// U = g - lambda h over the support.
Vector compute_U(const Matrix& x, const Vector& epsilon,
                 const SparseCoefficients& beta_star, double lambda);

/// V_j = lambda d_j - r_j over the complement.
Vector compute_V(const Matrix& x, const Vector& epsilon,
                 const SparseCoefficients& beta_star, double lambda);

struct SignEvents {
  bool m_v = false;  // max_j |V_j| < lambda
  bool m_u = false;  // max_i |U_i| < M(beta*)
};

SignEvents events(const Matrix& x, const Vector& epsilon,
                  const SparseCoefficients& beta_star, double lambda);

/// The candidate solution over the support for a given lambda:
/// beta(S) + g - lambda h, zero elsewhere.
Vector reconstruct_solution(const KktDecomposition& kkt,
                            const SparseCoefficients& beta_star,
                            double lambda);

}  // namespace lassohet
