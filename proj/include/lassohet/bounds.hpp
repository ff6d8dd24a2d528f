#pragma once

#include "lassohet/model.hpp"

namespace lassohet {

/// Scalar summaries of a fixed design needed by the deterministic-design
/// theorem quantities.
struct FixedDesignBoundInputs {
  std::size_t n = 0, p = 0, q = 0;
  double sigma2 = 1.0;
  double eta = 0.0;
  double c_min = 0.0;
  double max_row_norm_s = 0.0;
  double l2_beta = 0.0;
  double m_beta = 0.0;
  double h_inf = 0.0;  // ||((1/n) X(S)'X(S))^{-1} b||_inf
};

struct RandomDesignBoundInputs {
  std::size_t n = 0, p = 0, q = 0;
  double sigma2 = 1.0;
  double eta = 0.0;
  double ctilde_min = 0.0;
  double ctilde_max = 0.0;
  double l2_beta = 0.0;
  double m_beta = 0.0;
};

struct BoundReport {
  double value = 0.0;         // clamped to [0,1]
  double raw = 0.0;           // may be negative (vacuous bound)
  double raw_exponent = 0.0;  // exponent inside the exp term
  bool clamped = false;
  std::vector<std::pair<std::string, bool>> hypotheses_met;
};

/// lambda * (eta / sqrt(c_min) + h_inf)
double psi_fixed(const FixedDesignBoundInputs& in, double lambda);

/// 1 - 2 exp{ -n lambda^2 eta^2 / (2 sigma2 ||beta||_2 maxrow) + log p }
BoundReport thm1_probability(const FixedDesignBoundInputs& in, double lambda);

/// M(beta*) / (2 (eta c_min^{-1/2} + sqrt(q) c_min^{-1}))
double corollary1_lambda(const FixedDesignBoundInputs& in);

struct GammaFixedResult {
  double gamma = 0.0;
  double probability = 0.0;  // 1 - 2 exp{-(gamma - 1) log(p+1)}, clamped
  double probability_raw = 0.0;
};

GammaFixedResult gamma_fixed(const FixedDesignBoundInputs& in);

/// Per-coordinate necessary-condition statistics on an orthonormalized
/// support Gram, plus the probability ceiling they imply.
struct CnReport {
  Vector per_j;           // c_{n,j} over the support order
  double c_n = 0.0;       // min_j c_{n,j}
  double ceiling = 0.0;   // 1 - exp(-c_n^2/2) / (sqrt(2 pi) (1 + c_n))
  Vector per_j_ceiling;
  bool gram_is_identity = false;  // (1/n) X(S)'X(S) == I within 1e-8
};

CnReport cn_necessary(const Matrix& x, const SparseCoefficients& beta_star,
                      double sigma2);

/// 2 lambda^2 q / (n ctilde_min) + 3 sigma2 sqrt(ctilde_max) ||beta||_2 / n
double v_star(const RandomDesignBoundInputs& in, double lambda);

/// sqrt(4 sigma2 ||beta||_2 log n sqrt(2 max(16q, 4 log n)) / (n ctilde_min))
double a_quantity(const RandomDesignBoundInputs& in);

/// A + 2 lambda sqrt(q) / ctilde_min
double psi_tilde(const RandomDesignBoundInputs& in, double lambda);

BoundReport thm3_probability(const RandomDesignBoundInputs& in, double lambda);

struct Corollary3Result {
  double lambda = 0.0;
  bool m_exceeds_a = false;      // hypothesis M(beta*) > A
  bool snr_condition_eign = false;  // SNR >= 8 log n sqrt(2 max(4q, log n)) / ctilde_min
};

Corollary3Result corollary3_lambda(const RandomDesignBoundInputs& in);

double gamma_tilde(const RandomDesignBoundInputs& in);

/// The non-sign-consistency ceiling when the IC fails: 1/2.
double ic_violation_ceiling();

}  // namespace lassohet
