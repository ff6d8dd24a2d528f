#include "lassohet/bounds.hpp"

#include <cmath>

namespace lassohet {

namespace {

constexpr double kSqrt2Pi = 2.5066282746310005024;

double clamp01(double x) { return x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x); }

}  // namespace

double psi_fixed(const FixedDesignBoundInputs& in, double lambda) {
  return lambda * (in.eta / std::sqrt(in.c_min) + in.h_inf);
}

BoundReport thm1_probability(const FixedDesignBoundInputs& in, double lambda) {
  BoundReport rep;
  const double n = static_cast<double>(in.n);
  rep.raw_exponent =
      -n * lambda * lambda * in.eta * in.eta /
          (2.0 * in.sigma2 * in.l2_beta * in.max_row_norm_s) +
      std::log(static_cast<double>(in.p));
  rep.raw = 1.0 - 2.0 * std::exp(rep.raw_exponent);
  rep.value = clamp01(rep.raw);
  rep.clamped = rep.value != rep.raw;
  rep.hypotheses_met.emplace_back("M(beta) > Psi(lambda)",
                                  in.m_beta > psi_fixed(in, lambda));
  rep.hypotheses_met.emplace_back("IC with positive eta", in.eta > 0.0);
  rep.hypotheses_met.emplace_back("min-eigen positive", in.c_min > 0.0);
  return rep;
}

double corollary1_lambda(const FixedDesignBoundInputs& in) {
  const double root = std::sqrt(in.c_min);
  return in.m_beta /
         (2.0 * (in.eta / root + std::sqrt(static_cast<double>(in.q)) / in.c_min));
}

GammaFixedResult gamma_fixed(const FixedDesignBoundInputs& in) {
  GammaFixedResult res;
  const double n = static_cast<double>(in.n);
  const double snr = n * in.m_beta * in.m_beta / (in.sigma2 * in.l2_beta);
  const double denom_core =
      in.eta / std::sqrt(in.c_min) + std::sqrt(static_cast<double>(in.q)) / in.c_min;
  res.gamma = in.eta * in.eta * snr /
              (8.0 * in.max_row_norm_s * denom_core * denom_core *
               std::log(static_cast<double>(in.p) + 1.0));
  res.probability_raw =
      1.0 - 2.0 * std::exp(-(res.gamma - 1.0) *
                           std::log(static_cast<double>(in.p) + 1.0));
  res.probability = clamp01(res.probability_raw);
  return res;
}

CnReport cn_necessary(const Matrix& x, const SparseCoefficients& beta_star,
                      double sigma2) {
  CnReport rep;
  const std::size_t n = x.rows();
  const double nd = static_cast<double>(n);
  const auto& support = beta_star.support;
  const std::size_t q = support.size();

  Matrix xs = column_slice(x, support);
  Matrix gram = matmul(transpose(xs), xs);
  rep.gram_is_identity = true;
  for (std::size_t a = 0; a < q && rep.gram_is_identity; ++a) {
    for (std::size_t b = 0; b < q; ++b) {
      const double want = a == b ? 1.0 : 0.0;
      if (std::abs(gram(a, b) / nd - want) > 1e-8) {
        rep.gram_is_identity = false;
        break;
      }
    }
  }

  // |X beta| only involves the support columns
  Vector mean_abs(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j : support) s += x(i, j) * beta_star.beta[j];
    mean_abs[i] = std::abs(s);
  }

  rep.per_j.resize(q);
  rep.per_j_ceiling.resize(q);
  rep.c_n = 0.0;
  for (std::size_t jj = 0; jj < q; ++jj) {
    double denom = 0.0;  // e_j' X(S)' diag(|X beta|) X(S) e_j
    for (std::size_t i = 0; i < n; ++i) {
      denom += xs(i, jj) * xs(i, jj) * mean_abs[i];
    }
    const double bj = beta_star.beta[support[jj]];
    const double c2 = nd * nd * bj * bj / (sigma2 * denom);
    const double c = std::sqrt(c2);
    rep.per_j[jj] = c;
    rep.per_j_ceiling[jj] = 1.0 - std::exp(-c2 / 2.0) / (kSqrt2Pi * (1.0 + c));
    if (jj == 0 || c < rep.c_n) rep.c_n = c;
  }
  rep.ceiling =
      1.0 - std::exp(-rep.c_n * rep.c_n / 2.0) / (kSqrt2Pi * (1.0 + rep.c_n));
  return rep;
}

double v_star(const RandomDesignBoundInputs& in, double lambda) {
  const double n = static_cast<double>(in.n);
  return 2.0 * lambda * lambda * static_cast<double>(in.q) /
             (n * in.ctilde_min) +
         3.0 * in.sigma2 * std::sqrt(in.ctilde_max) * in.l2_beta / n;
}

double a_quantity(const RandomDesignBoundInputs& in) {
  const double n = static_cast<double>(in.n);
  const double inner =
      std::max(16.0 * static_cast<double>(in.q), 4.0 * std::log(n));
  return std::sqrt(4.0 * in.sigma2 * in.l2_beta * std::log(n) *
                   std::sqrt(2.0 * inner) / (n * in.ctilde_min));
}

double psi_tilde(const RandomDesignBoundInputs& in, double lambda) {
  return a_quantity(in) +
         2.0 * lambda * std::sqrt(static_cast<double>(in.q)) / in.ctilde_min;
}

BoundReport thm3_probability(const RandomDesignBoundInputs& in, double lambda) {
  BoundReport rep;
  const double n = static_cast<double>(in.n);
  const double q = static_cast<double>(in.q);
  rep.raw_exponent = -lambda * lambda * in.eta * in.eta /
                         (2.0 * v_star(in, lambda) * in.ctilde_max) +
                     std::log(static_cast<double>(in.p) - q);
  rep.raw = 1.0 - 2.0 * std::exp(rep.raw_exponent) -
            (2.0 * q + 3.0) * std::exp(-0.03 * n) - (1.0 + 3.0 * q) / n;
  rep.value = clamp01(rep.raw);
  rep.clamped = rep.value != rep.raw;
  rep.hypotheses_met.emplace_back("M(beta) > PsiTilde(lambda)",
                                  in.m_beta > psi_tilde(in, lambda));
  rep.hypotheses_met.emplace_back("q/n small", q / n <= 0.2);
  rep.hypotheses_met.emplace_back("eign condition recorded",
                                  in.ctilde_min > 0.0 &&
                                      in.ctilde_max >= in.ctilde_min);
  rep.hypotheses_met.emplace_back("IC2 with positive eta", in.eta > 0.0);
  return rep;
}

Corollary3Result corollary3_lambda(const RandomDesignBoundInputs& in) {
  Corollary3Result res;
  const double a = a_quantity(in);
  res.m_exceeds_a = in.m_beta > a;
  res.lambda = (in.m_beta - a) * in.ctilde_min /
               (4.0 * std::sqrt(static_cast<double>(in.q)));
  const double n = static_cast<double>(in.n);
  const double snr = n * in.m_beta * in.m_beta / (in.sigma2 * in.l2_beta);
  res.snr_condition_eign =
      snr >= 8.0 * std::log(n) *
                 std::sqrt(2.0 * std::max(4.0 * static_cast<double>(in.q),
                                          std::log(n))) /
                 in.ctilde_min;
  return res;
}

double gamma_tilde(const RandomDesignBoundInputs& in) {
  const double n = static_cast<double>(in.n);
  const double q = static_cast<double>(in.q);
  const double log_pq = std::log(static_cast<double>(in.p) - q + 1.0);
  const double a = a_quantity(in);
  const double gap = in.m_beta - a;
  const double term1 = 4.0 * q * log_pq * in.ctilde_max / in.ctilde_min;
  const double term2 = 96.0 * in.sigma2 * q * in.l2_beta * log_pq *
                       std::sqrt(in.ctilde_max * in.ctilde_max * in.ctilde_max) /
                       (gap * gap * in.ctilde_min * in.ctilde_min);
  return n * in.eta * in.eta / (term1 + term2);
}

double ic_violation_ceiling() { return 0.5; }

}  // namespace lassohet
