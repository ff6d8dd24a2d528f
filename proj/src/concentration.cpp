#include "lassohet/concentration.hpp"

#include <cmath>

#include "lassohet/rng.hpp"

namespace lassohet {

namespace {

bool bound_passed(double empirical, double bound, std::size_t trials) {
  if (bound >= 1.0) return true;
  return empirical <= bound + 3.0 * binomial_stderr(bound, trials);
}

}  // namespace

double binomial_stderr(double p_hat, std::size_t trials) {
  const double t = static_cast<double>(trials);
  double var = p_hat * (1.0 - p_hat);
  // keep a floor so the 3-sigma band never collapses to zero width
  var = std::max(var, 1.0 / t);
  return std::sqrt(var / t);
}

double gaussian_max_tail_bound(std::size_t n, double t, double max_var) {
  if (!(max_var > 0.0)) throw DomainError("gaussian_max_tail_bound: max_var <= 0");
  return 2.0 * static_cast<double>(n) * std::exp(-t * t / (2.0 * max_var));
}

double chi2_max_tail_bound(std::size_t n, std::size_t q, double t) {
  const double qd = static_cast<double>(q);
  if (!(t > qd)) throw DomainError("chi2_max_tail_bound: requires t > q");
  return static_cast<double>(n) * std::exp(-t * (1.0 - 2.0 * std::sqrt(qd / t)));
}

TailCheckResult gaussian_max_check(std::size_t dim, double t,
                                   std::size_t trials, std::uint64_t seed) {
  TailCheckResult res;
  res.trials = trials;
  res.bound = std::min(1.0, gaussian_max_tail_bound(dim, t, 1.0));
  std::size_t hits = 0;
  for (std::size_t k = 0; k < trials; ++k) {
    GaussianRng rng(mix_seed(seed, 0xc0, 0, k));
    double worst = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      worst = std::max(worst, std::abs(rng.next()));
    }
    if (worst >= t) ++hits;
  }
  res.empirical = static_cast<double>(hits) / static_cast<double>(trials);
  res.passed = bound_passed(res.empirical, res.bound, trials);
  return res;
}

TailCheckResult chi2_max_check(std::size_t dim, std::size_t q, double t,
                               std::size_t trials, std::uint64_t seed) {
  TailCheckResult res;
  res.trials = trials;
  res.bound = std::min(1.0, chi2_max_tail_bound(dim, q, t));
  std::size_t hits = 0;
  for (std::size_t k = 0; k < trials; ++k) {
    GaussianRng rng(mix_seed(seed, 0xc1, 0, k));
    double worst = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < q; ++j) {
        const double z = rng.next();
        s += z * z;
      }
      worst = std::max(worst, s);
    }
    if (worst >= 2.0 * t) ++hits;
  }
  res.empirical = static_cast<double>(hits) / static_cast<double>(trials);
  res.passed = bound_passed(res.empirical, res.bound, trials);
  return res;
}

TailCheckResult wishart_eigen_check(std::size_t n, std::size_t q,
                                    const Matrix& sigma11, std::size_t trials,
                                    std::uint64_t seed) {
  if (sigma11.rows() != q || sigma11.cols() != q) {
    throw DimensionMismatch("wishart_eigen_check: sigma11 must be q x q");
  }
  TailCheckResult res;
  res.trials = trials;
  res.hypothesis_flag =
      static_cast<double>(q) / static_cast<double>(n) > 0.2;
  res.bound = 1.0 - 2.0 * std::exp(-0.03 * static_cast<double>(n));

  Vector pop_ev = symmetric_eigenvalues(sigma11);
  const double lo = pop_ev.front() / 2.0;
  const double hi = 2.0 * pop_ev.back();

  // factor Sigma11 = L L' for row generation
  Matrix l(q, q);
  for (std::size_t j = 0; j < q; ++j) {
    for (std::size_t i = j; i < q; ++i) {
      double s = sigma11(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      if (i == j) {
        if (!(s > 0.0)) throw NotPositiveDefinite("wishart_eigen_check");
        l(i, j) = std::sqrt(s);
      } else {
        l(i, j) = s / l(j, j);
      }
    }
  }

  std::size_t inside = 0;
  for (std::size_t k = 0; k < trials; ++k) {
    GaussianRng rng(mix_seed(seed, 0xc2, 0, k));
    Matrix x(n, q);
    Vector z(q);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < q; ++j) z[j] = rng.next();
      for (std::size_t j = 0; j < q; ++j) {
        double s = 0.0;
        for (std::size_t a = 0; a <= j; ++a) s += l(j, a) * z[a];
        x(i, j) = s;
      }
    }
    Matrix gram = matmul(transpose(x), x);
    for (auto& v : gram.data()) v /= static_cast<double>(n);
    Vector ev = symmetric_eigenvalues(gram);
    if (ev.front() >= lo && ev.back() <= hi) ++inside;
  }
  res.empirical = static_cast<double>(inside) / static_cast<double>(trials);
  // empirical coverage must sit above the guaranteed floor (minus MC noise)
  res.passed =
      res.empirical >= res.bound - 3.0 * binomial_stderr(res.bound, trials);
  return res;
}

TailCheckResult row_norm_bound_check(std::size_t n, std::size_t q,
                                     double ctilde_max, std::size_t trials,
                                     std::uint64_t seed) {
  if (!(ctilde_max > 0.0)) {
    throw DomainError("row_norm_bound_check: ctilde_max <= 0");
  }
  TailCheckResult res;
  res.trials = trials;
  res.hypothesis_flag =
      static_cast<double>(q) / static_cast<double>(n) > 0.2;
  res.bound = 1.0 / static_cast<double>(n);
  const double threshold =
      2.0 * ctilde_max *
      std::max(16.0 * static_cast<double>(q),
               4.0 * std::log(static_cast<double>(n)));
  std::size_t hits = 0;
  for (std::size_t k = 0; k < trials; ++k) {
    GaussianRng rng(mix_seed(seed, 0xc3, 0, k));
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < q; ++j) {
        const double z = rng.next();
        s += ctilde_max * z * z;
      }
      worst = std::max(worst, s);
    }
    if (worst >= threshold) ++hits;
  }
  res.empirical = static_cast<double>(hits) / static_cast<double>(trials);
  res.passed = bound_passed(res.empirical, res.bound, trials);
  return res;
}

}  // namespace lassohet
