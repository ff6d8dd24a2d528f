// Command-line front end: dataset generation, single solves, the exact
// sign-recovery oracle, condition/bound reports, and the full Monte Carlo
// experiment suite with CSV/SVG output.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "lassohet/bounds.hpp"
#include "lassohet/concentration.hpp"
#include "lassohet/conditions.hpp"
#include "lassohet/experiments.hpp"
#include "lassohet/rng.hpp"
#include "lassohet/sign_oracle.hpp"
#include "lassohet/solver.hpp"

namespace fs = std::filesystem;
using namespace lassohet;

namespace {

struct CommonOpts {
  std::string config_path;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::size_t trials = 0;
  bool trials_set = false;
  std::string out_dir;
  std::string arm = "poisson_like";
  int design = 1;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path, "JSON config file");
  cmd->add_option("--seed", opts.seed, "master seed override")
      ->each([&](const std::string&) { opts.seed_set = true; });
  cmd->add_option("--trials", opts.trials, "trial count override")
      ->each([&](const std::string&) { opts.trials_set = true; });
  cmd->add_option("--out", opts.out_dir, "output directory");
  cmd->add_option("--arm", opts.arm, "noise arm")
      ->check(CLI::IsMember({"poisson_like", "homoscedastic_matched"}));
  cmd->add_option("--design", opts.design, "parameter design")
      ->check(CLI::IsMember({1, 2}));
}

ExperimentConfig resolve_config(const CommonOpts& opts) {
  ExperimentConfig config;
  if (!opts.config_path.empty()) config = load_config(opts.config_path);
  if (opts.seed_set) config.master_seed = opts.seed;
  if (opts.trials_set) config.trials = opts.trials;
  if (!opts.out_dir.empty()) config.out_dir = opts.out_dir;
  config.validate();
  return config;
}

Arm resolve_arm(const CommonOpts& opts) {
  return opts.arm == "poisson_like" ? Arm::PoissonLike
                                    : Arm::HomoscedasticMatched;
}

void ensure_out_dir(const ExperimentConfig& config) {
  fs::create_directories(config.out_dir);
}

std::string fmt(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

// Dataset file: one record per line, "beta" / "y" once, "x" per row.
void write_dataset(const Dataset& data, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "beta";
  for (double v : data.beta_star.beta) out << ',' << fmt(v);
  out << "\ny";
  for (double v : data.y) out << ',' << fmt(v);
  out << '\n';
  for (std::size_t i = 0; i < data.x.rows(); ++i) {
    out << 'x';
    for (std::size_t j = 0; j < data.x.cols(); ++j) {
      out << ',' << fmt(data.x(i, j));
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

struct LoadedDataset {
  Matrix x;
  Vector y;
  SparseCoefficients beta_star;
};

LoadedDataset read_dataset(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open dataset: " + path);
  Vector beta, y;
  std::vector<Vector> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string tag;
    std::getline(ss, tag, ',');
    Vector vals;
    std::string tok;
    while (std::getline(ss, tok, ',')) vals.push_back(std::stod(tok));
    if (tag == "beta") {
      beta = std::move(vals);
    } else if (tag == "y") {
      y = std::move(vals);
    } else if (tag == "x") {
      rows.push_back(std::move(vals));
    } else {
      throw std::runtime_error("bad dataset record '" + tag + "' in " + path);
    }
  }
  if (beta.empty() || y.empty() || rows.empty()) {
    throw std::runtime_error("incomplete dataset: " + path);
  }
  LoadedDataset data;
  data.x = Matrix(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != data.x.cols()) {
      throw std::runtime_error("ragged design rows in " + path);
    }
    for (std::size_t j = 0; j < data.x.cols(); ++j) data.x(i, j) = rows[i][j];
  }
  data.y = std::move(y);
  data.beta_star = SparseCoefficients::from_dense(std::move(beta));
  return data;
}

std::vector<CurveRow> read_curve_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open CSV: " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty CSV: " + path);
  std::vector<CurveRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string tok;
    std::vector<std::string> f;
    while (std::getline(ss, tok, ',')) f.push_back(tok);
    if (f.size() != 12) throw std::runtime_error("bad CSV row in " + path);
    CurveRow r;
    r.design = std::stoi(f[0]);
    r.arm = f[1];
    r.grid_value = std::stod(f[2]);
    r.beta_min = std::stod(f[3]);
    r.beta_max = std::stod(f[4]);
    r.l2_beta = std::stod(f[5]);
    r.snr = std::stod(f[6]);
    r.trials = std::stoul(f[7]);
    r.successes = std::stoul(f[8]);
    r.prob = std::stod(f[9]);
    r.wilson_lo = std::stod(f[10]);
    r.wilson_hi = std::stod(f[11]);
    rows.push_back(std::move(r));
  }
  return rows;
}

Dataset make_cli_dataset(const ExperimentConfig& config, Arm arm) {
  Matrix x = gen_iid_design(config.n, config.p, config.design_fixed_seed);
  SparseCoefficients beta =
      make_example_beta(config.p, config.q, 40.0, config.beta_min);
  NoiseSpec noise;
  noise.kind = arm == Arm::PoissonLike ? NoiseKind::PoissonLike
                                       : NoiseKind::HomoscedasticMatched;
  noise.sigma2 = config.sigma2;
  return make_dataset(std::move(x), std::move(beta), noise,
                      mix_seed(config.master_seed, 0));
}

void print_bound_report(const char* label, const BoundReport& rep) {
  std::cout << label << ": value=" << fmt(rep.value) << " raw=" << fmt(rep.raw)
            << " exponent=" << fmt(rep.raw_exponent)
            << (rep.clamped ? " (clamped)" : "") << '\n';
  for (const auto& [name, ok] : rep.hypotheses_met) {
    std::cout << "  hypothesis [" << name << "]: " << (ok ? "met" : "NOT met")
              << '\n';
  }
}

int cmd_gen(const CommonOpts& opts) {
  ExperimentConfig config = resolve_config(opts);
  ensure_out_dir(config);
  Dataset data = make_cli_dataset(config, resolve_arm(opts));
  const std::string path = config.out_dir + "/dataset.csv";
  write_dataset(data, path);
  write_manifest(config, {path}, config.out_dir + "/manifest.json");
  std::cout << "wrote " << path << " (n=" << config.n << ", p=" << config.p
            << ", q=" << config.q << ")\n";
  return 0;
}

int cmd_solve(const CommonOpts& opts, const std::string& data_path,
              double lambda) {
  LoadedDataset data = data_path.empty()
                           ? [&] {
                               Dataset d = make_cli_dataset(
                                   resolve_config(opts), resolve_arm(opts));
                               return LoadedDataset{d.x, d.y, d.beta_star};
                             }()
                           : read_dataset(data_path);
  if (lambda <= 0.0) {
    lambda = default_lambda_grid(data.x, data.y, 2).front() / 10.0;
  }
  LassoSolution sol = coordinate_descent(data.x, data.y, lambda);
  std::size_t nnz = 0;
  for (double v : sol.beta_hat) nnz += v != 0.0;
  std::cout << "lambda=" << fmt(sol.lambda) << " sweeps=" << sol.iterations
            << " objective=" << fmt(sol.objective)
            << " kkt_violation=" << fmt(sol.kkt_violation)
            << " nonzeros=" << nnz
            << " converged=" << (sol.converged ? "yes" : "no")
            << " sign_match=" << (sign_equal(sol.beta_hat, data.beta_star.beta)
                                      ? "yes"
                                      : "no")
            << '\n';
  return 0;
}

int cmd_oracle(const CommonOpts& opts, const std::string& data_path) {
  LoadedDataset data = data_path.empty()
                           ? [&] {
                               Dataset d = make_cli_dataset(
                                   resolve_config(opts), resolve_arm(opts));
                               return LoadedDataset{d.x, d.y, d.beta_star};
                             }()
                           : read_dataset(data_path);
  RecoveryVerdict v =
      feasible_lambda_interval(data.x, data.y, data.beta_star);
  std::cout << "feasible lambda interval: (" << fmt(v.feasible_low) << ", "
            << fmt(v.feasible_high) << ")"
            << " nonempty=" << (v.nonempty ? "yes" : "no")
            << " degenerate=" << (v.degenerate_boundary ? "yes" : "no")
            << '\n';
  return 0;
}

int cmd_check_ic(const CommonOpts& opts, const std::string& data_path) {
  LoadedDataset data = data_path.empty()
                           ? [&] {
                               Dataset d = make_cli_dataset(
                                   resolve_config(opts), resolve_arm(opts));
                               return LoadedDataset{d.x, d.y, d.beta_star};
                             }()
                           : read_dataset(data_path);
  ConditionReport rep = condition_report(data.x, data.beta_star.support,
                                         data.beta_star.sign_vector);
  std::cout << "ic_lhs=" << fmt(rep.ic_lhs) << " eta=" << fmt(rep.eta)
            << " c_min=" << fmt(rep.c_min) << " c_max=" << fmt(rep.c_max)
            << " max_row_norm_s=" << fmt(rep.max_row_norm_s)
            << " ic_holds=" << (rep.holds_ic ? "yes" : "no")
            << " min_eigen_positive=" << (rep.holds_min_eigen ? "yes" : "no")
            << '\n';
  return 0;
}

int cmd_bounds(const CommonOpts& opts) {
  ExperimentConfig config = resolve_config(opts);
  Matrix x = gen_iid_design(config.n, config.p, config.design_fixed_seed);
  SparseCoefficients beta =
      make_example_beta(config.p, config.q, 40.0, config.beta_min);
  ConditionReport cond =
      condition_report(x, beta.support, beta.sign_vector);

  FixedDesignBoundInputs fixed;
  fixed.n = config.n;
  fixed.p = config.p;
  fixed.q = config.q;
  fixed.sigma2 = config.sigma2;
  fixed.eta = cond.eta;
  fixed.c_min = cond.c_min;
  fixed.max_row_norm_s = cond.max_row_norm_s;
  fixed.l2_beta = beta.l2;
  fixed.m_beta = beta.min_abs;
  {
    KktOracle oracle(x, beta.support, beta.sign_vector);
    KktDecomposition kkt = oracle.decompose(Vector(config.n, 0.0));
    fixed.h_inf = inf_norm(kkt.h);
  }

  std::cout << "eta=" << fmt(fixed.eta) << " c_min=" << fmt(fixed.c_min)
            << " max_row_norm_s=" << fmt(fixed.max_row_norm_s)
            << " h_inf=" << fmt(fixed.h_inf) << '\n';
  const double lam1 = corollary1_lambda(fixed);
  std::cout << "corollary-1 lambda=" << fmt(lam1)
            << " Psi=" << fmt(psi_fixed(fixed, lam1))
            << " M=" << fmt(fixed.m_beta) << '\n';
  print_bound_report("fixed-design probability", thm1_probability(fixed, lam1));
  GammaFixedResult gf = gamma_fixed(fixed);
  std::cout << "Gamma=" << fmt(gf.gamma)
            << " probability=" << fmt(gf.probability) << '\n';

  RandomDesignBoundInputs rand;
  rand.n = config.n;
  rand.p = config.p;
  rand.q = config.q;
  rand.sigma2 = config.sigma2;
  rand.eta = 1.0;  // population IC for the identity ensemble
  rand.ctilde_min = 1.0;
  rand.ctilde_max = 1.0;
  rand.l2_beta = beta.l2;
  rand.m_beta = beta.min_abs;
  Corollary3Result c3 = corollary3_lambda(rand);
  std::cout << "A=" << fmt(a_quantity(rand))
            << " corollary-3 lambda=" << fmt(c3.lambda)
            << " M>A=" << (c3.m_exceeds_a ? "yes" : "no") << '\n';
  print_bound_report("random-design probability",
                     thm3_probability(rand, c3.lambda));
  std::cout << "GammaTilde=" << fmt(gamma_tilde(rand)) << '\n';
  return 0;
}

int run_examples(const CommonOpts& opts, bool both_arms) {
  ExperimentConfig config = resolve_config(opts);
  ensure_out_dir(config);
  std::vector<CurveRow> all_rows;
  std::vector<std::string> outputs;
  std::vector<Arm> arms = both_arms
                              ? std::vector<Arm>{Arm::PoissonLike,
                                                 Arm::HomoscedasticMatched}
                              : std::vector<Arm>{resolve_arm(opts)};
  for (Arm arm : arms) {
    for (int design : {1, 2}) {
      ExperimentResult res = run_success_curve(config, arm, design);
      if (res.singular_flag) {
        std::cerr << "warning: singular support Gram in some trials\n";
      }
      const std::string path = config.out_dir + "/curve_design" +
                               std::to_string(design) + "_" + arm_name(arm) +
                               ".csv";
      emit_csv(res, path);
      outputs.push_back(path);
      all_rows.insert(all_rows.end(), res.rows.begin(), res.rows.end());
      for (const CurveRow& r : res.rows) {
        std::cout << "design " << r.design << " " << r.arm
                  << " snr=" << fmt(r.snr) << " prob=" << fmt(r.prob) << " ["
                  << fmt(r.wilson_lo) << ", " << fmt(r.wilson_hi) << "]\n";
      }
    }
  }
  const std::string svg = config.out_dir + "/success_curves.svg";
  emit_svg_chart(all_rows, svg);
  outputs.push_back(svg);
  write_manifest(config, outputs, config.out_dir + "/manifest.json");
  std::cout << "wrote " << svg << '\n';
  return 0;
}

int cmd_ic_violation(const CommonOpts& opts) {
  ExperimentConfig config = resolve_config(opts);
  ensure_out_dir(config);
  ExperimentResult res = run_ic_violation(config);
  const CurveRow& r = res.rows.front();
  std::cout << "ic_lhs=" << fmt(res.ic_lhs) << " successes=" << r.successes
            << "/" << r.trials << " prob=" << fmt(r.prob) << " ["
            << fmt(r.wilson_lo) << ", " << fmt(r.wilson_hi) << "]"
            << " ceiling=" << fmt(ic_violation_ceiling()) << '\n';
  const std::string path = config.out_dir + "/ic_violation.csv";
  emit_csv(res, path);
  write_manifest(config, {path}, config.out_dir + "/manifest.json");
  return 0;
}

int cmd_concentration(const CommonOpts& opts) {
  ExperimentConfig config = resolve_config(opts);
  const std::size_t trials = config.trials;
  const std::uint64_t seed = config.master_seed;

  TailCheckResult g = gaussian_max_check(400, 3.5, trials, seed);
  std::cout << "gaussian-max: bound=" << fmt(g.bound)
            << " empirical=" << fmt(g.empirical)
            << " pass=" << (g.passed ? "yes" : "no") << '\n';
  TailCheckResult c = chi2_max_check(100, 10, 40.5, trials, seed);
  std::cout << "chi2-max: bound=" << fmt(c.bound)
            << " empirical=" << fmt(c.empirical)
            << " pass=" << (c.passed ? "yes" : "no") << '\n';
  TailCheckResult w =
      wishart_eigen_check(500, 10, Matrix::identity(10), trials, seed);
  std::cout << "wishart-eigen: floor=" << fmt(w.bound)
            << " empirical=" << fmt(w.empirical)
            << " pass=" << (w.passed ? "yes" : "no")
            << (w.hypothesis_flag ? " (q/n large)" : "") << '\n';
  TailCheckResult r = row_norm_bound_check(400, 20, 1.0, trials, seed);
  std::cout << "row-norm: bound=" << fmt(r.bound)
            << " empirical=" << fmt(r.empirical)
            << " pass=" << (r.passed ? "yes" : "no") << '\n';
  return 0;
}

int cmd_plot(const CommonOpts& opts, const std::string& data_path) {
  if (data_path.empty()) throw std::runtime_error("plot requires --data");
  ExperimentConfig config = resolve_config(opts);
  ensure_out_dir(config);
  std::vector<CurveRow> rows = read_curve_csv(data_path);
  const std::string path = config.out_dir + "/chart.svg";
  emit_svg_chart(rows, path);
  std::cout << "wrote " << path << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lasso sign-recovery toolkit for heteroscedastic noise"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::string data_path;
  double lambda = 0.0;

  CLI::App* gen = app.add_subcommand("gen", "generate a dataset CSV");
  add_common(gen, opts);

  CLI::App* solve = app.add_subcommand("solve", "one coordinate-descent solve");
  add_common(solve, opts);
  solve->add_option("--data", data_path, "dataset CSV from `gen`");
  solve->add_option("--lambda", lambda, "penalty level");

  CLI::App* oracle =
      app.add_subcommand("oracle", "feasible-lambda interval for a dataset");
  add_common(oracle, opts);
  oracle->add_option("--data", data_path, "dataset CSV from `gen`");

  CLI::App* check_ic =
      app.add_subcommand("check-ic", "irrepresentable-condition report");
  add_common(check_ic, opts);
  check_ic->add_option("--data", data_path, "dataset CSV from `gen`");

  CLI::App* bounds = app.add_subcommand("bounds", "theoretical bound report");
  add_common(bounds, opts);

  CLI::App* ex1 =
      app.add_subcommand("example1", "success curves, both designs");
  add_common(ex1, opts);

  CLI::App* ex2 = app.add_subcommand(
      "example2", "success curves, Poisson-like vs matched homoscedastic");
  add_common(ex2, opts);

  CLI::App* icv =
      app.add_subcommand("ic-violation", "necessity experiment with IC broken");
  add_common(icv, opts);

  CLI::App* conc =
      app.add_subcommand("concentration", "Monte Carlo tail-bound checks");
  add_common(conc, opts);

  CLI::App* plot = app.add_subcommand("plot", "render a curve CSV to SVG");
  add_common(plot, opts);
  plot->add_option("--data", data_path, "curve CSV");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_gen(opts);
    if (solve->parsed()) return cmd_solve(opts, data_path, lambda);
    if (oracle->parsed()) return cmd_oracle(opts, data_path);
    if (check_ic->parsed()) return cmd_check_ic(opts, data_path);
    if (bounds->parsed()) return cmd_bounds(opts);
    if (ex1->parsed()) return run_examples(opts, false);
    if (ex2->parsed()) return run_examples(opts, true);
    if (icv->parsed()) return cmd_ic_violation(opts);
    if (conc->parsed()) return cmd_concentration(opts);
    if (plot->parsed()) return cmd_plot(opts, data_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
