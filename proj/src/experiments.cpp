#include "lassohet/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <tuple>

#include "json.hpp"
#include "lassohet/conditions.hpp"
#include "lassohet/rng.hpp"
#include "lassohet/sign_oracle.hpp"
#include "lassohet/solver.hpp"

namespace lassohet {

namespace {

using nlohmann::json;

std::string fmt(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

NoiseSpec noise_for(Arm arm, double sigma2) {
  NoiseSpec spec;
  spec.kind = arm == Arm::PoissonLike ? NoiseKind::PoissonLike
                                      : NoiseKind::HomoscedasticMatched;
  spec.sigma2 = sigma2;
  return spec;
}

/// Shared trial loop: count nonempty-interval verdicts for a fixed design
/// and coefficient vector, redrawing only the noise.
void count_successes(const Matrix& x, const KktOracle& oracle,
                     const SparseCoefficients& beta_star,
                     const NoiseSpec& noise, const ExperimentConfig& config,
                     std::uint64_t experiment_id, std::uint64_t grid_index,
                     std::size_t& successes_out, bool& singular_out) {
  const std::size_t trials = config.trials;
  long long successes = 0;
  long long singular = 0;
#pragma omp parallel for schedule(static) reduction(+ : successes, singular)
  for (long long t = 0; t < static_cast<long long>(trials); ++t) {
    const std::uint64_t seed = mix_seed(config.master_seed, experiment_id,
                                        grid_index,
                                        static_cast<std::uint64_t>(t));
    Vector eps = gen_noise(x, beta_star, noise, seed);
    try {
      if (oracle.verdict(eps, beta_star).nonempty) ++successes;
    } catch (const SingularGram&) {
      ++singular;  // counts as failure
    }
  }
  successes_out = static_cast<std::size_t>(successes);
  singular_out = singular > 0;
}

CurveRow make_row(int design, const std::string& arm, double grid_value,
                  const SparseCoefficients& beta_star,
                  const ExperimentConfig& config, std::size_t successes) {
  CurveRow row;
  row.design = design;
  row.arm = arm;
  row.grid_value = grid_value;
  row.beta_min = beta_star.min_abs;
  row.beta_max = inf_norm(beta_star.beta);
  row.l2_beta = beta_star.l2;
  row.snr = snr(beta_star, config.n, config.sigma2);
  row.trials = config.trials;
  row.successes = successes;
  row.prob = static_cast<double>(successes) / static_cast<double>(config.trials);
  std::tie(row.wilson_lo, row.wilson_hi) =
      wilson_interval(successes, config.trials);
  return row;
}

}  // namespace

const char* arm_name(Arm arm) {
  return arm == Arm::PoissonLike ? "poisson_like" : "homoscedastic_matched";
}

Vector default_design2_snr() {
  Vector out;
  for (double bm : {100.0, 90.0, 80.0, 70.0, 60.0, 50.0, 40.0, 30.0, 20.0,
                    10.0}) {
    // n beta_min^2 / ||beta||_2 at n=400, beta_min=5, q=20, sigma2=1
    out.push_back(10000.0 / std::sqrt(10.0 * (bm * bm + 25.0)));
  }
  return out;
}

void ExperimentConfig::validate() const {
  if (trials < 1) throw ConfigError("trials must be >= 1");
  if (design1_beta_max.empty() || design2_snr.empty()) {
    throw ConfigError("grids must be nonempty");
  }
  if (!(sigma2 > 0.0)) throw ConfigError("sigma2 must be > 0");
  if (q == 0 || q % 2 != 0) throw ConfigError("q must be even and positive");
  if (q > p) throw ConfigError("q must not exceed p");
  if (n == 0) throw ConfigError("n must be positive");
  if (!(beta_min > 0.0)) throw ConfigError("beta_min must be > 0");
}

double ExperimentConfig::design2_l2_target() const {
  return make_example_beta(p, q, 40.0, beta_min).l2;
}

ExperimentConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");

  static const std::set<std::string> known = {
      "n",          "p",
      "q",          "sigma2",
      "master_seed", "trials",
      "design_fixed_seed", "beta_min",
      "design1_beta_max", "design2_snr",
      "out_dir"};
  for (const auto& item : j.items()) {
    if (!known.count(item.key())) {
      throw ConfigError("unknown config field: " + item.key());
    }
  }

  ExperimentConfig c;
  try {
    if (j.contains("n")) c.n = j.at("n").get<std::size_t>();
    if (j.contains("p")) c.p = j.at("p").get<std::size_t>();
    if (j.contains("q")) c.q = j.at("q").get<std::size_t>();
    if (j.contains("sigma2")) c.sigma2 = j.at("sigma2").get<double>();
    if (j.contains("master_seed")) {
      c.master_seed = j.at("master_seed").get<std::uint64_t>();
    }
    if (j.contains("trials")) c.trials = j.at("trials").get<std::size_t>();
    if (j.contains("design_fixed_seed")) {
      c.design_fixed_seed = j.at("design_fixed_seed").get<std::uint64_t>();
    }
    if (j.contains("beta_min")) c.beta_min = j.at("beta_min").get<double>();
    if (j.contains("design1_beta_max")) {
      c.design1_beta_max = j.at("design1_beta_max").get<Vector>();
    }
    if (j.contains("design2_snr")) {
      c.design2_snr = j.at("design2_snr").get<Vector>();
    }
    if (j.contains("out_dir")) c.out_dir = j.at("out_dir").get<std::string>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config field type: ") + e.what());
  }
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string config_json(const ExperimentConfig& config) {
  json j;
  j["n"] = config.n;
  j["p"] = config.p;
  j["q"] = config.q;
  j["sigma2"] = config.sigma2;
  j["master_seed"] = config.master_seed;
  j["trials"] = config.trials;
  j["design_fixed_seed"] = config.design_fixed_seed;
  j["beta_min"] = config.beta_min;
  j["design1_beta_max"] = config.design1_beta_max;
  j["design2_snr"] = config.design2_snr;
  j["out_dir"] = config.out_dir;
  return j.dump(2);
}

std::vector<TableRow> build_table1(const ExperimentConfig& config) {
  config.validate();
  std::vector<TableRow> rows;
  rows.reserve(config.design1_beta_max.size());
  for (double beta_max : config.design1_beta_max) {
    SparseCoefficients beta =
        make_example_beta(config.p, config.q, beta_max, config.beta_min);
    TableRow row;
    row.grid_value = beta_max;
    row.beta_min = beta.min_abs;
    row.beta_max = beta_max;
    row.l2_beta = beta.l2;
    row.snr = snr(beta, config.n, config.sigma2);
    rows.push_back(row);
  }
  return rows;
}

std::vector<TableRow> build_table2(const ExperimentConfig& config) {
  config.validate();
  const double l2_target = config.design2_l2_target();
  std::vector<TableRow> rows;
  rows.reserve(config.design2_snr.size());
  for (double target : config.design2_snr) {
    SparseCoefficients beta = table2_beta(config.p, config.q, config.n, target,
                                          config.sigma2, l2_target);
    TableRow row;
    row.grid_value = target;
    row.beta_min = beta.min_abs;
    row.beta_max = inf_norm(beta.beta);
    row.l2_beta = beta.l2;
    row.snr = snr(beta, config.n, config.sigma2);
    rows.push_back(row);
  }
  return rows;
}

long display_round_int(double x) {
  return static_cast<long>(std::floor(x + 0.5));
}

double display_round_1dp(double x) {
  const double two = std::floor(x * 100.0 + 0.5) / 100.0;
  return std::floor(two * 10.0 + 0.5) / 10.0;
}

std::pair<double, double> wilson_interval(std::size_t successes,
                                          std::size_t trials) {
  if (trials == 0) throw std::invalid_argument("wilson_interval: no trials");
  const double z = 1.959963984540054;
  const double nd = static_cast<double>(trials);
  const double p_hat = static_cast<double>(successes) / nd;
  const double z2n = z * z / nd;
  const double denom = 1.0 + z2n;
  const double center = (p_hat + z2n / 2.0) / denom;
  const double half =
      z * std::sqrt(p_hat * (1.0 - p_hat) / nd + z2n / (4.0 * nd)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

ExperimentResult run_success_curve(const ExperimentConfig& config, Arm arm,
                                   int design) {
  config.validate();
  if (design != 1 && design != 2) {
    throw std::invalid_argument("design must be 1 or 2");
  }
  Matrix x = gen_iid_design(config.n, config.p, config.design_fixed_seed);
  const Vector& grid =
      design == 1 ? config.design1_beta_max : config.design2_snr;
  const double l2_target = design == 2 ? config.design2_l2_target() : 0.0;
  const NoiseSpec noise = noise_for(arm, config.sigma2);
  const std::uint64_t experiment_id =
      static_cast<std::uint64_t>(design) * 2 +
      (arm == Arm::HomoscedasticMatched ? 1 : 0);

  // support and sign pattern are the same at every grid point, so the
  // design-only KKT pieces are computed once
  SparseCoefficients probe =
      make_example_beta(config.p, config.q, 40.0, config.beta_min);
  KktOracle oracle(x, probe.support, probe.sign_vector);

  ExperimentResult result;
  for (std::size_t gi = 0; gi < grid.size(); ++gi) {
    SparseCoefficients beta =
        design == 1 ? make_example_beta(config.p, config.q, grid[gi],
                                        config.beta_min)
                    : table2_beta(config.p, config.q, config.n, grid[gi],
                                  config.sigma2, l2_target);
    std::size_t successes = 0;
    bool singular = false;
    count_successes(x, oracle, beta, noise, config, experiment_id, gi,
                    successes, singular);
    result.singular_flag = result.singular_flag || singular;
    result.rows.push_back(
        make_row(design, arm_name(arm), grid[gi], beta, config, successes));
  }
  return result;
}

bool grid_solver_success(const Matrix& x, const Vector& y,
                         const SparseCoefficients& beta_star,
                         std::size_t grid_points) {
  Vector grid = default_lambda_grid(x, y, grid_points);
  for (const LassoSolution& sol : lambda_grid_path(x, y, grid)) {
    if (sign_equal(sol.beta_hat, beta_star.beta)) return true;
  }
  return false;
}

Matrix ic_violation_design(const ExperimentConfig& config, double zeta) {
  config.validate();
  if (!(zeta >= 0.0)) throw std::invalid_argument("zeta must be >= 0");
  if (config.q >= config.p) {
    throw std::invalid_argument("need a nonempty complement");
  }
  Matrix x = gen_iid_design(config.n, config.p, config.design_fixed_seed);
  SparseCoefficients probe =
      make_example_beta(config.p, config.q, 40.0, config.beta_min);

  // w = X(S) (X(S)'X(S))^{-1} b, then column q := (1+zeta) w / ||w||^2
  // so its irrepresentable statistic is exactly 1 + zeta
  Matrix xs = column_slice(x, probe.support);
  Matrix gram = matmul(transpose(xs), xs);
  Vector gib = solve_spd(gram, probe.sign_vector);
  Vector w = matvec(xs, gib);
  double norm2 = 0.0;
  for (double v : w) norm2 += v * v;
  if (!(norm2 > 0.0)) throw std::runtime_error("degenerate projection column");
  const double alpha = (1.0 + zeta) / norm2;
  for (std::size_t i = 0; i < config.n; ++i) {
    x(i, config.q) = alpha * w[i];
  }
  return x;
}

ExperimentResult run_ic_violation(const ExperimentConfig& config, double zeta) {
  Matrix x = ic_violation_design(config, zeta);
  SparseCoefficients beta =
      make_example_beta(config.p, config.q, 40.0, config.beta_min);
  KktOracle oracle(x, beta.support, beta.sign_vector);
  const NoiseSpec noise = noise_for(Arm::PoissonLike, config.sigma2);

  ExperimentResult result;
  result.ic_lhs = irrepresentable_lhs(x, beta.support, beta.sign_vector);
  std::size_t successes = 0;
  bool singular = false;
  count_successes(x, oracle, beta, noise, config, /*experiment_id=*/9, 0,
                  successes, singular);
  result.singular_flag = singular;
  CurveRow row = make_row(1, "ic_violation", result.ic_lhs, beta, config,
                          successes);
  result.rows.push_back(row);
  return result;
}

std::string csv_text(const ExperimentResult& result) {
  if (result.rows.empty()) {
    throw std::invalid_argument("csv_text: no rows to write");
  }
  std::ostringstream out;
  out << "design,arm,grid_value,beta_min,beta_max,l2_beta,snr,trials,"
         "successes,prob,wilson_lo,wilson_hi\n";
  for (const CurveRow& r : result.rows) {
    out << r.design << ',' << r.arm << ',' << fmt(r.grid_value) << ','
        << fmt(r.beta_min) << ',' << fmt(r.beta_max) << ',' << fmt(r.l2_beta)
        << ',' << fmt(r.snr) << ',' << r.trials << ',' << r.successes << ','
        << fmt(r.prob) << ',' << fmt(r.wilson_lo) << ',' << fmt(r.wilson_hi)
        << '\n';
  }
  return out.str();
}

void emit_csv(const ExperimentResult& result, const std::string& path) {
  write_file(path, csv_text(result));
}

std::string svg_text(const std::vector<CurveRow>& rows) {
  if (rows.empty()) throw std::invalid_argument("svg_text: no rows");

  const double width = 720, height = 480;
  const double ml = 70, mr = 160, mt = 30, mb = 55;
  const double pw = width - ml - mr, ph = height - mt - mb;

  double x_lo = rows.front().snr, x_hi = rows.front().snr;
  for (const CurveRow& r : rows) {
    x_lo = std::min(x_lo, r.snr);
    x_hi = std::max(x_hi, r.snr);
  }
  if (x_hi <= x_lo) x_hi = x_lo + 1.0;
  auto sx = [&](double snr_value) {
    return ml + pw * (snr_value - x_lo) / (x_hi - x_lo);
  };
  auto sy = [&](double prob) { return mt + ph * (1.0 - prob); };

  // series keyed by (design, arm), in first-appearance order
  std::vector<std::pair<std::pair<int, std::string>, std::vector<const CurveRow*>>>
      series;
  for (const CurveRow& r : rows) {
    auto key = std::make_pair(r.design, r.arm);
    auto it = std::find_if(series.begin(), series.end(),
                           [&](const auto& s) { return s.first == key; });
    if (it == series.end()) {
      series.push_back({key, {}});
      it = std::prev(series.end());
    }
    it->second.push_back(&r);
  }
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                  "#ff7f0e", "#8c564b"};

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
      << height << "\">\n"
      << "  <rect width=\"" << width << "\" height=\"" << height
      << "\" fill=\"white\"/>\n";

  // axes
  out << "  <line x1=\"" << ml << "\" y1=\"" << mt + ph << "\" x2=\""
      << ml + pw << "\" y2=\"" << mt + ph << "\" stroke=\"black\"/>\n"
      << "  <line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml
      << "\" y2=\"" << mt + ph << "\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 5; ++k) {
    const double prob = k / 5.0;
    const double y = sy(prob);
    out << "  <line x1=\"" << ml - 5 << "\" y1=\"" << y << "\" x2=\"" << ml
        << "\" y2=\"" << y << "\" stroke=\"black\"/>\n"
        << "  <text x=\"" << ml - 10 << "\" y=\"" << y + 4
        << "\" text-anchor=\"end\" font-size=\"12\">" << fmt(prob)
        << "</text>\n";
    const double snr_value = x_lo + (x_hi - x_lo) * k / 5.0;
    const double xpix = sx(snr_value);
    out << "  <line x1=\"" << xpix << "\" y1=\"" << mt + ph << "\" x2=\""
        << xpix << "\" y2=\"" << mt + ph + 5 << "\" stroke=\"black\"/>\n"
        << "  <text x=\"" << xpix << "\" y=\"" << mt + ph + 20
        << "\" text-anchor=\"middle\" font-size=\"12\">"
        << display_round_int(snr_value) << "</text>\n";
  }
  out << "  <text x=\"" << ml + pw / 2 << "\" y=\"" << height - 12
      << "\" text-anchor=\"middle\" font-size=\"14\">SNR</text>\n"
      << "  <text x=\"18\" y=\"" << mt + ph / 2
      << "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 "
         "18 "
      << mt + ph / 2 << ")\">Probability of success</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    auto pts = series[s].second;
    std::sort(pts.begin(), pts.end(), [](const CurveRow* a, const CurveRow* b) {
      return a->snr < b->snr;
    });
    const char* color = palette[s % 6];
    out << "  <polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"2\" points=\"";
    for (const CurveRow* r : pts) {
      out << fmt(sx(r->snr)) << ',' << fmt(sy(r->prob)) << ' ';
    }
    out << "\"/>\n";
    for (const CurveRow* r : pts) {
      out << "  <circle cx=\"" << fmt(sx(r->snr)) << "\" cy=\""
          << fmt(sy(r->prob)) << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    }
    const double ly = mt + 16 + 18 * static_cast<double>(s);
    out << "  <line x1=\"" << ml + pw + 10 << "\" y1=\"" << ly << "\" x2=\""
        << ml + pw + 30 << "\" y2=\"" << ly << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n"
        << "  <text x=\"" << ml + pw + 35 << "\" y=\"" << ly + 4
        << "\" font-size=\"11\">design " << series[s].first.first << " "
        << series[s].first.second << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

void emit_svg_chart(const std::vector<CurveRow>& rows,
                    const std::string& path) {
  write_file(path, svg_text(rows));
}

std::string manifest_json(const ExperimentConfig& config,
                          const std::vector<std::string>& outputs) {
  json j;
  j["version"] = kVersion;
  j["config"] = json::parse(config_json(config));
  j["outputs"] = outputs;
  return j.dump(2);
}

void write_manifest(const ExperimentConfig& config,
                    const std::vector<std::string>& outputs,
                    const std::string& path) {
  write_file(path, manifest_json(config, outputs));
}

}  // namespace lassohet
