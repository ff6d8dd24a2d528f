#pragma once

#include <cstdint>
#include <string>

#include "lassohet/model.hpp"

namespace lassohet {

inline constexpr const char* kVersion = "lassohet 1.0.0";

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

enum class Arm { PoissonLike, HomoscedasticMatched };

const char* arm_name(Arm arm);

/// Default design-2 SNR targets: the exact design-1 SNR values
/// n beta_min^2 / (sigma2 ||beta||_2) at the default parameters. The
/// displayed integers (32, 35, ...) are rounded from these; building the
/// design-2 coefficients from the exact values is what reproduces the
/// published beta_min row.
Vector default_design2_snr();

struct ExperimentConfig {
  std::size_t n = 400;
  std::size_t p = 1000;
  std::size_t q = 20;
  double sigma2 = 1.0;
  std::uint64_t master_seed = 1;
  std::size_t trials = 500;
  std::uint64_t design_fixed_seed = 7;
  double beta_min = 5.0;  // design-1 weak-signal level
  // design 1 sweeps beta_max; design 2 sweeps target SNR at fixed ||beta||_2
  Vector design1_beta_max = {100, 90, 80, 70, 60, 50, 40, 30, 20, 10};
  Vector design2_snr = default_design2_snr();
  std::string out_dir = "out";

  void validate() const;
  /// ||beta*||_2 shared by every design-2 point: the design-1 value at
  /// beta_max = 40.
  double design2_l2_target() const;
};

/// Parse from flat JSON with exactly the field names above; unknown keys
/// are rejected. Missing keys keep their defaults.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);
std::string config_json(const ExperimentConfig& config);

struct TableRow {
  double grid_value = 0.0;  // beta_max (design 1) or target SNR (design 2)
  double beta_min = 0.0;
  double beta_max = 0.0;
  double l2_beta = 0.0;
  double snr = 0.0;
};

std::vector<TableRow> build_table1(const ExperimentConfig& config);
std::vector<TableRow> build_table2(const ExperimentConfig& config);

/// Round half-up to the nearest integer, as the tables display.
long display_round_int(double x);
/// Two-stage display rounding: to 2 decimals, then half-up to 1 decimal.
double display_round_1dp(double x);

struct CurveRow {
  int design = 1;
  std::string arm;
  double grid_value = 0.0;
  double beta_min = 0.0;
  double beta_max = 0.0;
  double l2_beta = 0.0;
  double snr = 0.0;
  std::size_t trials = 0;
  std::size_t successes = 0;
  double prob = 0.0;
  double wilson_lo = 0.0;
  double wilson_hi = 0.0;
};

struct ExperimentResult {
  std::vector<CurveRow> rows;
  bool singular_flag = false;  // some trial hit a singular support Gram
  double ic_lhs = 0.0;         // filled by the IC-violation run
};

/// 95% Wilson score interval for successes/trials.
std::pair<double, double> wilson_interval(std::size_t successes,
                                          std::size_t trials);

/// Success-probability curve over the design's grid. X is drawn once from
/// design_fixed_seed and reused; per trial only the noise is redrawn, and
/// success means the feasible-lambda interval is nonempty.
ExperimentResult run_success_curve(const ExperimentConfig& config, Arm arm,
                                   int design);

/// Same success criterion decided by coordinate descent over a dense
/// lambda grid; the slow cross-check arm for the interval oracle.
bool grid_solver_success(const Matrix& x, const Vector& y,
                         const SparseCoefficients& beta_star,
                         std::size_t grid_points = 2000);

/// Replaces one irrelevant column so the irrepresentable condition fails
/// (lhs = 1 + zeta), then measures the success frequency.
ExperimentResult run_ic_violation(const ExperimentConfig& config,
                                  double zeta = 0.05);

/// The modified design used by run_ic_violation, exposed for rechecks.
Matrix ic_violation_design(const ExperimentConfig& config, double zeta);

void emit_csv(const ExperimentResult& result, const std::string& path);
std::string csv_text(const ExperimentResult& result);

void emit_svg_chart(const std::vector<CurveRow>& rows,
                    const std::string& path);
std::string svg_text(const std::vector<CurveRow>& rows);

/// Run manifest: config echo, version string, and produced file list.
std::string manifest_json(const ExperimentConfig& config,
                          const std::vector<std::string>& outputs);
void write_manifest(const ExperimentConfig& config,
                    const std::vector<std::string>& outputs,
                    const std::string& path);

}  // namespace lassohet
