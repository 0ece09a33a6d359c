#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cpl/fit.hpp"
#include "cpl/quadrature.hpp"

namespace cpl {

/// Every knob of every pipeline, each with a default. Keys use the CLI
/// spelling (dashes); `kappa` accepts "inf".
struct RunConfig {
  std::string experiment;
  double m = 0.5;
  double s = 0.3;
  double alpha = 1.0;
  double q = 2.0;
  std::string kappa = "1";
  double theta = 1.0;
  double r = 0.25;
  int k = 6;
  double beta = 0.5;
  double eps = 0.05;
  double lambda_min = 0.0;  // 0: the pipeline default
  double lambda_ratio = 0.0;  // 0: the pipeline default
  int lambda_count = 0;  // 0: the pipeline default
  int x_cells = 0;  // 0: the pipeline default
  double x_min = 0.0;  // 0: the pipeline default
  double x_ratio = 0.0;  // 0: the pipeline default
  int t_samples = 0;
  int theta_samples = 0;
  int refine_depth = 2;
  int grid = 64;
  double rel_tol = 1e-8;
  double abs_tol = 1e-12;
  int max_subdivisions = 200000;
  std::string variant = "vertical";
  std::string datum = "spatial-knapp";
  std::string calculator = "dim_bound_vertical";
  std::string s_grid = "0.15:0.45:0.05";
  double x = 0.0;
  double t = 0.0;
  double lambda = 16.0;
  std::string out;
  long long seed = 0;

  /// Throws ConfigError on inconsistent values.
  void validate() const;
  [[nodiscard]] QuadratureSpec quadrature() const;
  /// lambda_min * lambda_ratio^j, j < lambda_count, each field falling back
  /// to the given pipeline default when unset.
  [[nodiscard]] std::vector<double> ladder(double min_default, double ratio_default,
                                           int count_default) const;
  /// Geometric x-cell edge and ratio, falling back to the given defaults.
  [[nodiscard]] double x_min_or(double fallback) const { return x_min != 0.0 ? x_min : fallback; }
  [[nodiscard]] double x_ratio_or(double fallback) const {
    return x_ratio != 0.0 ? x_ratio : fallback;
  }
  /// Ordered (key, value) pairs, values printed exactly.
  [[nodiscard]] std::vector<std::pair<std::string, std::string>> entries() const;
};

struct Check {
  std::string name;
  double value = 0.0;
  double target = 0.0;
  double tolerance = 0.0;
  std::string comparison;  // "within", "at_most", "at_least", "equal"
  bool pass = false;
};

/// Builds a check: within: |value - target| <= tol; at_most: value <= target + tol;
/// at_least: value >= target - tol.
Check make_check(std::string name, double value, double target, double tolerance,
                 std::string comparison);

struct SeriesPoint {
  double lambda = 0.0;
  double value = 0.0;
  double hs_norm = 0.0;
  double ratio = 0.0;
};

struct ExperimentReport {
  std::string experiment;
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<SeriesPoint> points;
  std::optional<LogLogFit> fit;
  std::optional<double> predicted_slope;
  double tolerance = 0.0;
  std::string comparison = "within";
  std::vector<Check> checks;
  /// Free-form tabular output for non-ladder experiments.
  std::vector<std::string> table_header;
  std::vector<std::vector<std::string>> table_rows;
  /// Extra JSON fragment (already serialized) for experiment-specific data.
  std::string extra_json;

  [[nodiscard]] bool pass() const;
};

ExperimentReport run_propagate(const RunConfig& config);
ExperimentReport run_kernel_envelope(const RunConfig& config);
ExperimentReport run_sharpness_vertical(const RunConfig& config);
ExperimentReport run_sharpness_curve(const RunConfig& config);
ExperimentReport run_sharpness_lines(const RunConfig& config);
ExperimentReport run_proposition_lines(const RunConfig& config);
ExperimentReport run_covering(const RunConfig& config);
ExperimentReport run_frostman(const RunConfig& config);
ExperimentReport run_cantor(const RunConfig& config);
ExperimentReport run_exponent_table(const RunConfig& config);
ExperimentReport run_bilinear_check(const RunConfig& config);

/// Dispatches on config.experiment; throws ConfigError for unknown names.
ExperimentReport run_experiment(const RunConfig& config);

/// Names accepted by run_experiment.
const std::vector<std::string>& experiment_names();

/// Doubles printed with 17 significant digits ("%.17g").
std::string format_double(double v);

std::string report_csv(const ExperimentReport& report);
std::string report_json(const ExperimentReport& report);
/// Writes <dir>/<experiment>.csv and <dir>/<experiment>.json, creating dir.
void write_report(const ExperimentReport& report, const std::string& dir);

}  // namespace cpl
