#include "cpl/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>

#include "cpl/counterexamples.hpp"
#include "cpl/errors.hpp"
#include "cpl/exponents.hpp"
#include "cpl/geometry.hpp"
#include "cpl/maximal.hpp"
#include "cpl/parallel.hpp"
#include "cpl/phase.hpp"
#include "cpl/spectral.hpp"

namespace cpl {

// ---------------------------------------------------------------- regression

LogLogFit fit_loglog(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 2) throw DomainError("log-log fit needs at least two points");
  double sx = 0.0, sy = 0.0;
  for (const auto& [x, y] : points) {
    if (!(x > 0.0) || !(y > 0.0) || !std::isfinite(x) || !std::isfinite(y)) {
      throw DomainError("log-log fit needs positive finite coordinates");
    }
    sx += std::log(x);
    sy += std::log(y);
  }
  const double n = static_cast<double>(points.size());
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& [x, y] : points) {
    const double dx = std::log(x) - mx;
    const double dy = std::log(y) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw DomainError("log-log fit needs distinct abscissae");
  LogLogFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return fit;
}

// ---------------------------------------------------------------- config

void RunConfig::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(std::string(name) + " must be positive");
  };
  if (!(m > 0.0) || !std::isfinite(m)) throw ConfigError("m must be positive");
  // Only the exponent formulas cover m >= 1; every numerical pipeline needs m < 1.
  if (experiment != "exponent-table" && !(m < 1.0)) throw ConfigError("m must lie in (0, 1)");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ConfigError("alpha must lie in (0, 1]");
  if (!(q >= 2.0) || !std::isfinite(q)) throw ConfigError("q must be a finite real >= 2");
  if (!(beta >= 0.0 && beta <= 1.0)) throw ConfigError("beta must lie in [0, 1]");
  if (!(eps >= 0.0)) throw ConfigError("eps must be >= 0");
  positive(theta + 1.0, "theta + 1");
  if (lambda_min != 0.0) positive(lambda_min, "lambda-min");
  if (lambda_ratio != 0.0 && !(lambda_ratio > 1.0)) throw ConfigError("lambda-ratio must exceed 1");
  if (lambda_count != 0 && lambda_count < 2) throw ConfigError("lambda-count must be >= 2");
  if (x_cells < 0) throw ConfigError("x-cells must be >= 0");
  if (x_min != 0.0 && !(x_min > 0.0 && x_min < 1.0)) throw ConfigError("x-min must lie in (0, 1)");
  if (x_ratio != 0.0 && !(x_ratio > 1.0)) throw ConfigError("x-ratio must exceed 1");
  if (grid < 2) throw ConfigError("grid must be >= 2");
  if (k < 0) throw ConfigError("k must be >= 0");
  positive(rel_tol, "rel-tol");
  positive(abs_tol, "abs-tol");
  if (max_subdivisions < 1) throw ConfigError("max-subdivisions must be >= 1");
  if (refine_depth < 2) throw ConfigError("refine-depth must be >= 2");
  positive(lambda, "lambda");
}

QuadratureSpec RunConfig::quadrature() const {
  QuadratureSpec spec;
  spec.rel_tol = rel_tol;
  spec.abs_tol = abs_tol;
  spec.max_subdivisions = max_subdivisions;
  return spec;
}

std::vector<double> RunConfig::ladder(double min_default, double ratio_default,
                                      int count_default) const {
  const double lo = lambda_min != 0.0 ? lambda_min : min_default;
  const double ratio = lambda_ratio != 0.0 ? lambda_ratio : ratio_default;
  const int count = lambda_count != 0 ? lambda_count : count_default;
  std::vector<double> out;
  for (int j = 0; j < count; ++j) out.push_back(lo * std::pow(ratio, j));
  return out;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::pair<std::string, std::string>> RunConfig::entries() const {
  auto d = format_double;
  auto i = [](long long v) { return std::to_string(v); };
  return {
      {"experiment", experiment}, {"m", d(m)}, {"s", d(s)}, {"alpha", d(alpha)}, {"q", d(q)},
      {"kappa", kappa}, {"theta", d(theta)}, {"r", d(r)}, {"k", i(k)}, {"beta", d(beta)},
      {"eps", d(eps)}, {"lambda-min", d(lambda_min)}, {"lambda-ratio", d(lambda_ratio)},
      {"lambda-count", i(lambda_count)}, {"x-cells", i(x_cells)}, {"x-min", d(x_min)},
      {"x-ratio", d(x_ratio)}, {"t-samples", i(t_samples)}, {"theta-samples", i(theta_samples)},
      {"refine-depth", i(refine_depth)}, {"grid", i(grid)}, {"rel-tol", d(rel_tol)},
      {"abs-tol", d(abs_tol)}, {"max-subdivisions", i(max_subdivisions)}, {"variant", variant},
      {"datum", datum}, {"calculator", calculator}, {"s-grid", s_grid}, {"x", d(x)}, {"t", d(t)},
      {"lambda", d(lambda)}, {"out", out}, {"seed", i(seed)},
  };
}

// ---------------------------------------------------------------- checks

Check make_check(std::string name, double value, double target, double tolerance,
                 std::string comparison) {
  Check c{std::move(name), value, target, tolerance, std::move(comparison), false};
  if (!std::isfinite(value)) return c;
  if (c.comparison == "within") {
    c.pass = std::abs(value - target) <= tolerance;
  } else if (c.comparison == "at_most") {
    c.pass = value <= target + tolerance;
  } else if (c.comparison == "at_least") {
    c.pass = value >= target - tolerance;
  } else if (c.comparison == "equal") {
    c.pass = value == target;
  } else {
    throw ConfigError("unknown comparison " + c.comparison);
  }
  return c;
}

bool ExperimentReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

namespace {

exponents::Kappa parse_kappa(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "Inf") return exponents::Kappa::infinite();
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw ConfigError("kappa must be a number or inf");
    return exponents::Kappa::finite(v);
  } catch (const std::invalid_argument&) {
    throw ConfigError("kappa must be a number or inf");
  }
}

double finite_kappa(const RunConfig& c) {
  const exponents::Kappa k = parse_kappa(c.kappa);
  if (k.is_infinite()) throw ConfigError("this experiment needs a finite kappa");
  return k.value();
}

ExperimentReport start(const RunConfig& c, const std::string& name) {
  c.validate();
  ExperimentReport r;
  r.experiment = name;
  RunConfig echo = c;
  echo.experiment = name;
  r.config = echo.entries();
  return r;
}

LogLogFit fit_of(const std::vector<SeriesPoint>& pts, double SeriesPoint::*field) {
  std::vector<std::pair<double, double>> xy;
  for (const auto& p : pts) xy.emplace_back(p.lambda, p.*field);
  return fit_loglog(xy);
}

GridSpec grid_of(const RunConfig& c) {
  GridSpec g;
  g.t_samples = c.t_samples;
  g.theta_samples = c.theta_samples;
  g.refine_depth = c.refine_depth;
  g.quad = c.quadrature();
  return g;
}

std::string json_points(const std::vector<SeriesPoint>& pts) {
  std::string out = "[";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) out += ",";
    out += "{\"lambda\":" + format_double(pts[i].lambda) + ",\"value\":" +
           format_double(pts[i].value) + ",\"hs_norm\":" + format_double(pts[i].hs_norm) +
           ",\"ratio\":" + format_double(pts[i].ratio) + "}";
  }
  return out + "]";
}

std::string json_fit(const LogLogFit& f) {
  return "{\"slope\":" + format_double(f.slope) + ",\"intercept\":" + format_double(f.intercept) +
         ",\"r2\":" + format_double(f.r2) + "}";
}

// Maximal values along a curve on every cell point.
std::vector<double> maximal_field(const FourierDatum& datum, double m, const Curve& curve,
                                  const std::vector<XCell>& cells, const GridSpec& grid) {
  std::vector<double> values(cells.size());
  parallel_for(cells.size(), [&](std::size_t i) {
    values[i] = maximal_in_time(datum, m, curve, cells[i].point, grid).value;
  });
  return values;
}

}  // namespace

// ---------------------------------------------------------------- pipelines

ExperimentReport run_propagate(const RunConfig& c) {
  ExperimentReport r = start(c, "propagate");
  FourierDatum datum = [&] {
    if (c.datum == "spatial-knapp") return knapp_vertical_spatial(c.lambda, c.m);
    if (c.datum == "temporal-knapp") return knapp_vertical_temporal(c.lambda, c.m);
    if (c.datum == "curve-knapp") return knapp_curve(c.lambda, c.m, finite_kappa(c), c.theta);
    if (c.datum == "cantor") return cantor_data(c.lambda, c.m);
    if (c.datum == "bump") return FourierDatum(DatumParams{{1.0, 0.0}, 1.0, 0.0, 0.0, 0.0, c.m});
    throw ConfigError("unknown datum " + c.datum);
  }();
  const Complex u = propagate(datum, c.m, c.x, c.t, c.quadrature());
  r.table_header = {"x", "t", "re", "im", "abs"};
  r.table_rows.push_back({format_double(c.x), format_double(c.t), format_double(u.real()),
                          format_double(u.imag()), format_double(std::abs(u))});
  r.checks.push_back(make_check("finite_value", std::isfinite(std::abs(u)) ? 1.0 : 0.0, 1.0, 0.0, "equal"));
  return r;
}

ExperimentReport run_kernel_envelope(const RunConfig& c) {
  ExperimentReport r = start(c, "kernel-envelope");
  EnvelopeVariant variant;
  if (c.variant == "vertical") {
    variant = EnvelopeVariant::Vertical;
  } else if (c.variant == "curve") {
    variant = EnvelopeVariant::Curve;
  } else {
    throw ConfigError("variant must be vertical or curve");
  }
  const std::vector<double> lambdas = c.ladder(16.0, 2.0, 9);
  const EnvelopeReport env = check_kernel_envelope(
      variant, c.m, c.alpha, c.q, c.eps, lambdas, c.grid,
      variant == EnvelopeVariant::Curve ? finite_kappa(c) : 1.0, c.theta, c.quadrature());
  for (const auto& l : env.levels) r.points.push_back({l.lambda, l.sup_ratio, 0.0, l.sup_ratio});
  r.fit = env.fit;
  r.predicted_slope = 0.0;
  r.tolerance = c.eps;
  r.comparison = "at_most";
  r.checks.push_back(make_check("ratio_slope", env.fit.slope, 0.0, c.eps, "at_most"));
  const double total = static_cast<double>(lambdas.size()) * c.grid * c.grid;
  r.checks.push_back(make_check("quadrature_failure_fraction", env.failures / total, 0.0, 0.01, "at_most"));
  std::string levels = "[";
  for (std::size_t i = 0; i < env.levels.size(); ++i) {
    const EnvelopeLevel& l = env.levels[i];
    if (i) levels += ",";
    levels += "{\"lambda\":" + format_double(l.lambda) + ",\"sup_ratio\":" +
              format_double(l.sup_ratio) + ",\"arg_x\":" + format_double(l.arg_x) +
              ",\"arg_t\":" + format_double(l.arg_t) +
              ",\"failures\":" + std::to_string(l.failures) + "}";
  }
  r.extra_json = "{\"levels\":" + levels + "]}";
  return r;
}

ExperimentReport run_sharpness_vertical(const RunConfig& c) {
  ExperimentReport r = start(c, "sharpness-vertical");
  const AlphaMeasure measure(c.alpha);
  const std::vector<XCell> cells =
      geometric_cells(measure, c.x_min_or(0x1p-24), 1.0, c.x_ratio_or(std::exp2(0.125)), true);
  const GridSpec grid = grid_of(c);
  const Curve vertical = Curve::vertical();
  for (double lambda : c.ladder(16.0, 2.0, 7)) {
    const FourierDatum datum = knapp_vertical_spatial(lambda, c.m);
    const double mixed = mixed_norm(maximal_field(datum, c.m, vertical, cells, grid), cells, c.q);
    const double hs = sobolev_norm(datum, c.s, grid.quad);
    r.points.push_back({lambda, mixed, hs, mixed / hs});
  }
  r.fit = fit_of(r.points, &SeriesPoint::value);
  r.predicted_slope = 1.0 - c.alpha / c.q;
  r.tolerance = 0.1;
  r.checks.push_back(make_check("mixed_norm_slope", r.fit->slope, *r.predicted_slope, 0.1, "within"));
  const LogLogFit hs_fit = fit_of(r.points, &SeriesPoint::hs_norm);
  r.checks.push_back(make_check("hs_norm_slope", hs_fit.slope, c.s + 0.5, 0.02, "within"));

  // Temporal Knapp datum: measured slopes only (no closed-form target).
  std::vector<SeriesPoint> temporal;
  const std::vector<XCell> coarse = geometric_cells(measure, c.x_min_or(0x1p-24), 1.0, 2.0, true);
  for (double lambda : {16.0, 32.0, 64.0, 128.0, 256.0}) {
    const FourierDatum datum = knapp_vertical_temporal(lambda, c.m);
    const double mixed = mixed_norm(maximal_field(datum, c.m, vertical, coarse, grid), coarse, c.q);
    const double hs = sobolev_norm(datum, c.s, grid.quad);
    temporal.push_back({lambda, mixed, hs, mixed / hs});
  }
  r.extra_json = "{\"spatial_hs_fit\":" + json_fit(hs_fit) +
                 ",\"temporal_points\":" + json_points(temporal) +
                 ",\"temporal_mixed_fit\":" + json_fit(fit_of(temporal, &SeriesPoint::value)) +
                 ",\"temporal_hs_fit\":" + json_fit(fit_of(temporal, &SeriesPoint::hs_norm)) + "}";
  return r;
}

ExperimentReport run_sharpness_curve(const RunConfig& c) {
  ExperimentReport r = start(c, "sharpness-curve");
  const double kappa = finite_kappa(c);
  const AlphaMeasure measure(c.alpha);
  const int ncells = c.x_cells != 0 ? c.x_cells : 16;
  const GridSpec grid = grid_of(c);
  const Curve curve = Curve::power(c.theta, kappa);
  double worst_residual = 0.0;
  for (double lambda : c.ladder(16.0, 2.0, 6)) {
    const FourierDatum datum = knapp_curve(lambda, c.m, kappa, c.theta);
    const double window = matched_window_curve(lambda, c.m, kappa, c.theta);
    const std::vector<XCell> cells = uniform_cells(measure, 0.0, window, ncells);
    std::vector<double> values(cells.size());
    std::vector<double> residuals(cells.size());
    parallel_for(cells.size(), [&](std::size_t i) {
      const MatchedPoint mp = matched_point_curve(cells[i].point, lambda, c.m, kappa, c.theta);
      residuals[i] = mp.residual;
      values[i] = maximal_in_time(datum, c.m, curve, cells[i].point, grid, {mp.t}).value;
    });
    for (double res : residuals) worst_residual = std::max(worst_residual, res);
    const double mixed = mixed_norm(values, cells, c.q);
    const double hs = sobolev_norm(datum, c.s, grid.quad);
    r.points.push_back({lambda, mixed, hs, mixed / hs});
  }
  r.fit = fit_of(r.points, &SeriesPoint::value);
  r.predicted_slope = -c.m * c.alpha / c.q;
  r.tolerance = 0.1;
  r.checks.push_back(make_check("mixed_norm_slope", r.fit->slope, *r.predicted_slope, 0.1, "within"));
  const LogLogFit hs_fit = fit_of(r.points, &SeriesPoint::hs_norm);
  r.checks.push_back(make_check("hs_norm_slope", hs_fit.slope, c.s - 0.5, 0.02, "within"));
  const LogLogFit ratio_fit = fit_of(r.points, &SeriesPoint::ratio);
  r.checks.push_back(make_check("ratio_slope", ratio_fit.slope,
                                *r.predicted_slope - (c.s - 0.5), 0.1, "within"));
  r.checks.push_back(make_check("max_phase_residual", worst_residual, 0.5, 0.0, "at_most"));
  r.extra_json = "{\"hs_fit\":" + json_fit(hs_fit) + ",\"ratio_fit\":" + json_fit(ratio_fit) +
                 ",\"max_phase_residual\":" + format_double(worst_residual) + "}";
  return r;
}

ExperimentReport run_sharpness_lines(const RunConfig& c) {
  ExperimentReport r = start(c, "sharpness-lines");
  if (c.k < 2) throw ConfigError("sharpness-lines needs k >= 2");
  const AlphaMeasure measure(c.alpha);
  const int per_component = c.x_cells != 0 ? c.x_cells : 8;
  GridSpec grid = grid_of(c);
  grid.mode = MaximalMode::InjectedOnly;
  double beta = 0.0;
  for (int level = 1; level <= c.k; ++level) {
    const CantorSet cantor(c.r, level);
    beta = cantor.dimension();
    const CantorSet theta_set(c.r, level + 3);
    const double lambda = std::pow(c.r, -level);
    const FourierDatum datum = cantor_data(lambda, c.m);
    std::vector<XCell> cells;
    for (const Interval& comp : cantor.intervals()) {
      if (!(comp.lo > 0.5)) continue;
      for (const XCell& cell : uniform_cells(measure, comp.lo, std::min(comp.hi, 1.0), per_component)) {
        cells.push_back(cell);
      }
    }
    std::vector<double> values(cells.size());
    parallel_for(cells.size(), [&](std::size_t i) {
      const MatchedPoint mp = cantor_selectors(cells[i].point, cantor);
      values[i] = maximal_over_lines(datum, c.m, theta_set.intervals(), cells[i].point, grid,
                                     {{mp.t, mp.theta}})
                      .value;
    });
    const double mixed = mixed_norm(values, cells, c.q);
    const double hs = sobolev_norm(datum, c.s, grid.quad);
    r.points.push_back({lambda, mixed, hs, mixed / hs});
  }
  r.fit = fit_of(r.points, &SeriesPoint::value);
  r.predicted_slope = 1.0 / c.m + beta / c.q - 1.0 / c.q;
  r.tolerance = 0.15;
  r.checks.push_back(make_check("lower_bound_slope", r.fit->slope, *r.predicted_slope, 0.15, "within"));
  const LogLogFit hs_fit = fit_of(r.points, &SeriesPoint::hs_norm);
  r.checks.push_back(make_check("hs_norm_slope", hs_fit.slope, c.s / c.m + 0.5 / c.m, 0.02, "within"));
  r.extra_json = "{\"beta\":" + format_double(beta) + ",\"hs_fit\":" + json_fit(hs_fit) + "}";
  return r;
}

ExperimentReport run_proposition_lines(const RunConfig& c) {
  ExperimentReport r = start(c, "proposition-lines");
  const AlphaMeasure measure(c.alpha);
  const std::vector<XCell> cells =
      geometric_cells(measure, c.x_min_or(0x1p-20), 1.0, c.x_ratio_or(std::exp2(0.25)), true);
  const GridSpec grid = grid_of(c);
  const double s_star = exponents::s_star_lines(c.m, c.alpha, c.q);
  for (double lambda : c.ladder(16.0, 2.0, 6)) {
    const double len = std::pow(lambda, -c.q * s_star / c.alpha);
    const std::vector<Interval> omega{{1.0 - len / 2.0, 1.0 + len / 2.0}};
    const FourierDatum datum = knapp_curve(lambda, c.m, 1.0, 1.0);
    std::vector<double> values(cells.size());
    parallel_for(cells.size(), [&](std::size_t i) {
      values[i] = maximal_over_lines(datum, c.m, omega, cells[i].point, grid).value;
    });
    const double mixed = mixed_norm(values, cells, c.q);
    const double l2 = sobolev_norm(datum, 0.0, grid.quad);
    r.points.push_back({lambda, mixed, l2, mixed / l2});
  }
  r.fit = fit_of(r.points, &SeriesPoint::ratio);
  r.predicted_slope = 0.5 - s_star;
  r.tolerance = 0.1;
  r.comparison = "at_most";
  r.checks.push_back(make_check("ratio_slope", r.fit->slope, 0.5 - s_star, 0.1, "at_most"));
  return r;
}

ExperimentReport run_covering(const RunConfig& c) {
  ExperimentReport r = start(c, "covering");
  const CantorSet cantor(c.r, c.k);
  const double s_star = exponents::s_star_lines(c.m, c.alpha, c.q);
  for (double lambda : c.ladder(16.0, 4.0, 11)) {
    const double delta = std::pow(lambda, -c.q * s_star / c.alpha);
    if (delta < cantor.component_length()) {
      throw ConfigError("covering scale below the prefractal resolution; raise k");
    }
    const auto n = static_cast<double>(covering_number(cantor.intervals(), delta));
    r.points.push_back({lambda, n, 0.0, n});
  }
  r.fit = fit_of(r.points, &SeriesPoint::value);
  const double predicted = c.q * s_star * cantor.dimension() / c.alpha;
  r.predicted_slope = predicted;
  r.tolerance = c.eps;
  r.comparison = "at_most";
  r.checks.push_back(make_check("covering_slope", r.fit->slope, predicted, c.eps, "at_most"));
  return r;
}

ExperimentReport run_frostman(const RunConfig& c) {
  ExperimentReport r = start(c, "frostman");
  const AlphaMeasure measure(c.alpha);
  std::vector<double> radii;
  std::vector<double> centers;
  for (int i = 0; i < 1000; ++i) {
    radii.push_back(std::pow(10.0, -6.0 + 6.0 * i / 999.0));
    centers.push_back(i / 999.0);
  }
  const double constant = frostman_constant(measure, radii, centers);
  const double bound = 2.0 * std::pow(3.0, c.alpha) / c.alpha * 1.01;
  r.table_header = {"alpha", "frostman_constant", "bound"};
  r.table_rows.push_back({format_double(c.alpha), format_double(constant), format_double(bound)});
  r.checks.push_back(make_check("frostman_constant", constant, bound, 0.0, "at_most"));
  return r;
}

ExperimentReport run_cantor(const RunConfig& c) {
  ExperimentReport r = start(c, "cantor");
  const CantorSet cantor(c.r, c.k);
  r.table_header = {"j", "delta", "covering_number", "expected"};
  std::vector<double> deltas;
  for (int j = 0; j <= c.k; ++j) {
    const double delta = std::pow(c.r, j);
    const auto n = covering_number(cantor.intervals(), delta);
    const double expected = std::ldexp(1.0, j);
    r.table_rows.push_back({std::to_string(j), format_double(delta), std::to_string(n),
                            format_double(expected)});
    r.checks.push_back(make_check("covering_j" + std::to_string(j), static_cast<double>(n),
                                  expected, 0.0, "equal"));
    if (j >= 1) deltas.push_back(delta);
  }
  std::string intervals = "[";
  for (std::size_t i = 0; i < cantor.intervals().size(); ++i) {
    if (i) intervals += ",";
    intervals += "[" + format_double(cantor.intervals()[i].lo) + "," +
                 format_double(cantor.intervals()[i].hi) + "]";
  }
  intervals += "]";
  std::string extra = "{\"dimension\":" + format_double(cantor.dimension()) +
                      ",\"total_length\":" + format_double(cantor.total_length());
  if (deltas.size() >= 2) {
    const double slope = minkowski_dimension(cantor.intervals(), deltas);
    extra += ",\"minkowski_slope\":" + format_double(slope);
    r.checks.push_back(make_check("minkowski_slope", slope, cantor.dimension(), 1e-6, "within"));
  }
  r.extra_json = extra + ",\"intervals\":" + intervals + "}";
  return r;
}

namespace {

std::string format_short(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<double> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      parts.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw ConfigError("grid must read lo:hi:step");
    }
  }
  if (parts.size() != 3 || !(parts[2] > 0.0) || parts[1] < parts[0]) {
    throw ConfigError("grid must read lo:hi:step with step > 0 and hi >= lo");
  }
  std::vector<double> out;
  const auto n = static_cast<long long>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9));
  for (long long i = 0; i <= n; ++i) {
    // Round away the accumulated representation error so 0.15 + 3 * 0.05
    // reads back as 0.3.
    const double v = parts[0] + static_cast<double>(i) * parts[2];
    out.push_back(std::stod(format_short(v)));
  }
  return out;
}

}  // namespace

ExperimentReport run_exponent_table(const RunConfig& c) {
  ExperimentReport r = start(c, "exponent-table");
  namespace ex = exponents;
  const std::string& name = c.calculator;
  r.table_header = {"s", "value", "status"};
  auto row = [&](const std::string& s, const std::function<double()>& f) {
    try {
      r.table_rows.push_back({s, format_double(f()), "ok"});
    } catch (const DomainError&) {
      r.table_rows.push_back({s, "", "out_of_range"});
    }
  };
  if (name == "threshold_vertical") {
    row("", [&] { return ex::threshold_vertical(c.m, c.alpha, c.q); });
  } else if (name == "threshold_lines") {
    row("", [&] { return ex::threshold_lines(c.m, c.beta); });
  } else if (name == "summary_threshold") {
    row("", [&] { return ex::summary_threshold(c.m, parse_kappa(c.kappa)); });
  } else if (name == "s_star_vertical") {
    row("", [&] { return ex::s_star_vertical(c.m, c.alpha, c.q); });
  } else if (name == "s_star_curve") {
    row("", [&] { return ex::s_star_curve(c.m, c.alpha, c.q); });
  } else if (name == "s_star_lines") {
    row("", [&] { return ex::s_star_lines(c.m, c.alpha, c.q); });
  } else {
    std::function<double(double)> f;
    if (name == "dim_bound_vertical") {
      f = [&](double s) { return ex::dim_bound_vertical(s, c.m); };
    } else if (name == "dim_bound_curve") {
      f = [&](double s) { return ex::dim_bound_curve(s, c.m); };
    } else if (name == "dim_bound_lines") {
      f = [&](double s) { return ex::dim_bound_lines(s, c.m, c.beta); };
    } else if (name == "summary_dim_bound") {
      const ex::Kappa kappa = parse_kappa(c.kappa);
      f = [&, kappa](double s) { return ex::summary_dim_bound(s, c.m, kappa); };
    } else {
      throw ConfigError("unknown calculator " + name);
    }
    for (double s : parse_grid(c.s_grid)) row(format_double(s), [&] { return f(s); });
  }
  r.checks.push_back(make_check("rows", static_cast<double>(r.table_rows.size()), 1.0, 0.0, "at_least"));
  return r;
}

ExperimentReport run_bilinear_check(const RunConfig& c) {
  ExperimentReport r = start(c, "bilinear-check");
  const AlphaMeasure measure(c.alpha);
  const int n = c.x_cells != 0 ? c.x_cells : 128;
  SampledField g;
  g.cells = equal_mass_cells(measure, 0.0, 1.0, n);
  g.values.assign(g.cells.size(), std::vector<double>(static_cast<std::size_t>(n), 1.0));
  for (int j = 1; j <= 7; ++j) {
    const double b = std::ldexp(1.0, -j);
    const BilinearReport rep = bilinear_form_check(g, g, measure, c.q, BilinearKernel::Indicator, b);
    r.points.push_back({b, rep.form, rep.bound_side, rep.constant});
  }
  std::reverse(r.points.begin(), r.points.end());
  r.fit = fit_of(r.points, &SeriesPoint::value);
  r.predicted_slope = 2.0 * c.alpha / c.q;
  r.tolerance = 0.05;
  r.comparison = "at_least";
  r.checks.push_back(make_check("form_slope_in_b", r.fit->slope, *r.predicted_slope, 0.05, "at_least"));
  return r;
}

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {
      "propagate",        "kernel-envelope", "sharpness-vertical", "sharpness-curve",
      "sharpness-lines",  "proposition-lines", "covering",         "frostman",
      "cantor",           "exponent-table",  "bilinear-check"};
  return names;
}

ExperimentReport run_experiment(const RunConfig& c) {
  const std::string& e = c.experiment;
  if (e == "propagate") return run_propagate(c);
  if (e == "kernel-envelope") return run_kernel_envelope(c);
  if (e == "sharpness-vertical") return run_sharpness_vertical(c);
  if (e == "sharpness-curve") return run_sharpness_curve(c);
  if (e == "sharpness-lines") return run_sharpness_lines(c);
  if (e == "proposition-lines") return run_proposition_lines(c);
  if (e == "covering") return run_covering(c);
  if (e == "frostman") return run_frostman(c);
  if (e == "cantor") return run_cantor(c);
  if (e == "exponent-table") return run_exponent_table(c);
  if (e == "bilinear-check") return run_bilinear_check(c);
  throw ConfigError("unknown experiment " + e);
}

}  // namespace cpl
