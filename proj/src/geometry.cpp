#include "cpl/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "cpl/errors.hpp"

namespace cpl {

// ---------------------------------------------------------------- curves

Curve Curve::vertical() { return Curve(CurveKind::Vertical, 0.0, 1.0); }

Curve Curve::tilted(double theta) {
  if (!(theta >= 0.0) || !std::isfinite(theta)) throw DomainError("theta must be >= 0");
  return Curve(CurveKind::Tilted, theta, 1.0);
}

Curve Curve::power(double theta, double kappa) {
  if (!(theta >= 0.0) || !std::isfinite(theta)) throw DomainError("theta must be >= 0");
  if (!(kappa > 0.0) || !std::isfinite(kappa)) throw DomainError("kappa must be positive");
  return Curve(CurveKind::Power, theta, kappa);
}

Curve Curve::exponential() { return Curve(CurveKind::Exponential, 1.0, 0.0); }

Curve Curve::custom(Rule rule, double c1, double c2) {
  if (!rule) throw DomainError("custom curve needs a rule");
  if (!(c1 >= 0.0) || !(c2 > 0.0)) throw DomainError("custom curve needs c1 >= 0 and c2 > 0");
  Curve c(CurveKind::Custom, 0.0, 0.0);
  c.rule_ = std::move(rule);
  c.c1_ = c1;
  c.c2_ = c2;
  return c;
}

double Curve::operator()(double x, double t) const {
  switch (kind_) {
    case CurveKind::Vertical:
      return x;
    case CurveKind::Tilted:
      return x - theta_ * t;
    case CurveKind::Power:
      return x - theta_ * std::pow(t, kappa_);
    case CurveKind::Exponential:
      return t > 0.0 ? x - std::exp(-1.0 / t) : x;
    case CurveKind::Custom:
      return rule_(x, t);
  }
  return x;
}

double Curve::time_speed_bound(double t_lo, double t_hi) const {
  const double a = std::max(0.0, std::min(std::abs(t_lo), std::abs(t_hi)));
  const double b = std::max(std::abs(t_lo), std::abs(t_hi));
  switch (kind_) {
    case CurveKind::Vertical:
      return 0.0;
    case CurveKind::Tilted:
      return theta_;
    case CurveKind::Power: {
      // |d/dt theta t^kappa| = theta kappa t^{kappa - 1}: monotone in t.
      if (kappa_ >= 1.0) return theta_ * kappa_ * std::pow(b, kappa_ - 1.0);
      if (a == 0.0) throw DomainError("tangential power curve has unbounded speed at t = 0");
      return theta_ * kappa_ * std::pow(a, kappa_ - 1.0);
    }
    case CurveKind::Exponential:
      // t^{-2} e^{-1/t} increases on (0, 1/2] and is bounded by 4 e^{-2} there,
      // and by 1 overall; use the exact maximum on the window.
      return b <= 0.5 ? (b > 0.0 ? std::exp(-1.0 / b) / (b * b) : 0.0) : 4.0 * std::exp(-2.0);
    case CurveKind::Custom:
      return c1_;
  }
  return 0.0;
}

LipschitzReport lipschitz_check(const Curve& curve, const std::vector<double>& xs,
                                const std::vector<double>& ts) {
  if (xs.size() < 2 || ts.size() < 2) throw DomainError("Lipschitz grids need two nodes each");
  LipschitzReport report;
  report.c2 = std::numeric_limits<double>::infinity();
  for (double x : xs) {
    for (std::size_t j = 0; j + 1 < ts.size(); ++j) {
      const double dt = ts[j + 1] - ts[j];
      if (dt == 0.0) continue;
      report.c1 = std::max(report.c1, std::abs(curve(x, ts[j + 1]) - curve(x, ts[j])) / std::abs(dt));
    }
  }
  for (double t : ts) {
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
      const double dx = xs[i + 1] - xs[i];
      if (dx == 0.0) continue;
      report.c2 = std::min(report.c2, std::abs(curve(xs[i + 1], t) - curve(xs[i], t)) / std::abs(dx));
    }
  }
  report.pass = std::isfinite(report.c1) && report.c2 > 0.0 && std::isfinite(report.c2);
  return report;
}

// ---------------------------------------------------------------- measures

AlphaMeasure::AlphaMeasure(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("alpha must lie in (0, 1]");
}

double AlphaMeasure::mass(double a, double b) const {
  const double lo = std::clamp(a, 0.0, 1.0);
  const double hi = std::clamp(b, 0.0, 1.0);
  if (!(hi > lo)) return 0.0;
  if (alpha_ == 1.0) return hi - lo;
  return (std::pow(hi, alpha_) - std::pow(lo, alpha_)) / alpha_;
}

double AlphaMeasure::median(double a, double b) const {
  if (alpha_ == 1.0) return 0.5 * (a + b);
  return std::pow(0.5 * (std::pow(a, alpha_) + std::pow(b, alpha_)), 1.0 / alpha_);
}

double measure_of_ball(const AlphaMeasure& measure, double center, double radius) {
  if (!(radius > 0.0)) throw DomainError("ball radius must be positive");
  return measure.mass(center - radius, center + radius);
}

double frostman_constant(const AlphaMeasure& measure, const std::vector<double>& radii,
                         const std::vector<double>& centers) {
  double best = 0.0;
  for (double r : radii) {
    const double scale = std::pow(r, measure.alpha());
    for (double a : centers) best = std::max(best, measure_of_ball(measure, a, r) / scale);
  }
  return best;
}

namespace {

void check_window(double lo, double hi) {
  if (!(lo >= 0.0 && hi <= 1.0 && lo < hi)) throw DomainError("x-window must satisfy 0 <= lo < hi <= 1");
}

XCell make_cell(const AlphaMeasure& measure, double lo, double hi) {
  return XCell{lo, hi, measure.mass(lo, hi), measure.median(lo, hi)};
}

}  // namespace

std::vector<XCell> uniform_cells(const AlphaMeasure& measure, double lo, double hi, int n) {
  check_window(lo, hi);
  if (n < 1) throw DomainError("cell count must be >= 1");
  std::vector<XCell> cells;
  cells.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double a = lo + (hi - lo) * i / n;
    const double b = (i + 1 == n) ? hi : lo + (hi - lo) * (i + 1) / n;
    cells.push_back(make_cell(measure, a, b));
  }
  return cells;
}

std::vector<XCell> equal_mass_cells(const AlphaMeasure& measure, double lo, double hi, int n) {
  check_window(lo, hi);
  if (n < 1) throw DomainError("cell count must be >= 1");
  const double alpha = measure.alpha();
  const double ulo = std::pow(lo, alpha);
  const double uhi = std::pow(hi, alpha);
  std::vector<XCell> cells;
  cells.reserve(n);
  double prev = lo;
  for (int i = 0; i < n; ++i) {
    const double next = (i + 1 == n) ? hi : std::pow(ulo + (uhi - ulo) * (i + 1) / n, 1.0 / alpha);
    cells.push_back(make_cell(measure, prev, next));
    prev = next;
  }
  return cells;
}

std::vector<XCell> geometric_cells(const AlphaMeasure& measure, double lo, double hi,
                                   double ratio, bool include_origin) {
  check_window(lo, hi);
  if (!(lo > 0.0)) throw DomainError("geometric cells need lo > 0");
  if (!(ratio > 1.0)) throw DomainError("geometric ratio must exceed 1");
  std::vector<XCell> cells;
  if (include_origin) cells.push_back(make_cell(measure, 0.0, lo));
  double a = lo;
  for (int j = 1; a < hi; ++j) {
    double b = lo * std::pow(ratio, j);
    if (b >= hi * (1.0 - 1e-12)) b = hi;
    cells.push_back(make_cell(measure, a, b));
    a = b;
  }
  return cells;
}

double lq_mu_norm(const std::vector<double>& values, const std::vector<XCell>& cells, double q) {
  if (values.size() != cells.size()) throw DomainError("values and cells differ in length");
  if (!(q >= 1.0) || !std::isfinite(q)) throw DomainError("q must be a finite real >= 1");
  // Factor out the maximum so large q does not overflow.
  double vmax = 0.0;
  for (double v : values) vmax = std::max(vmax, std::abs(v));
  if (vmax == 0.0) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    sum += std::pow(std::abs(values[i]) / vmax, q) * cells[i].weight;
  }
  return vmax * std::pow(sum, 1.0 / q);
}

double lq_mu_norm(const RealFn& f, const AlphaMeasure& measure, double q, int panels) {
  if (!(q >= 1.0) || !std::isfinite(q)) throw DomainError("q must be a finite real >= 1");
  const double alpha = measure.alpha();
  // x = u^{1/alpha}: d mu = du / alpha on u in (0, 1).
  const RealFn g = [&](double u) { return std::pow(std::abs(f(std::pow(u, 1.0 / alpha))), q) / alpha; };
  return std::pow(gauss_legendre_integrate(g, 0.0, 1.0, 24, panels), 1.0 / q);
}

// ---------------------------------------------------------------- Cantor sets

CantorSet::CantorSet(double r, int k) : r_(r), k_(k) {
  if (!(r > 0.0 && r < 0.5)) throw DomainError("invalid ratio: r must lie in (0, 1/2)");
  if (k < 0 || k > 24) throw DomainError("Cantor level must lie in [0, 24]");
  length_ = std::pow(r, k);
  const std::size_t count = std::size_t{1} << k;
  intervals_.reserve(count);
  std::vector<double> steps(k);
  for (int i = 0; i < k; ++i) steps[i] = (1.0 - r) * std::pow(r, i);
  for (std::size_t index = 0; index < count; ++index) {
    // Binary digits of the index, most significant first, choose left/right
    // children at each level.
    double left = 0.0;
    for (int i = 0; i < k; ++i) {
      if ((index >> (k - 1 - i)) & 1U) left += steps[i];
    }
    intervals_.push_back({left, left + length_});
  }
}

double CantorSet::total_length() const { return std::pow(2.0 * r_, k_); }

double CantorSet::dimension() const { return -std::log(2.0) / std::log(r_); }

std::optional<std::size_t> CantorSet::component_of(double x) const {
  auto it = std::upper_bound(intervals_.begin(), intervals_.end(), x,
                             [](double v, const Interval& iv) { return v < iv.lo; });
  if (it == intervals_.begin()) return std::nullopt;
  --it;
  if (x <= it->hi) return static_cast<std::size_t>(it - intervals_.begin());
  return std::nullopt;
}

CantorSet cantor_level(double r, int k) { return CantorSet(r, k); }

std::int64_t covering_number(std::vector<Interval> intervals, double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta)) throw DomainError("delta must be positive");
  std::sort(intervals.begin(), intervals.end(),
            [](const Interval& l, const Interval& r) { return l.lo < r.lo; });
  const double slack = 1e-9 * delta;
  std::int64_t count = 0;
  double covered = -std::numeric_limits<double>::infinity();
  for (const Interval& iv : intervals) {
    if (iv.hi < iv.lo) throw DomainError("interval with hi < lo");
    if (iv.lo > covered + slack) {
      ++count;
      covered = iv.lo + delta;
    }
    const double remaining = iv.hi - covered;
    if (remaining > slack) {
      const auto n = static_cast<std::int64_t>(std::ceil(remaining / delta - 1e-9));
      count += n;
      covered += static_cast<double>(n) * delta;
    }
  }
  return count;
}

double minkowski_dimension(const std::vector<Interval>& intervals,
                           const std::vector<double>& deltas) {
  if (deltas.size() < 2) throw DomainError("need at least two scales");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double n = static_cast<double>(deltas.size());
  for (double d : deltas) {
    const double x = std::log(1.0 / d);
    const double y = std::log(static_cast<double>(covering_number(intervals, d)));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw DomainError("scales must be distinct");
  return (n * sxy - sx * sy) / denom;
}

// ---------------------------------------------------------------- bilinear forms

namespace {

constexpr int kGlOrder = 20;

// int between x and p of |x - x'|^{-rho} d mu(x'), with p in [0, 1]. The half
// next to x is integrated in w = |x - x'| = v^{1/(1 - rho)}, which removes the
// singularity; the far half in u = x'^alpha, which removes the one at 0.
double singular_segment(double x, double p, double rho, double alpha) {
  if (p == x) return 0.0;
  const double mid = 0.5 * (x + p);
  const double dir = p > x ? 1.0 : -1.0;
  const double wmax = std::abs(mid - x);
  const double vmax = std::pow(wmax, 1.0 - rho);
  const RealFn near = [&](double v) {
    const double w = std::pow(v, 1.0 / (1.0 - rho));
    const double xp = x + dir * w;
    return std::pow(xp, alpha - 1.0) / (1.0 - rho);
  };
  const double near_part = gauss_legendre_integrate(near, 0.0, vmax, kGlOrder, 2);
  const double ua = std::pow(std::min(mid, p), alpha);
  const double ub = std::pow(std::max(mid, p), alpha);
  const RealFn far = [&](double u) {
    const double xp = std::pow(u, 1.0 / alpha);
    return std::pow(std::abs(x - xp), -rho) / alpha;
  };
  const double far_part = gauss_legendre_integrate(far, ua, ub, kGlOrder, 2);
  return near_part + far_part;
}

double power_inner(double x, double c, double d, double rho, double alpha) {
  if (x <= c) return singular_segment(x, d, rho, alpha) - singular_segment(x, c, rho, alpha);
  if (x >= d) return singular_segment(x, c, rho, alpha) - singular_segment(x, d, rho, alpha);
  return singular_segment(x, c, rho, alpha) + singular_segment(x, d, rho, alpha);
}

// int over cell (in u = x^alpha) of F(x) d mu(x) with breakpoints in x.
double outer_integral(const RealFn& inner, const XCell& cell, double alpha,
                      std::vector<double> breaks) {
  breaks.push_back(cell.lo);
  breaks.push_back(cell.hi);
  std::sort(breaks.begin(), breaks.end());
  QuadratureSpec spec;
  spec.rel_tol = 1e-9;
  spec.abs_tol = 1e-15;
  const RealFn zero = [](double) { return 0.0; };
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double a = std::max(breaks[i], cell.lo);
    const double b = std::min(breaks[i + 1], cell.hi);
    if (!(b > a)) continue;
    const Interval ui{std::pow(a, alpha), std::pow(b, alpha)};
    const SmoothFunction1D g(
        [&](double u) { return Complex(inner(std::pow(u, 1.0 / alpha)) / alpha, 0.0); }, ui);
    total += integrate(g, zero, ui, spec).real();
  }
  return total;
}

double pair_weight(const XCell& ci, const XCell& cj, const AlphaMeasure& measure,
                   BilinearKernel kernel, double parameter) {
  const double alpha = measure.alpha();
  if (kernel == BilinearKernel::Indicator) {
    const double b = parameter;
    const double far = std::max(std::abs(ci.hi - cj.lo), std::abs(cj.hi - ci.lo));
    const double near = std::max({0.0, cj.lo - ci.hi, ci.lo - cj.hi});
    if (far < b) return ci.weight * cj.weight;
    if (near >= b) return 0.0;
    const RealFn inner = [&](double x) { return measure.mass(std::max(cj.lo, x - b), std::min(cj.hi, x + b)); };
    return outer_integral(inner, ci, alpha, {cj.lo - b, cj.lo + b, cj.hi - b, cj.hi + b});
  }
  const double rho = parameter;
  const RealFn inner = [&](double x) { return power_inner(x, cj.lo, cj.hi, rho, alpha); };
  return outer_integral(inner, ci, alpha, {cj.lo, cj.hi});
}

std::vector<double> time_integrals(const SampledField& g) {
  std::vector<double> out;
  out.reserve(g.values.size());
  for (const auto& row : g.values) {
    if (row.empty()) throw DomainError("sampled field has an empty t-row");
    const double dt = 1.0 / static_cast<double>(row.size());
    double s = 0.0;
    for (double v : row) s += v * dt;
    out.push_back(s);
  }
  return out;
}

void check_field(const SampledField& g) {
  if (g.cells.empty() || g.cells.size() != g.values.size()) {
    throw DomainError("sampled field needs one t-row per x-cell");
  }
}

}  // namespace

double mixed_dual_norm(const SampledField& g, double q) {
  check_field(g);
  if (!(q > 1.0) || !std::isfinite(q)) throw DomainError("q must be a finite real > 1");
  const double qd = q / (q - 1.0);
  double sum = 0.0;
  for (std::size_t i = 0; i < g.values.size(); ++i) {
    const double dt = 1.0 / static_cast<double>(g.values[i].size());
    double l1 = 0.0;
    for (double v : g.values[i]) l1 += std::abs(v) * dt;
    sum += std::pow(l1, qd) * g.cells[i].weight;
  }
  return std::pow(sum, 1.0 / qd);
}

BilinearReport bilinear_form_check(const SampledField& g, const SampledField& h,
                                   const AlphaMeasure& measure, double q, BilinearKernel kernel,
                                   double parameter) {
  check_field(g);
  check_field(h);
  if (!(q >= 2.0) || !std::isfinite(q)) throw DomainError("q must be a finite real >= 2");
  if (kernel == BilinearKernel::Indicator) {
    if (!(parameter > 0.0)) throw DomainError("indicator width b must be positive");
  } else {
    const double rho = parameter;
    if (!(rho > 0.0 && q * rho / 2.0 < measure.alpha())) {
      throw DomainError("HLS exponent out of range: need 0 < q rho / 2 < alpha");
    }
  }
  const std::vector<double> gt = time_integrals(g);
  const std::vector<double> ht = time_integrals(h);
  BilinearReport report;
  for (std::size_t i = 0; i < g.cells.size(); ++i) {
    if (gt[i] == 0.0) continue;
    for (std::size_t j = 0; j < h.cells.size(); ++j) {
      if (ht[j] == 0.0) continue;
      report.form += gt[i] * ht[j] * pair_weight(g.cells[i], h.cells[j], measure, kernel, parameter);
    }
  }
  const double norms = mixed_dual_norm(g, q) * mixed_dual_norm(h, q);
  report.bound_side = kernel == BilinearKernel::Indicator
                          ? std::pow(parameter, 2.0 * measure.alpha() / q) * norms
                          : norms;
  report.constant = report.bound_side > 0.0 ? report.form / report.bound_side : 0.0;
  return report;
}

}  // namespace cpl
