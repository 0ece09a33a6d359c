#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "cpl/quadrature.hpp"

namespace cpl {

// ---------------------------------------------------------------- curves

enum class CurveKind { Vertical, Tilted, Power, Exponential, Custom };

/// A space-time path gamma(x, t) along which the propagator is sampled.
class Curve {
 public:
  using Rule = std::function<double(double, double)>;

  static Curve vertical();
  /// gamma = x - theta t.
  static Curve tilted(double theta);
  /// gamma = x - theta t^kappa.
  static Curve power(double theta, double kappa);
  /// gamma = x - exp(-1/t) for t > 0, x at t = 0.
  static Curve exponential();
  /// A user rule with declared Lipschitz constants |d gamma/dt| <= c1 and
  /// |gamma(x,t) - gamma(x',t)| >= c2 |x - x'|.
  static Curve custom(Rule rule, double c1, double c2);

  double operator()(double x, double t) const;

  [[nodiscard]] CurveKind kind() const { return kind_; }
  [[nodiscard]] double theta() const { return theta_; }
  [[nodiscard]] double kappa() const { return kappa_; }
  /// An upper bound for sup |d gamma / dt| over t in [t_lo, t_hi].
  [[nodiscard]] double time_speed_bound(double t_lo, double t_hi) const;

 private:
  Curve(CurveKind kind, double theta, double kappa) : kind_(kind), theta_(theta), kappa_(kappa) {}
  CurveKind kind_;
  double theta_;
  double kappa_;
  Rule rule_;
  double c1_ = 0.0;
  double c2_ = 1.0;
};

struct LipschitzReport {
  double c1 = 0.0;  // largest |gamma(x,t) - gamma(x,t')| / |t - t'| seen on adjacent t nodes
  double c2 = 0.0;  // smallest |gamma(x,t) - gamma(x',t)| / |x - x'| seen on adjacent x nodes
  bool pass = false;
};

/// Empirical Lipschitz constants of the curve on a tensor grid (both grids
/// sorted, at least two nodes each).
LipschitzReport lipschitz_check(const Curve& curve, const std::vector<double>& xs,
                                const std::vector<double>& ts);

// ---------------------------------------------------------------- measures

/// d mu(x) = |x|^{alpha - 1} dx restricted to the unit interval (0, 1).
class AlphaMeasure {
 public:
  explicit AlphaMeasure(double alpha);

  [[nodiscard]] double alpha() const { return alpha_; }
  /// mu([a, b] intersected with (0, 1)); zero for empty intersections.
  [[nodiscard]] double mass(double a, double b) const;
  /// mu((0, 1)) = 1/alpha.
  [[nodiscard]] double total() const { return 1.0 / alpha_; }
  /// The point splitting [a, b] subset [0, 1] into halves of equal mass.
  [[nodiscard]] double median(double a, double b) const;

 private:
  double alpha_;
};

double measure_of_ball(const AlphaMeasure& measure, double center, double radius);

/// Grid supremum of mu(B(a, r)) / r^alpha.
double frostman_constant(const AlphaMeasure& measure, const std::vector<double>& radii,
                         const std::vector<double>& centers);

/// A cell of an x-grid together with its exact measure and the point at which
/// functions are sampled.
struct XCell {
  double lo = 0.0;
  double hi = 0.0;
  double weight = 0.0;
  double point = 0.0;
};

/// n cells of equal width on [lo, hi] subset [0, 1], sampled at the mu-median.
std::vector<XCell> uniform_cells(const AlphaMeasure& measure, double lo, double hi, int n);
/// n cells of equal mu-mass on [lo, hi] subset [0, 1].
std::vector<XCell> equal_mass_cells(const AlphaMeasure& measure, double lo, double hi, int n);
/// Geometric cells [x0 r^j, x0 r^{j+1}] from `lo` up to `hi` with ratio
/// `ratio` > 1, plus the cell [0, lo] when `include_origin`.
std::vector<XCell> geometric_cells(const AlphaMeasure& measure, double lo, double hi,
                                   double ratio, bool include_origin);

/// (sum_i |v_i|^q mu(cell_i))^{1/q} for piecewise-constant samples.
double lq_mu_norm(const std::vector<double>& values, const std::vector<XCell>& cells, double q);
/// (int_0^1 |f|^q d mu)^{1/q}, by Gauss-Legendre on `panels` panels in the
/// variable u = x^alpha (exact for polynomials in u of moderate degree).
double lq_mu_norm(const RealFn& f, const AlphaMeasure& measure, double q, int panels = 64);

// ---------------------------------------------------------------- Cantor sets

/// Level-k prefractal of the ratio-r middle Cantor set: 2^k closed intervals of
/// length r^k, ordered left to right.
class CantorSet {
 public:
  CantorSet(double r, int k);

  [[nodiscard]] double ratio() const { return r_; }
  [[nodiscard]] int level() const { return k_; }
  [[nodiscard]] const std::vector<Interval>& intervals() const { return intervals_; }
  [[nodiscard]] double component_length() const { return length_; }
  [[nodiscard]] double total_length() const;
  /// -log 2 / log r.
  [[nodiscard]] double dimension() const;
  /// Index of the component containing x, if any.
  [[nodiscard]] std::optional<std::size_t> component_of(double x) const;

 private:
  double r_;
  int k_;
  double length_;
  std::vector<Interval> intervals_;
};

CantorSet cantor_level(double r, int k);

/// Least number of closed length-delta intervals covering the union (greedy
/// left-to-right sweep, optimal for finite unions of intervals).
std::int64_t covering_number(std::vector<Interval> intervals, double delta);

/// Least-squares slope of log N(delta) against log(1/delta).
double minkowski_dimension(const std::vector<Interval>& intervals,
                           const std::vector<double>& deltas);

// ---------------------------------------------------------------- bilinear forms

/// A function of (x, t) sampled on x-cells times a uniform t-grid on (0, 1):
/// values[i][j] is the value on x-cell i and t-cell j.
struct SampledField {
  std::vector<XCell> cells;
  std::vector<std::vector<double>> values;
};

enum class BilinearKernel { Indicator, Power };

struct BilinearReport {
  double form = 0.0;       // the quadruple integral
  double bound_side = 0.0;  // b^{2 alpha/q} |g| |h| (indicator) or |g| |h| (power)
  double constant = 0.0;   // form / bound_side (0 when bound_side is 0)
};

/// The quadruple integral of g(x,t) h(x',t') W(x - x') d mu d mu dt dt' with
/// W = 1{|x - x'| < b} or |x - x'|^{-rho}, cell-pair weights integrated
/// exactly up to quadrature error; norms are L^{q'}_x(d mu) L^1_t.
/// The power kernel requires 0 < q rho / 2 < alpha.
BilinearReport bilinear_form_check(const SampledField& g, const SampledField& h,
                                   const AlphaMeasure& measure, double q, BilinearKernel kernel,
                                   double parameter);

/// L^{q'}_x(d mu) L^1_t norm of a sampled field.
double mixed_dual_norm(const SampledField& g, double q);

}  // namespace cpl
