#pragma once

// Closed-form regularity thresholds, critical s_* values and upper bounds for
// the Hausdorff dimension of divergence sets, for the one-dimensional
// fractional Schrodinger propagator. All functions validate the inputs they
// read and throw DomainError rather than clamp.

namespace cpl::exponents {

/// A curve exponent kappa in (0, inf), or the vertical line (kappa = inf),
/// which is a separate case and never a large float.
class Kappa {
 public:
  static Kappa finite(double value);
  static Kappa infinite() { return Kappa(0.0, true); }

  [[nodiscard]] bool is_infinite() const { return infinite_; }
  /// Throws DomainError for the infinite marker.
  [[nodiscard]] double value() const;

 private:
  Kappa(double v, bool inf) : value_(v), infinite_(inf) {}
  double value_;
  bool infinite_;
};

// Regularity threshold for the maximal estimate along vertical lines.
double threshold_vertical(double m, double alpha, double q);

double s_star_vertical(double m, double alpha, double q);
double s_star_curve(double m, double alpha, double q);
double s_star_lines(double m, double alpha, double q);

/// max{1 - 2s, 1/2 + (1 - 4s) / (2(1 - m))} on s in (m/4, 1/2).
/// With `extended`, s <= m/4 returns the plateau value 1.
double dim_bound_vertical(double s, double m, bool extended = false);

/// (1 - 2s)/m on s in (1/2 - m/4, 1/2).
double dim_bound_curve(double s, double m);

double threshold_lines(double m, double beta);
/// max{(1 - 2s + m beta)/m, m beta/(4s - 2 + m)} on s in ((2 - m + m beta)/4, 1/2).
double dim_bound_lines(double s, double m, double beta);

/// Pointwise-convergence threshold along gamma(x,t) = x - theta t^kappa, for
/// both m > 1 and m in (0,1) (m = 1 is rejected).
double summary_threshold(double m, Kappa kappa);
/// Divergence-set dimension bound matching summary_threshold; requires s above
/// the threshold.
double summary_dim_bound(double s, double m, Kappa kappa);

}  // namespace cpl::exponents
