#pragma once

#include <vector>

#include "cpl/fit.hpp"
#include "cpl/quadrature.hpp"

namespace cpl {

enum class EnvelopeVariant { Vertical, Curve };

/// Parameters of the kernel envelopes. s_star is derived from (m, alpha, q)
/// with the formula of the chosen variant.
struct EnvelopeParams {
  double lambda = 1.0;
  double m = 0.5;
  double alpha = 1.0;
  double q = 2.0;
  double eps = 0.05;
  double s_star = 0.0;

  static EnvelopeParams make(EnvelopeVariant variant, double lambda, double m, double alpha,
                             double q, double eps = 0.05);
  /// Throws DomainError on any out-of-range field.
  void validate() const;
  /// The edge lambda^{-q s_star / alpha} of the indicator region.
  [[nodiscard]] double indicator_edge() const;
};

/// A subinterval of the band (1/2, 2); `empty` when it has no interior.
struct BandPiece {
  double lo = 0.5;
  double hi = 2.0;
  bool empty = true;
};

struct VerticalSplit {
  BandPiece v1;    // (1/2, xi_b]: 2 lambda^m |t| xi^{m-1} >= lambda^{4 s_*} |x|^{4 alpha/q}
  BandPiece v2;    // the rest of the band
  double boundary = 0.0;  // xi_b (0 when t = 0: the whole band lies in V2)
};

/// Frequency split for the vertical-line kernel. Throws DomainError for x = 0.
VerticalSplit split_vertical(const EnvelopeParams& params, double x, double t);

enum class Region { V1, V2 };

/// V1 when (kappa + 2)|dt| <= |dx|, else V2.
Region split_curve(double kappa, double dx, double dt);

/// lambda (chi(|x| <= x_c) + lambda^{-2 s_* + eps} max(|x|, x_c)^{-2 alpha/q + eps}).
double envelope_J_vertical(const EnvelopeParams& params, double x);
/// As envelope_J_vertical with exponent -2 s_* + eps on |x|.
double envelope_J_curve(const EnvelopeParams& params, double x);

struct DerivativeMinima {
  double min_first = 0.0;   // min |phi'| over the region
  double min_second = 0.0;  // min |phi''| over the region
};

/// Minima of |phi'| and |phi''| for phi(xi) = lambda x xi + lambda^m t xi^m over
/// `samples` equispaced points of the requested region of split_vertical.
/// Throws EmptyRegion when the region is empty.
DerivativeMinima phase_derivative_min_vertical(const EnvelopeParams& params, Region region,
                                               double x, double t, int samples = 10000);

/// Curve case gamma = x - theta t^kappa:
/// phi(xi) = lambda (gamma(x,t) - gamma(x',t')) xi + lambda^m (t - t') xi^m on
/// (1/2, 2). The requested region must be the one split_curve assigns to
/// (x - x', t - t'), else EmptyRegion.
DerivativeMinima phase_derivative_min_curve(double lambda, double m, double kappa, double theta,
                                            double x, double xp, double t, double tp,
                                            Region region, int samples = 10000);

/// True when |t^kappa - t'^kappa| <= kappa |t - t'| on every pair of the grid
/// (grid inside [0, 1]).
bool mean_value_inequality_holds(double kappa, const std::vector<double>& ts);

struct EnvelopeLevel {
  double lambda = 0.0;
  double sup_ratio = 0.0;
  double arg_x = 0.0;
  double arg_t = 0.0;
  int failures = 0;
};

struct EnvelopeReport {
  std::vector<EnvelopeLevel> levels;
  LogLogFit fit;
  int failures = 0;
};

/// For each lambda, sup over the grid of |K_lambda| / J_lambda.
/// Vertical: x and t at midpoints of `grid` cells in (0, 1) and (-1, 1),
/// kernel K(x, t). Curve: dx and dt at midpoints in (0, 1) with t' = 0,
/// kernel K(dx - theta dt^kappa, dt). Quadrature failures are counted and
/// skipped.
EnvelopeReport check_kernel_envelope(EnvelopeVariant variant, double m, double alpha, double q,
                                     double eps, const std::vector<double>& lambdas, int grid,
                                     double kappa = 1.0, double theta = 1.0,
                                     const QuadratureSpec& spec = {});

}  // namespace cpl
