#pragma once

#include <utility>
#include <vector>

#include "cpl/geometry.hpp"
#include "cpl/spectral.hpp"

namespace cpl {

enum class MaximalMode {
  Full,          // sampled grid + injected points + refinement
  InjectedOnly,  // injected points + refinement only; results are lower bounds
};

/// Time (and line-parameter) grid contract for maximal functions.
struct GridSpec {
  double t_lo = 0.0;
  double t_hi = 1.0;
  /// Uniform t nodes on [t_lo, t_hi] (inclusive). 0 picks the smallest count
  /// satisfying the sampling invariant.
  int t_samples = 0;
  /// Uniform theta nodes per Theta component (inclusive). 0 = automatic.
  int theta_samples = 0;
  /// Refinement levels (>= 2): each level evaluates a 17-point stencil (17 x 17
  /// for line families) around the current top-3 points with the spacing
  /// divided by 8.
  int refine_depth = 2;
  MaximalMode mode = MaximalMode::Full;
  QuadratureSpec quad{};

  void validate() const;
};

struct MaximalResult {
  double value = 0.0;      // grid supremum of |u|
  double arg_t = 0.0;
  double arg_theta = 0.0;
  int evaluated = 0;       // quadratures performed
  int pruned = 0;          // candidates discarded by the rigorous modulus bound
  int skipped = 0;         // quadrature failures
  bool lower_bound = false;  // true in InjectedOnly mode
};

/// Smallest t-sample count meeting the invariant N >= ceil(4 B L / pi) + 1,
/// where L = t_hi - t_lo and B bounds the spread of the time frequencies
/// d/dt [gamma(x,t) xi + t |xi|^m] over the datum's support.
int required_t_samples(const FourierDatum& datum, double m, const Curve& curve,
                       const GridSpec& grid);

/// Smallest theta-sample count for a component of length `length`:
/// ceil(4 t_max diam(supp) length / pi) + 1.
int required_theta_samples(const FourierDatum& datum, const GridSpec& grid, double length);

/// sup over the refined t-grid of |propagate(datum, m, curve(x, t), t)|.
/// `injected_t` are evaluated first and always belong to the grid. Throws
/// SamplingError when an explicit t_samples violates the invariant (Full
/// mode) or when more than 1% of quadratures fail.
MaximalResult maximal_in_time(const FourierDatum& datum, double m, const Curve& curve, double x,
                              const GridSpec& grid, const std::vector<double>& injected_t = {});

/// sup over t and theta in Theta of |propagate(datum, m, x - theta t, t)|.
/// Components are processed independently, so dropping components never
/// increases the value. `injected` holds (t, theta) pairs; theta must lie in
/// Theta.
MaximalResult maximal_over_lines(const FourierDatum& datum, double m,
                                 const std::vector<Interval>& theta_set, double x,
                                 const GridSpec& grid,
                                 const std::vector<std::pair<double, double>>& injected = {});

/// L^q(d mu) norm of maximal values sampled on x-cells; q in [2, 64].
double mixed_norm(const std::vector<double>& values, const std::vector<XCell>& cells, double q);

/// mixed_norm / sobolev_norm(datum, s).
double ratio_quotient(double mixed, const FourierDatum& datum, double s,
                      const QuadratureSpec& spec = {});

/// Convenience: maximal_in_time on every cell point, mixed_norm, and the
/// quotient by the H^s norm.
double ratio_quotient(const FourierDatum& datum, double s, double m, const Curve& curve,
                      const std::vector<XCell>& cells, double q, const GridSpec& grid);

}  // namespace cpl
