#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace cpl {

using Complex = std::complex<double>;
using RealFn = std::function<double(double)>;
using ComplexFn = std::function<Complex(double)>;

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  [[nodiscard]] double length() const { return hi - lo; }
  [[nodiscard]] bool contains(double x) const { return x >= lo && x <= hi; }
};

struct QuadratureSpec {
  double rel_tol = 1e-8;
  double abs_tol = 1e-12;
  int max_subdivisions = 200000;
  std::int64_t oracle_nodes = 1'000'001;

  /// Throws DomainError on non-positive tolerances, zero subdivisions or an
  /// oracle grid coarser than 10^5 nodes.
  void validate() const;
};

/// A complex-valued rule that is identically zero outside a closed bounded
/// support interval.
class SmoothFunction1D {
 public:
  SmoothFunction1D(ComplexFn rule, Interval support);

  Complex operator()(double x) const {
    if (x < support_.lo || x > support_.hi) return {0.0, 0.0};
    return rule_(x);
  }
  [[nodiscard]] Interval support() const { return support_; }

 private:
  ComplexFn rule_;
  Interval support_;
};

struct QuadratureResult {
  Complex value;
  double error = 0.0;
  int cells = 0;
  std::int64_t evaluations = 0;
  /// The requested tolerance lies below the rounding floor 100 eps int |f|
  /// and the result was accepted at that floor instead.
  bool roundoff_limited = false;
};

/// Adaptive Gauss-Kronrod (7/15) integration of amplitude(x) * exp(i phase(x))
/// over `interval`.
///
/// The interval is first cut so that no cell carries more than pi of phase
/// (estimated from a coarse phase scan); cells whose Kronrod nodes still show
/// a phase span above 2*pi, or whose local error dominates, are bisected until
/// the summed error meets max(abs_tol, rel_tol * |I|), or the rounding floor
/// 100 eps int |f| when that is larger (see QuadratureResult::roundoff_limited).
QuadratureResult integrate_detailed(const SmoothFunction1D& amplitude, const RealFn& phase,
                                    Interval interval, const QuadratureSpec& spec = {});

Complex integrate(const SmoothFunction1D& amplitude, const RealFn& phase, Interval interval,
                  const QuadratureSpec& spec = {});

/// Composite Simpson on `node_count` equispaced nodes (odd, >= 3). Slow and
/// naive on purpose: the reference the adaptive path is checked against.
Complex oracle_integrate(const SmoothFunction1D& amplitude, const RealFn& phase,
                         Interval interval, std::int64_t node_count);

/// Gauss-Legendre rule with n nodes on [-1, 1]; nodes ascending.
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussLegendre& gauss_legendre(int n);

/// Gauss-Legendre integral of a real function over [a, b] split into `panels`
/// equal panels with an n-point rule per panel.
double gauss_legendre_integrate(const RealFn& f, double a, double b, int n, int panels = 1);

}  // namespace cpl
