#pragma once

#include "cpl/quadrature.hpp"

namespace cpl {

/// Reference bump psi(xi) = exp(1 - 1/(1 - u^2)), u = (xi - 5/4)/(3/4), on
/// (1/2, 2); zero elsewhere. psi(5/4) = 1.
double psi(double xi);

/// The bump as a SmoothFunction1D with support [1/2, 2].
SmoothFunction1D reference_bump();

/// Integral of psi over [1/2, 2] (independent 30-digit reference value).
inline constexpr double kPsiMass = 0.905175241828407131502;
/// Integral of psi^2 over [1/2, 2].
inline constexpr double kPsiSquaredMass = 0.737535609684544847721;

/// Parameters of a band-limited datum given on the frequency side by
///   fhat(xi) = A * exp(i (c1 xi + cm |xi|^m)) * psi(a xi + b).
struct DatumParams {
  Complex amplitude{1.0, 0.0};  // A
  double scale = 1.0;           // a, nonzero
  double shift = 0.0;           // b
  double linear_phase = 0.0;    // c1
  double fractional_phase = 0.0;  // cm
  double m = 0.5;               // fractional exponent in (0, 1)
};

class FourierDatum {
 public:
  /// Throws DomainError when a = 0, m is outside (0, 1), any field is
  /// non-finite, or the frequency support reaches xi = 0.
  explicit FourierDatum(const DatumParams& params);

  [[nodiscard]] const DatumParams& params() const { return p_; }
  /// Closed frequency support {xi : 1/2 <= a xi + b <= 2}.
  [[nodiscard]] Interval support() const { return support_; }
  /// fhat(xi); zero outside the support.
  [[nodiscard]] Complex operator()(double xi) const;
  /// The same datum with amplitude A replaced by `amplitude`.
  [[nodiscard]] FourierDatum with_amplitude(Complex amplitude) const;

 private:
  DatumParams p_;
  Interval support_;
};

/// u(x, t) = (2 pi)^{-1} int exp(i (x xi + t |xi|^m)) fhat(xi) dxi, computed in
/// the bump coordinate eta = a xi + b. Throws DomainError when the datum
/// carries a fractional modulation with a different exponent.
Complex propagate(const FourierDatum& datum, double m, double x, double t,
                  const QuadratureSpec& spec = {});

/// A rigorous upper bound for |propagate(datum, m, x, t)| that costs a handful
/// of flops: |A| / (2 pi |a|) times the smallest of M_psi and the one- and
/// two-fold integration-by-parts bounds, where d is the minimum modulus of the
/// (monotone) phase derivative when it keeps one sign on the support.
double propagate_modulus_bound(const FourierDatum& datum, double m, double x, double t);

/// The inverse Fourier transform (2 pi)^{-1} int fhat(xi) exp(i x xi) dxi,
/// integrated directly in the xi variable (an independent path from
/// propagate at t = 0).
Complex inverse_transform_direct(const FourierDatum& datum, double x,
                                 const QuadratureSpec& spec = {});

/// ((2 pi)^{-1} int (1 + xi^2)^s |fhat(xi)|^2 dxi)^{1/2}.
double sobolev_norm(const FourierDatum& datum, double s, const QuadratureSpec& spec = {});

/// (2 pi)^{-1} int |fhat|, the trivial bound on sup |u|.
double fourier_l1_scale(const FourierDatum& datum);

/// K_lambda(x, t) = lambda int_{1/2}^{2} exp(i (lambda x xi + lambda^m t xi^m)) psi(xi)^2 dxi.
Complex kernel_K(double lambda, double m, double x, double t, const QuadratureSpec& spec = {});

}  // namespace cpl
