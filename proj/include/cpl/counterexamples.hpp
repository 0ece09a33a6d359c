#pragma once

#include <vector>

#include "cpl/geometry.hpp"
#include "cpl/spectral.hpp"

namespace cpl {

/// fhat(xi) = lambda^{m-2} psi(lambda^{m-2} xi + lambda^m). Needs lambda^m > 2
/// so the support stays off xi = 0; otherwise DomainError("degenerate support").
FourierDatum knapp_vertical_temporal(double lambda, double m);

/// fhat(xi) = psi(xi / lambda), support [lambda/2, 2 lambda]. Needs lambda >= 1.
FourierDatum knapp_vertical_spatial(double lambda, double m = 0.5);

/// fhat(xi) = exp(i (2^{-kappa} theta xi - |xi|^m / 2)) lambda^{-1} psi(xi / lambda).
FourierDatum knapp_curve(double lambda, double m, double kappa, double theta);

/// fhat(xi) = exp(-i |xi|^m) psi(lambda_k^{-1/m} xi), support
/// [lambda_k^{1/m}/2, 2 lambda_k^{1/m}].
FourierDatum cantor_data(double lambda_k, double m);

/// Generalized binomial coefficients of (1 + u)^kappa, a_0 .. a_{N-1}.
struct TaylorCoefficients {
  double kappa = 1.0;
  int n = 1;
  std::vector<double> a;
};

TaylorCoefficients taylor_coeffs(double kappa, int n);

/// The least N with m N > 1, plus one: ceil(1/m) + 1.
int taylor_order(double m);

/// h_N(tau) = 2^{-kappa} sum_{j=1}^{N-1} a_j (2 tau)^j.
double h_N_eval(double tau, const TaylorCoefficients& coeffs);

/// Inverse of h_N on the domain (0, tau_max] by monotone bisection to 1e-15
/// relative. Throws OutOfRange when x is outside [0, h_N(tau_max)] and Error
/// when h_N is not monotone on a 1000-point scan of the domain.
double h_N_invert(double x, const TaylorCoefficients& coeffs, double tau_max);

struct MatchedPoint {
  double x = 0.0;
  double tau = 0.0;
  double t = 0.0;
  double theta = 0.0;
  double lambda = 0.0;
  double residual = 0.0;  // curve case: max phase residual over the band
};

/// Matched point of knapp_curve along gamma = x - theta t^kappa:
/// tau = h_N^{-1}(x / theta) on (0, lambda^{-m}/100], t = 1/2 + tau, with the
/// max over 1000 eta in [1/2, 2] of
/// |lambda (x - theta (tau + 1/2)^kappa + theta 2^{-kappa}) eta + lambda^m tau eta^m|.
/// Throws PhaseMismatch when the residual exceeds 0.6.
MatchedPoint matched_point_curve(double x, double lambda, double m, double kappa, double theta);

/// The largest x for which matched_point_curve is defined: theta h_N(lambda^{-m}/100).
double matched_window_curve(double lambda, double m, double kappa, double theta);

/// Cantor selectors: theta = right endpoint of the level-k component holding
/// x, tau = (theta - x)/theta, t = 1 - tau, lambda = r^{-k}. Throws
/// DomainError("not in prefractal window") unless x lies in C_k(r) and (1/2, 1).
MatchedPoint cantor_selectors(double x, const CantorSet& cantor);

}  // namespace cpl
