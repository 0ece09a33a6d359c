#include "cpl/counterexamples.hpp"

#include <algorithm>
#include <cmath>

#include "cpl/errors.hpp"

namespace cpl {

FourierDatum knapp_vertical_temporal(double lambda, double m) {
  if (!(m > 0.0 && m < 1.0)) throw DomainError("m must lie in (0, 1)");
  if (!(lambda >= 1.0) || !std::isfinite(lambda)) throw DomainError("lambda must be >= 1");
  const double lm = std::pow(lambda, m);
  if (!(lm > 2.0)) throw DomainError("degenerate support: need lambda^m > 2");
  DatumParams p;
  p.amplitude = std::pow(lambda, m - 2.0);
  p.scale = std::pow(lambda, m - 2.0);
  p.shift = lm;
  p.m = m;
  return FourierDatum(p);
}

FourierDatum knapp_vertical_spatial(double lambda, double m) {
  if (!(lambda >= 1.0) || !std::isfinite(lambda)) throw DomainError("lambda must be >= 1");
  DatumParams p;
  p.scale = 1.0 / lambda;
  p.m = m;
  return FourierDatum(p);
}

FourierDatum knapp_curve(double lambda, double m, double kappa, double theta) {
  if (!(lambda >= 1.0) || !std::isfinite(lambda)) throw DomainError("lambda must be >= 1");
  if (!(kappa > 0.0)) throw DomainError("kappa must be positive");
  if (!(theta >= 0.0)) throw DomainError("theta must be >= 0");
  DatumParams p;
  p.amplitude = 1.0 / lambda;
  p.scale = 1.0 / lambda;
  p.linear_phase = std::pow(2.0, -kappa) * theta;
  p.fractional_phase = -0.5;
  p.m = m;
  return FourierDatum(p);
}

FourierDatum cantor_data(double lambda_k, double m) {
  if (!(lambda_k >= 1.0) || !std::isfinite(lambda_k)) throw DomainError("lambda_k must be >= 1");
  if (!(m > 0.0 && m < 1.0)) throw DomainError("m must lie in (0, 1)");
  DatumParams p;
  p.scale = std::pow(lambda_k, -1.0 / m);
  p.fractional_phase = -1.0;
  p.m = m;
  return FourierDatum(p);
}

TaylorCoefficients taylor_coeffs(double kappa, int n) {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) throw DomainError("kappa must be positive");
  if (n < 1) throw DomainError("N must be >= 1");
  TaylorCoefficients c;
  c.kappa = kappa;
  c.n = n;
  c.a.resize(n);
  c.a[0] = 1.0;
  for (int j = 1; j < n; ++j) c.a[j] = c.a[j - 1] * (kappa - j + 1.0) / j;
  return c;
}

int taylor_order(double m) {
  if (!(m > 0.0 && m < 1.0)) throw DomainError("m must lie in (0, 1)");
  return static_cast<int>(std::ceil(1.0 / m)) + 1;
}

double h_N_eval(double tau, const TaylorCoefficients& coeffs) {
  // Horner in u = 2 tau over j = N-1 .. 1.
  const double u = 2.0 * tau;
  double acc = 0.0;
  for (int j = coeffs.n - 1; j >= 1; --j) acc = acc * u + coeffs.a[j];
  return std::pow(2.0, -coeffs.kappa) * acc * u;
}

double h_N_invert(double x, const TaylorCoefficients& coeffs, double tau_max) {
  if (!(tau_max > 0.0) || !std::isfinite(tau_max)) throw DomainError("tau_max must be positive");
  constexpr int kScan = 1000;
  double prev = h_N_eval(0.0, coeffs);
  for (int i = 1; i <= kScan; ++i) {
    const double v = h_N_eval(tau_max * i / kScan, coeffs);
    if (!(v > prev)) throw Error("h_N is not monotone increasing on the inversion domain");
    prev = v;
  }
  const double top = prev;
  if (!(x >= 0.0 && x <= top)) throw OutOfRange("x outside the image of h_N");
  if (x == 0.0) return 0.0;
  if (coeffs.kappa == 1.0 || coeffs.n <= 2) {
    // h_N is linear: 2^{-kappa} a_1 2 tau.
    return x / (std::pow(2.0, -coeffs.kappa) * coeffs.a[1] * 2.0);
  }
  double lo = 0.0;
  double hi = tau_max;
  for (int iter = 0; iter < 200 && hi - lo > 1e-15 * hi; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (h_N_eval(mid, coeffs) < x) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double matched_window_curve(double lambda, double m, double kappa, double theta) {
  const TaylorCoefficients c = taylor_coeffs(kappa, taylor_order(m));
  return theta * h_N_eval(std::pow(lambda, -m) / 100.0, c);
}

MatchedPoint matched_point_curve(double x, double lambda, double m, double kappa, double theta) {
  if (!(lambda >= 1.0)) throw DomainError("lambda must be >= 1");
  if (!(theta > 0.0)) throw DomainError("theta must be positive for a matched point");
  const TaylorCoefficients c = taylor_coeffs(kappa, taylor_order(m));
  const double tau_max = std::pow(lambda, -m) / 100.0;
  MatchedPoint mp;
  mp.x = x;
  mp.lambda = lambda;
  mp.theta = theta;
  mp.tau = h_N_invert(x / theta, c, tau_max);
  mp.t = 0.5 + mp.tau;
  const double lm = std::pow(lambda, m);
  const double lin = x - theta * std::pow(mp.tau + 0.5, kappa) + theta * std::pow(2.0, -kappa);
  double residual = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double eta = 0.5 + 1.5 * i / 999.0;
    residual = std::max(residual, std::abs(lambda * lin * eta + lm * mp.tau * std::pow(eta, m)));
  }
  mp.residual = residual;
  if (residual > 0.6) throw PhaseMismatch("phase mismatch: residual exceeds 0.6");
  return mp;
}

MatchedPoint cantor_selectors(double x, const CantorSet& cantor) {
  if (!(x > 0.5 && x < 1.0)) throw DomainError("not in prefractal window: x must lie in (1/2, 1)");
  const auto idx = cantor.component_of(x);
  if (!idx) throw DomainError("not in prefractal window: x outside the prefractal");
  MatchedPoint mp;
  mp.x = x;
  mp.theta = cantor.intervals()[*idx].hi;
  mp.tau = (mp.theta - x) / mp.theta;
  mp.t = 1.0 - mp.tau;
  mp.lambda = std::pow(cantor.ratio(), -cantor.level());
  return mp;
}

}  // namespace cpl
