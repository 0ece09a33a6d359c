#include "cpl/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cpl/errors.hpp"

namespace cpl {
namespace {

constexpr double kInvTwoPi = 0.5 / std::numbers::pi;
constexpr Interval kBand{0.5, 2.0};
// int |psi''| over the band (30-digit reference 11.57523779045513970), rounded up.
constexpr double kPsiSecondVariation = 11.5752377904552;

double abs_pow(double xi, double m) {
  return std::pow(std::abs(xi), m);
}

}  // namespace

double psi(double xi) {
  if (!(xi > 0.5 && xi < 2.0)) return 0.0;
  const double u = (xi - 1.25) / 0.75;
  const double d = 1.0 - u * u;
  if (d <= 0.0) return 0.0;
  return std::exp(1.0 - 1.0 / d);
}

SmoothFunction1D reference_bump() {
  return SmoothFunction1D([](double xi) { return Complex(psi(xi), 0.0); }, kBand);
}

FourierDatum::FourierDatum(const DatumParams& params) : p_(params) {
  if (!std::isfinite(p_.amplitude.real()) || !std::isfinite(p_.amplitude.imag()) ||
      !std::isfinite(p_.scale) || !std::isfinite(p_.shift) || !std::isfinite(p_.linear_phase) ||
      !std::isfinite(p_.fractional_phase)) {
    throw DomainError("datum parameters must be finite");
  }
  if (p_.scale == 0.0) throw DomainError("bump-argument scale must be nonzero");
  if (!(p_.m > 0.0 && p_.m < 1.0)) throw DomainError("fractional exponent m must lie in (0, 1)");
  const double e1 = (0.5 - p_.shift) / p_.scale;
  const double e2 = (2.0 - p_.shift) / p_.scale;
  support_ = {std::min(e1, e2), std::max(e1, e2)};
  if (support_.lo <= 0.0 && support_.hi >= 0.0) {
    throw DomainError("degenerate support: frequency support must avoid xi = 0");
  }
}

Complex FourierDatum::operator()(double xi) const {
  const double eta = p_.scale * xi + p_.shift;
  const double bump = psi(eta);
  if (bump == 0.0) return {0.0, 0.0};
  const double phase = p_.linear_phase * xi + p_.fractional_phase * abs_pow(xi, p_.m);
  return p_.amplitude * bump * Complex(std::cos(phase), std::sin(phase));
}

FourierDatum FourierDatum::with_amplitude(Complex amplitude) const {
  DatumParams p = p_;
  p.amplitude = amplitude;
  return FourierDatum(p);
}

namespace {

void check_m(const FourierDatum& datum, double m) {
  if (!(m > 0.0 && m < 1.0)) throw DomainError("m must lie in (0, 1)");
  const DatumParams& p = datum.params();
  if (p.fractional_phase != 0.0 && p.m != m) {
    throw DomainError("propagator exponent m does not match the datum's fractional exponent");
  }
}

}  // namespace

Complex propagate(const FourierDatum& datum, double m, double x, double t,
                  const QuadratureSpec& spec) {
  check_m(datum, m);
  const DatumParams& p = datum.params();
  const double lin = x + p.linear_phase;
  const double frac = t + p.fractional_phase;
  const double inv_a = 1.0 / p.scale;
  const double b = p.shift;
  const RealFn phase = [=](double eta) {
    const double xi = (eta - b) * inv_a;
    return lin * xi + frac * abs_pow(xi, m);
  };
  const Complex integral = integrate(reference_bump(), phase, kBand, spec);
  return p.amplitude * kInvTwoPi / std::abs(p.scale) * integral;
}

double propagate_modulus_bound(const FourierDatum& datum, double m, double x, double t) {
  check_m(datum, m);
  const DatumParams& p = datum.params();
  const double lin = x + p.linear_phase;
  const double frac = t + p.fractional_phase;
  const double inv_a = 1.0 / p.scale;
  // In the bump coordinate eta the phase is lin xi + frac |xi|^m with
  // xi = (eta - b)/a. Phi'' and Phi''' keep one sign on the band, so Phi' is
  // monotone and its smallest modulus sits at an endpoint.
  auto derivative = [&](double eta) {
    const double xi = (eta - p.shift) * inv_a;
    const double sgn = xi > 0.0 ? 1.0 : -1.0;
    return (lin + frac * m * sgn * std::pow(std::abs(xi), m - 1.0)) * inv_a;
  };
  const double d1 = derivative(kBand.lo);
  const double d2 = derivative(kBand.hi);
  double bound = kPsiMass;
  if ((d1 > 0.0 && d2 > 0.0) || (d1 < 0.0 && d2 < 0.0)) {
    const double d = std::min(std::abs(d1), std::abs(d2));
    // One integration by parts: TV(psi) = 2 plus 1 from the monotone 1/Phi'.
    bound = std::min(bound, 3.0 / d);
    // Two integrations by parts:
    //   |I| <= int|psi''| / d^2 + 3 sup|Phi''| int|psi'| / d^3
    //          + sup|Phi'''| M_psi / d^3 + 3 sup|Phi''|^2 M_psi / d^4.
    const double xi_min = std::min(std::abs((kBand.lo - p.shift) * inv_a),
                                   std::abs((kBand.hi - p.shift) * inv_a));
    const double ia = std::abs(inv_a);
    const double s2 = std::abs(frac * m * (m - 1.0)) * std::pow(xi_min, m - 2.0) * ia * ia;
    const double s3 =
        std::abs(frac * m * (m - 1.0) * (m - 2.0)) * std::pow(xi_min, m - 3.0) * ia * ia * ia;
    const double inv_d2 = 1.0 / (d * d);
    const double second = inv_d2 * (kPsiSecondVariation + (6.0 * s2 + kPsiMass * s3) / d +
                                     3.0 * kPsiMass * s2 * s2 * inv_d2);
    bound = std::min(bound, second);
  }
  return std::abs(p.amplitude) * kInvTwoPi / std::abs(p.scale) * bound;
}

Complex inverse_transform_direct(const FourierDatum& datum, double x, const QuadratureSpec& spec) {
  const SmoothFunction1D amplitude([&datum](double xi) { return datum(xi); }, datum.support());
  const RealFn phase = [x](double xi) { return x * xi; };
  return kInvTwoPi * integrate(amplitude, phase, datum.support(), spec);
}

double sobolev_norm(const FourierDatum& datum, double s, const QuadratureSpec& spec) {
  if (!std::isfinite(s)) throw DomainError("Sobolev index must be finite");
  const DatumParams& p = datum.params();
  const double inv_a = 1.0 / p.scale;
  const double b = p.shift;
  const SmoothFunction1D weight(
      [=](double eta) {
        const double xi = (eta - b) * inv_a;
        const double bump = psi(eta);
        return Complex(std::pow(1.0 + xi * xi, s) * bump * bump, 0.0);
      },
      kBand);
  const RealFn zero = [](double) { return 0.0; };
  const double integral = integrate(weight, zero, kBand, spec).real();
  const double a2 = std::norm(p.amplitude);
  return std::sqrt(a2 * kInvTwoPi / std::abs(p.scale) * integral);
}

double fourier_l1_scale(const FourierDatum& datum) {
  const DatumParams& p = datum.params();
  return std::abs(p.amplitude) * kInvTwoPi / std::abs(p.scale) * kPsiMass;
}

Complex kernel_K(double lambda, double m, double x, double t, const QuadratureSpec& spec) {
  if (!(lambda >= 1.0) || !std::isfinite(lambda)) throw DomainError("lambda must be >= 1");
  if (!(m > 0.0 && m < 1.0)) throw DomainError("m must lie in (0, 1)");
  const double cx = lambda * x;
  const double ct = std::pow(lambda, m) * t;
  const SmoothFunction1D amplitude(
      [](double xi) {
        const double v = psi(xi);
        return Complex(v * v, 0.0);
      },
      kBand);
  const RealFn phase = [=](double xi) { return cx * xi + ct * std::pow(xi, m); };
  return lambda * integrate(amplitude, phase, kBand, spec);
}

}  // namespace cpl
