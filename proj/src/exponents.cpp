#include "cpl/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "cpl/errors.hpp"

namespace cpl::exponents {
namespace {

void require_fractional_m(double m) {
  if (!(m > 0.0 && m < 1.0)) throw DomainError("m must lie in (0, 1)");
}

void require_alpha_q(double alpha, double q) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("alpha must lie in (0, 1]");
  if (!(q >= 2.0) || !std::isfinite(q)) throw DomainError("q must be a finite real >= 2");
}

void require_beta(double beta) {
  if (!(beta >= 0.0 && beta <= 1.0)) throw DomainError("beta must lie in [0, 1]");
}

[[noreturn]] void out_of_range(double s, double lo, double hi) {
  std::ostringstream os;
  os << "out of theorem range: s = " << s << " not in (" << lo << ", " << hi << ")";
  throw DomainError(os.str());
}

}  // namespace

Kappa Kappa::finite(double value) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw DomainError("finite kappa must be a positive real");
  }
  return Kappa(value, false);
}

double Kappa::value() const {
  if (infinite_) throw DomainError("kappa is infinite");
  return value_;
}

double threshold_vertical(double m, double alpha, double q) {
  require_fractional_m(m);
  require_alpha_q(alpha, q);
  return std::max(0.5 - m / 4.0 - (1.0 - m) * alpha / q, 0.5 - alpha / q);
}

double s_star_vertical(double m, double alpha, double q) {
  require_fractional_m(m);
  require_alpha_q(alpha, q);
  return std::min(m / 4.0 + (1.0 - m) * alpha / q, alpha / q);
}

double s_star_curve(double m, double alpha, double q) {
  require_fractional_m(m);
  require_alpha_q(alpha, q);
  return std::min(m / 4.0, m * alpha / q);
}

double s_star_lines(double m, double alpha, double q) {
  require_fractional_m(m);
  require_alpha_q(alpha, q);
  return std::min(m / 4.0, alpha / q);
}

double dim_bound_vertical(double s, double m, bool extended) {
  require_fractional_m(m);
  if (extended && s <= m / 4.0) return 1.0;
  if (!(s > m / 4.0 && s < 0.5)) out_of_range(s, m / 4.0, 0.5);
  return std::max(1.0 - 2.0 * s, 0.5 + (1.0 - 4.0 * s) / (2.0 * (1.0 - m)));
}

double dim_bound_curve(double s, double m) {
  require_fractional_m(m);
  const double lo = 0.5 - m / 4.0;
  if (!(s > lo && s < 0.5)) out_of_range(s, lo, 0.5);
  return (1.0 - 2.0 * s) / m;
}

double threshold_lines(double m, double beta) {
  require_fractional_m(m);
  require_beta(beta);
  return 0.5 - m / 4.0 + m * beta / 4.0;
}

double dim_bound_lines(double s, double m, double beta) {
  require_fractional_m(m);
  require_beta(beta);
  const double lo = (2.0 - m + m * beta) / 4.0;
  if (!(s > lo && s < 0.5)) out_of_range(s, lo, 0.5);
  return std::max((1.0 - 2.0 * s + m * beta) / m, m * beta / (4.0 * s - 2.0 + m));
}

double summary_threshold(double m, Kappa kappa) {
  if (!(m > 0.0) || !std::isfinite(m) || m == 1.0) {
    throw DomainError("m must be positive, finite and different from 1");
  }
  if (m > 1.0) {
    if (kappa.is_infinite()) return 0.25;
    return std::max(0.25, (1.0 - m * kappa.value()) / 2.0);
  }
  if (kappa.is_infinite()) return m / 4.0;
  return std::max(0.5 - m / 4.0, (1.0 - m * kappa.value()) / 2.0);
}

double summary_dim_bound(double s, double m, Kappa kappa) {
  const double threshold = summary_threshold(m, kappa);
  if (!(s > threshold) || !std::isfinite(s)) {
    std::ostringstream os;
    os << "out of theorem range: s = " << s << " must exceed " << threshold;
    throw DomainError(os.str());
  }
  if (!kappa.is_infinite()) {
    return std::max({0.0, 1.0 - 2.0 * s, (1.0 - 2.0 * s) / (m * kappa.value())});
  }
  if (m > 1.0) return std::max(0.0, 1.0 - 2.0 * s);
  return std::max({0.0, 1.0 - 2.0 * s, 0.5 + (1.0 - 4.0 * s) / (2.0 * (1.0 - m))});
}

}  // namespace cpl::exponents
