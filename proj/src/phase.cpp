#include "cpl/phase.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cpl/errors.hpp"
#include "cpl/exponents.hpp"
#include "cpl/parallel.hpp"
#include "cpl/spectral.hpp"

namespace cpl {

EnvelopeParams EnvelopeParams::make(EnvelopeVariant variant, double lambda, double m, double alpha,
                                    double q, double eps) {
  EnvelopeParams p;
  p.lambda = lambda;
  p.m = m;
  p.alpha = alpha;
  p.q = q;
  p.eps = eps;
  p.s_star = variant == EnvelopeVariant::Vertical ? exponents::s_star_vertical(m, alpha, q)
                                                  : exponents::s_star_curve(m, alpha, q);
  p.validate();
  return p;
}

void EnvelopeParams::validate() const {
  if (!(lambda >= 1.0) || !std::isfinite(lambda)) throw DomainError("lambda must be >= 1");
  if (!(m > 0.0 && m < 1.0)) throw DomainError("m must lie in (0, 1)");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("alpha must lie in (0, 1]");
  if (!(q >= 2.0) || !std::isfinite(q)) throw DomainError("q must be a finite real >= 2");
  if (!(eps >= 0.0 && eps < 1.0)) throw DomainError("eps must lie in [0, 1)");
  if (!(s_star > 0.0) || !std::isfinite(s_star)) throw DomainError("s_star must be positive");
}

double EnvelopeParams::indicator_edge() const { return std::pow(lambda, -q * s_star / alpha); }

VerticalSplit split_vertical(const EnvelopeParams& params, double x, double t) {
  params.validate();
  if (x == 0.0) throw DomainError("degenerate point: x = 0");
  const double rhs = std::pow(params.lambda, 4.0 * params.s_star) *
                     std::pow(std::abs(x), 4.0 * params.alpha / params.q);
  VerticalSplit split;
  const double lhs_scale = 2.0 * std::pow(params.lambda, params.m) * std::abs(t);
  if (lhs_scale == 0.0) {
    split.boundary = 0.0;  // the V1 inequality fails for every xi
  } else {
    // 2 lambda^m |t| xi^{m-1} = rhs, decreasing in xi.
    split.boundary = std::pow(rhs / lhs_scale, 1.0 / (params.m - 1.0));
  }
  const double xb = split.boundary;
  if (lhs_scale != 0.0 && xb > 0.5) split.v1 = {0.5, std::min(xb, 2.0), false};
  if (!(xb >= 2.0)) split.v2 = {std::max(xb, 0.5), 2.0, false};
  return split;
}

Region split_curve(double kappa, double dx, double dt) {
  return (kappa + 2.0) * std::abs(dt) <= std::abs(dx) ? Region::V1 : Region::V2;
}

namespace {

double envelope(const EnvelopeParams& params, double x, double exponent) {
  params.validate();
  const double edge = params.indicator_edge();
  const double ax = std::abs(x);
  const double chi = ax <= edge ? 1.0 : 0.0;
  const double tail = std::pow(params.lambda, -2.0 * params.s_star + params.eps) *
                      std::pow(std::max(ax, edge), exponent);
  return params.lambda * (chi + tail);
}

template <typename First, typename Second>
DerivativeMinima scan(double lo, double hi, int samples, First first, Second second) {
  if (samples < 2) throw DomainError("derivative scan needs at least two samples");
  DerivativeMinima out{std::numeric_limits<double>::infinity(),
                       std::numeric_limits<double>::infinity()};
  for (int i = 0; i < samples; ++i) {
    const double xi = lo + (hi - lo) * i / (samples - 1);
    out.min_first = std::min(out.min_first, std::abs(first(xi)));
    out.min_second = std::min(out.min_second, std::abs(second(xi)));
  }
  return out;
}

}  // namespace

double envelope_J_vertical(const EnvelopeParams& params, double x) {
  return envelope(params, x, -2.0 * params.alpha / params.q + params.eps);
}

double envelope_J_curve(const EnvelopeParams& params, double x) {
  return envelope(params, x, -2.0 * params.s_star + params.eps);
}

DerivativeMinima phase_derivative_min_vertical(const EnvelopeParams& params, Region region,
                                               double x, double t, int samples) {
  const VerticalSplit split = split_vertical(params, x, t);
  const BandPiece& piece = region == Region::V1 ? split.v1 : split.v2;
  if (piece.empty || !(piece.hi > piece.lo)) throw EmptyRegion("empty region");
  const double lx = params.lambda * x;
  const double lt = std::pow(params.lambda, params.m) * t;
  const double m = params.m;
  return scan(
      piece.lo, piece.hi, samples,
      [&](double xi) { return lx + lt * m * std::pow(xi, m - 1.0); },
      [&](double xi) { return lt * m * (m - 1.0) * std::pow(xi, m - 2.0); });
}

DerivativeMinima phase_derivative_min_curve(double lambda, double m, double kappa, double theta,
                                            double x, double xp, double t, double tp,
                                            Region region, int samples) {
  if (!(lambda >= 1.0)) throw DomainError("lambda must be >= 1");
  if (!(m > 0.0 && m < 1.0)) throw DomainError("m must lie in (0, 1)");
  if (!(kappa > 0.0)) throw DomainError("kappa must be positive");
  if (t < 0.0 || tp < 0.0) throw DomainError("times must be nonnegative");
  const double dx = x - xp;
  const double dt = t - tp;
  if (split_curve(kappa, dx, dt) != region) throw EmptyRegion("empty region");
  const double dgamma = dx - theta * (std::pow(t, kappa) - std::pow(tp, kappa));
  const double lg = lambda * dgamma;
  const double lt = std::pow(lambda, m) * dt;
  return scan(
      0.5, 2.0, samples, [&](double xi) { return lg + lt * m * std::pow(xi, m - 1.0); },
      [&](double xi) { return lt * m * (m - 1.0) * std::pow(xi, m - 2.0); });
}

bool mean_value_inequality_holds(double kappa, const std::vector<double>& ts) {
  if (!(kappa >= 1.0)) throw DomainError("mean-value inequality is stated for kappa >= 1");
  for (double a : ts) {
    for (double b : ts) {
      if (a < 0.0 || a > 1.0 || b < 0.0 || b > 1.0) throw DomainError("times must lie in [0, 1]");
      const double lhs = std::abs(std::pow(a, kappa) - std::pow(b, kappa));
      if (lhs > kappa * std::abs(a - b) * (1.0 + 1e-12) + 1e-15) return false;
    }
  }
  return true;
}

EnvelopeReport check_kernel_envelope(EnvelopeVariant variant, double m, double alpha, double q,
                                     double eps, const std::vector<double>& lambdas, int grid,
                                     double kappa, double theta, const QuadratureSpec& spec) {
  if (grid < 2) throw DomainError("envelope grid needs at least 2 points per axis");
  if (lambdas.size() < 2) throw DomainError("envelope check needs at least two lambdas");
  EnvelopeReport report;
  const std::size_t n = static_cast<std::size_t>(grid) * static_cast<std::size_t>(grid);
  for (double lambda : lambdas) {
    const EnvelopeParams params = EnvelopeParams::make(variant, lambda, m, alpha, q, eps);
    std::vector<double> ratio(n, -1.0);
    parallel_for(n, [&](std::size_t idx) {
      const std::size_t i = idx / static_cast<std::size_t>(grid);
      const std::size_t j = idx % static_cast<std::size_t>(grid);
      const double u = (static_cast<double>(i) + 0.5) / grid;
      const double v = (static_cast<double>(j) + 0.5) / grid;
      try {
        if (variant == EnvelopeVariant::Vertical) {
          const double t = 2.0 * v - 1.0;
          ratio[idx] = std::abs(kernel_K(lambda, m, u, t, spec)) / envelope_J_vertical(params, u);
        } else {
          const double arg = u - theta * std::pow(v, kappa);
          ratio[idx] = std::abs(kernel_K(lambda, m, arg, v, spec)) / envelope_J_curve(params, u);
        }
      } catch (const ToleranceNotMet&) {
        ratio[idx] = -1.0;
      }
    });
    EnvelopeLevel level;
    level.lambda = lambda;
    for (std::size_t idx = 0; idx < n; ++idx) {
      if (ratio[idx] < 0.0) {
        ++level.failures;
        continue;
      }
      if (ratio[idx] > level.sup_ratio) {
        level.sup_ratio = ratio[idx];
        const std::size_t i = idx / static_cast<std::size_t>(grid);
        const std::size_t j = idx % static_cast<std::size_t>(grid);
        level.arg_x = (static_cast<double>(i) + 0.5) / grid;
        const double v = (static_cast<double>(j) + 0.5) / grid;
        level.arg_t = variant == EnvelopeVariant::Vertical ? 2.0 * v - 1.0 : v;
      }
    }
    report.failures += level.failures;
    report.levels.push_back(level);
  }
  std::vector<std::pair<double, double>> pts;
  for (const auto& l : report.levels) pts.emplace_back(l.lambda, l.sup_ratio);
  report.fit = fit_loglog(pts);
  return report;
}

}  // namespace cpl
