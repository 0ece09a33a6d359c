#include <cmath>

#include "cpl/errors.hpp"
#include "cpl/phase.hpp"
#include "doctest.h"

using namespace cpl;

namespace {

EnvelopeParams vertical(double lambda, double eps = 0.0) {
  return EnvelopeParams::make(EnvelopeVariant::Vertical, lambda, 0.5, 1.0, 2.0, eps);
}

EnvelopeParams curve(double lambda, double eps = 0.0) {
  return EnvelopeParams::make(EnvelopeVariant::Curve, lambda, 0.5, 1.0, 2.0, eps);
}

}  // namespace

TEST_CASE("envelope parameters derive s_*") {
  CHECK(vertical(1.0).s_star == doctest::Approx(0.375).epsilon(1e-15));
  CHECK(curve(1.0).s_star == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(vertical(256.0).indicator_edge() == doctest::Approx(std::exp2(-6.0)).epsilon(1e-15));
  CHECK_THROWS_AS(EnvelopeParams::make(EnvelopeVariant::Vertical, 0.5, 0.5, 1.0, 2.0), DomainError);
  CHECK_THROWS_AS(EnvelopeParams::make(EnvelopeVariant::Vertical, 4.0, 0.5, 1.0, 1.5), DomainError);
}

TEST_CASE("vertical split at t = 0 keeps the whole band in V2") {
  const VerticalSplit s = split_vertical(vertical(16.0), 0.3, 0.0);
  CHECK(s.v1.empty);
  CHECK_FALSE(s.v2.empty);
  CHECK(s.v2.lo == 0.5);
  CHECK(s.v2.hi == 2.0);
}

TEST_CASE("vertical split boundary by hand") {
  const VerticalSplit s = split_vertical(vertical(1.0), 1.0, 0.5);
  CHECK(s.boundary == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(s.v1.lo == 0.5);
  CHECK(s.v1.hi == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(s.v2.lo == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(s.v2.hi == 2.0);
  CHECK_THROWS_AS(split_vertical(vertical(1.0), 0.0, 0.5), DomainError);
}

TEST_CASE("vertical split agrees with a membership scan") {
  const EnvelopeParams p = vertical(256.0);
  const double x = 0.1;
  const double t = 0.5;
  const VerticalSplit s = split_vertical(p, x, t);
  const double rhs = std::pow(256.0, 4.0 * p.s_star) * std::pow(x, 2.0);
  int mismatches = 0;
  for (int i = 1; i < 10000; ++i) {
    const double xi = 0.5 + 1.5 * i / 10000.0;
    const bool in_v1 = 2.0 * std::sqrt(256.0) * t * std::pow(xi, -0.5) >= rhs;
    const bool tagged_v1 = !s.v1.empty && xi <= s.v1.hi;
    const bool tagged_v2 = !s.v2.empty && xi > s.v2.lo;
    if (in_v1 != tagged_v1 || in_v1 == tagged_v2) ++mismatches;
  }
  CHECK(mismatches == 0);
}

TEST_CASE("curve split tags") {
  CHECK(split_curve(1.0, 1.0, 0.0) == Region::V1);
  CHECK(split_curve(1.0, 0.0, 1.0) == Region::V2);
  CHECK(split_curve(2.0, 0.4, 0.1) == Region::V1);
  CHECK(split_curve(2.0, 0.39, 0.1) == Region::V2);
}

TEST_CASE("vertical envelope arithmetic") {
  CHECK(envelope_J_vertical(vertical(256.0), 1.0) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(envelope_J_vertical(vertical(256.0), std::exp2(-6.0)) >= 256.0);
  // Inside the indicator region the tail is frozen at the edge value.
  const double at_edge = 256.0 * (1.0 + std::exp2(-6.0) * std::exp2(6.0));
  CHECK(envelope_J_vertical(vertical(256.0), 0.0) == doctest::Approx(at_edge).epsilon(1e-14));
  CHECK(envelope_J_vertical(vertical(256.0), 1e-9) == doctest::Approx(at_edge).epsilon(1e-14));
}

TEST_CASE("curve envelope arithmetic") {
  CHECK(envelope_J_curve(curve(256.0), 1.0) == doctest::Approx(64.0).epsilon(1e-14));
  for (double lambda : {4.0, 100.0, 4096.0}) {
    CHECK(envelope_J_curve(curve(lambda), 1.0) ==
          doctest::Approx(std::pow(lambda, 0.75)).epsilon(1e-14));
  }
  // x = 1/4 at lambda = 2^6 lies inside the indicator region |x| <= 2^{-3/2},
  // so the indicator term is added and the tail is frozen at the edge.
  const double edge = std::exp2(-1.5);
  const double expected = 64.0 * (1.0 + std::pow(64.0, -0.25) * std::pow(edge, -0.25));
  CHECK(envelope_J_curve(curve(64.0), 0.25) == doctest::Approx(expected).epsilon(1e-14));
  CHECK(expected == doctest::Approx(93.344129).epsilon(1e-7));
  // Just outside the region the tail alone reproduces the power law.
  const double x = 0.5;
  CHECK(envelope_J_curve(curve(64.0), x) ==
        doctest::Approx(64.0 * std::pow(64.0, -0.25) * std::pow(x, -0.25)).epsilon(1e-14));
}

TEST_CASE("envelopes are non-increasing outside the indicator region") {
  for (double lambda : {16.0, 512.0}) {
    for (double eps : {0.0, 0.05}) {
      const EnvelopeParams pv = vertical(lambda, eps);
      const EnvelopeParams pc = curve(lambda, eps);
      double last_v = INFINITY;
      double last_c = INFINITY;
      for (int i = 0; i <= 200; ++i) {
        const double x = pv.indicator_edge() * 1.0001 + (1.0 - pv.indicator_edge()) * i / 200.0;
        const double v = envelope_J_vertical(pv, x);
        CHECK(v <= last_v);
        last_v = v;
        const double xc = pc.indicator_edge() * 1.0001 + (1.0 - pc.indicator_edge()) * i / 200.0;
        const double c = envelope_J_curve(pc, xc);
        CHECK(c <= last_c);
        last_c = c;
      }
    }
  }
}

TEST_CASE("phase derivative minima, vertical") {
  const EnvelopeParams p = vertical(256.0);
  const DerivativeMinima d0 = split_vertical(p, 0.1, 0.0).v1.empty
                                  ? phase_derivative_min_vertical(p, Region::V2, 0.1, 0.0)
                                  : DerivativeMinima{};
  CHECK(d0.min_first == doctest::Approx(25.6).epsilon(1e-14));
  CHECK_THROWS_AS(phase_derivative_min_vertical(p, Region::V1, 0.1, 0.0), EmptyRegion);
  const DerivativeMinima d = phase_derivative_min_vertical(p, Region::V2, 0.1, 0.5);
  CHECK(d.min_first >= 0.25 * 256.0 * 0.1);
  // Brute-force oracle over the same region.
  const VerticalSplit s = split_vertical(p, 0.1, 0.5);
  double brute = INFINITY;
  for (int i = 0; i < 100000; ++i) {
    const double xi = s.v2.lo + (s.v2.hi - s.v2.lo) * i / 99999.0;
    brute = std::min(brute, std::abs(25.6 + 16.0 * 0.5 * 0.5 / std::sqrt(xi)));
  }
  CHECK(d.min_first == doctest::Approx(brute).epsilon(1e-6));
}

TEST_CASE("phase derivative minima, curve") {
  const DerivativeMinima d =
      phase_derivative_min_curve(256.0, 0.5, 1.0, 1.0, 0.3, 0.0, 0.05, 0.0, Region::V1);
  CHECK(d.min_first >= 256.0 * (0.3 - 2.0 * 0.05));
  CHECK(d.min_second > 0.0);
  CHECK_THROWS_AS(
      phase_derivative_min_curve(256.0, 0.5, 1.0, 1.0, 0.3, 0.0, 0.05, 0.0, Region::V2), EmptyRegion);
  const DerivativeMinima d2 =
      phase_derivative_min_curve(256.0, 0.5, 1.0, 1.0, 0.1, 0.0, 0.4, 0.0, Region::V2);
  // |phi''| = lambda^m dt m (1 - m) xi^{m-2} is smallest at xi = 2.
  CHECK(d2.min_second == doctest::Approx(16.0 * 0.4 * 0.25 * std::pow(2.0, -1.5)).epsilon(1e-12));
}

TEST_CASE("mean value inequality") {
  std::vector<double> ts;
  for (int i = 0; i <= 50; ++i) ts.push_back(i / 50.0);
  for (double kappa : {1.0, 1.5, 2.0, 3.0, 7.0}) CHECK(mean_value_inequality_holds(kappa, ts));
  CHECK_THROWS_AS(mean_value_inequality_holds(0.5, ts), DomainError);
}

TEST_CASE("kernel envelope ratio at the origin cell") {
  const EnvelopeReport r =
      check_kernel_envelope(EnvelopeVariant::Vertical, 0.5, 1.0, 2.0, 0.05, {16.0, 32.0}, 8);
  REQUIRE(r.levels.size() == 2);
  CHECK(r.failures == 0);
  for (const auto& l : r.levels) {
    CHECK(l.sup_ratio > 0.0);
    CHECK(l.sup_ratio < 3.0);
  }
  CHECK_THROWS_AS(
      check_kernel_envelope(EnvelopeVariant::Vertical, 0.5, 1.0, 2.0, 0.05, {16.0}, 8), DomainError);
}
