#include <cmath>

#include "cpl/counterexamples.hpp"
#include "cpl/errors.hpp"
#include "cpl/experiment.hpp"
#include "cpl/geometry.hpp"
#include "cpl/spectral.hpp"
#include "doctest.h"

using namespace cpl;

TEST_CASE("temporal Knapp datum") {
  // lambda = 16, m = 1/2: 1/2 <= 16^{-3/2} xi + 4 <= 2 gives xi in [-224, -128].
  const FourierDatum d = knapp_vertical_temporal(16.0, 0.5);
  CHECK(d.support().lo == doctest::Approx(-224.0).epsilon(1e-14));
  CHECK(d.support().hi == doctest::Approx(-128.0).epsilon(1e-14));
  // lambda^m = 2 puts the upper support edge at xi = 0.
  CHECK_THROWS_AS(knapp_vertical_temporal(4.0, 0.5), DomainError);
  CHECK_THROWS_AS(knapp_vertical_temporal(1.0, 0.5), DomainError);
}

TEST_CASE("spatial Knapp datum") {
  const FourierDatum d = knapp_vertical_spatial(2.0);
  CHECK(d.support().lo == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(d.support().hi == doctest::Approx(4.0).epsilon(1e-15));
  const double lambda = 64.0;
  const Complex u = propagate(knapp_vertical_spatial(lambda), 0.5, 0.0, 0.0);
  CHECK(u.real() == doctest::Approx(lambda * kPsiMass / (2.0 * M_PI)).epsilon(1e-10));
  std::vector<std::pair<double, double>> pts;
  for (int j = 4; j <= 10; ++j) {
    const double l = std::exp2(j);
    pts.emplace_back(l, sobolev_norm(knapp_vertical_spatial(l), 0.3));
  }
  CHECK(std::abs(fit_loglog(pts).slope - 0.8) <= 0.02);
}

TEST_CASE("curve Knapp datum") {
  const FourierDatum d = knapp_curve(32.0, 0.5, 2.0, 1.0);
  for (double xi : {20.0, 40.0, 63.0}) {
    CHECK(std::abs(d(xi)) == doctest::Approx(psi(xi / 32.0) / 32.0).epsilon(1e-14));
  }
  const FourierDatum flat = knapp_curve(32.0, 0.5, 3.0, 0.0);
  CHECK(flat.params().linear_phase == 0.0);
  CHECK(flat.params().fractional_phase == -0.5);
  std::vector<std::pair<double, double>> pts;
  for (int j = 4; j <= 10; ++j) {
    const double l = std::exp2(j);
    pts.emplace_back(l, sobolev_norm(knapp_curve(l, 0.5, 2.0, 1.0), 0.3));
  }
  CHECK(std::abs(fit_loglog(pts).slope - (0.3 - 0.5)) <= 0.02);
}

TEST_CASE("Taylor coefficients") {
  const auto c2 = taylor_coeffs(2.0, 4);
  CHECK(c2.a == std::vector<double>{1.0, 2.0, 1.0, 0.0});
  const auto c1 = taylor_coeffs(1.0, 3);
  CHECK(c1.a == std::vector<double>{1.0, 1.0, 0.0});
  const auto c32 = taylor_coeffs(1.5, 3);
  CHECK(c32.a[0] == 1.0);
  CHECK(c32.a[1] == 1.5);
  CHECK(c32.a[2] == doctest::Approx(0.375).epsilon(1e-15));
  CHECK(taylor_order(0.5) == 3);
  CHECK(taylor_order(0.3) == 5);
  CHECK(0.3 * taylor_order(0.3) > 1.0);
  CHECK_THROWS_AS(taylor_coeffs(0.0, 3), DomainError);
}

TEST_CASE("h_N evaluation and inversion") {
  const auto c1 = taylor_coeffs(1.0, taylor_order(0.5));
  for (double x : {0.0, 1e-5, 3e-4}) CHECK(h_N_invert(x, c1, 1e-3) == x);
  const auto c2 = taylor_coeffs(2.0, taylor_order(0.5));
  for (double tau : {0.0, 1e-4, 5e-4}) {
    CHECK(h_N_eval(tau, c2) == doctest::Approx(tau + tau * tau).epsilon(1e-14));
  }
  // Closed-form root of tau^2 + tau = x.
  for (double x : {1e-6, 2e-4, 9e-4}) {
    const double root = 0.5 * (-1.0 + std::sqrt(1.0 + 4.0 * x));
    CHECK(h_N_invert(x, c2, 1e-3) == doctest::Approx(root).epsilon(1e-12));
  }
  const auto c = taylor_coeffs(1.7, taylor_order(0.3));
  const double tau_max = std::pow(512.0, -0.3) / 100.0;
  for (int i = 0; i <= 200; ++i) {
    const double x = h_N_eval(tau_max * i / 200.0, c);
    CHECK(std::abs(h_N_eval(h_N_invert(x, c, tau_max), c) - x) <= 1e-10);
  }
  CHECK_THROWS_AS(h_N_invert(1.0, c2, 1e-3), OutOfRange);
  CHECK_THROWS_AS(h_N_invert(-1e-6, c2, 1e-3), OutOfRange);
}

TEST_CASE("matched points along the curve") {
  const MatchedPoint origin = matched_point_curve(0.0, 256.0, 0.5, 2.0, 1.0);
  CHECK(origin.tau == 0.0);
  CHECK(origin.t == 0.5);
  CHECK(origin.residual <= 1e-9);
  const double lambda = 256.0;
  const MatchedPoint mp = matched_point_curve(std::pow(lambda, -0.5) / 200.0, lambda, 0.5, 2.0, 1.0);
  CHECK(mp.residual <= 0.5);
  CHECK(mp.tau >= 0.0);
  // The residual shrinks to zero as x -> 0.
  const double window = matched_window_curve(lambda, 0.5, 2.0, 1.0);
  for (int i = 1; i <= 20; ++i) {
    const MatchedPoint p = matched_point_curve(window * i / 20.0, lambda, 0.5, 2.0, 1.0);
    CHECK(p.residual <= 0.5);
    CHECK(p.t == doctest::Approx(0.5 + p.tau).epsilon(1e-15));
  }
  CHECK_THROWS_AS(matched_point_curve(2.0 * window, lambda, 0.5, 2.0, 1.0), OutOfRange);
}

TEST_CASE("Cantor data") {
  const double lambda_k = std::pow(0.25, -3);
  CHECK(lambda_k == 64.0);
  const FourierDatum d = cantor_data(lambda_k, 0.5);
  CHECK(d.support().lo == doctest::Approx(4096.0 / 2.0).epsilon(1e-14));
  CHECK(d.support().hi == doctest::Approx(2.0 * 4096.0).epsilon(1e-14));
  CHECK(std::abs(d(3000.0)) == doctest::Approx(psi(3000.0 / 4096.0)).epsilon(1e-14));
  std::vector<std::pair<double, double>> pts;
  for (int k = 1; k <= 6; ++k) {
    const double l = std::pow(4.0, k);
    pts.emplace_back(l, sobolev_norm(cantor_data(l, 0.5), 0.3));
  }
  CHECK(std::abs(fit_loglog(pts).slope - (0.3 / 0.5 + 1.0)) <= 0.02);
}

TEST_CASE("Cantor selectors") {
  const CantorSet c(1.0 / 3.0, 2);
  const MatchedPoint p = cantor_selectors(0.9, c);
  CHECK(p.theta == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(p.tau == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(p.t == doctest::Approx(0.9).epsilon(1e-12));
  const MatchedPoint end = cantor_selectors(c.intervals()[2].hi, c);
  CHECK(end.tau == 0.0);
  CHECK(end.t == 1.0);
  CHECK(end.theta == c.intervals()[2].hi);
  const CantorSet c4(0.25, 4);
  for (const Interval& iv : c4.intervals()) {
    if (!(iv.lo > 0.5)) continue;
    for (int i = 0; i <= 10; ++i) {
      const double x = iv.lo + iv.length() * i / 10.0;
      if (!(x < 1.0)) continue;
      const MatchedPoint q = cantor_selectors(x, c4);
      CHECK(std::abs(x - q.theta) <= c4.component_length() * (1.0 + 1e-12));
      CHECK(q.tau >= 0.0);
      CHECK(q.tau <= 2.0 * c4.component_length());
      CHECK(q.theta == iv.hi);
      CHECK(q.lambda == doctest::Approx(256.0).epsilon(1e-14));
    }
  }
  CHECK_THROWS_AS(cantor_selectors(0.5, c), DomainError);
  CHECK_THROWS_AS(cantor_selectors(0.8, c), DomainError);
}
