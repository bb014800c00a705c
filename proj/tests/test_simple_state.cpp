#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mup/simple_state.hpp"
#include "mup/spectral.hpp"
#include "mup/specfun.hpp"

using namespace mup::simple_state;

TEST_CASE("C1, C2 limits and series") {
  CHECK(std::abs(c1_c2(1e-6).first - 0.5) < 1e-9);
  const double xi = 0.5;
  double s = 0.0;
  for (int n = 1; n < 200; ++n) s += (2.0 + 1.0 / n) * std::pow(xi, 2.0 * n - 2);
  const double li = mup::specfun::dilog(xi * xi);
  auto [c1, c2] = c1_c2(xi);
  CHECK(std::abs(c2 - 0.5 * (2 - xi) * s * xi * xi / li) < 1e-13);
  CHECK(std::abs(c1 - 0.5 * xi / std::sqrt(li)) < 1e-15);
  CHECK_THROWS_AS(c1_c2(0.0), std::domain_error);
}

TEST_CASE("q0 equals the minimum over a fine angle grid") {
  const double xi = 0.5, pi = std::numbers::pi;
  double best = 1e300;
  for (int i = 0; i <= 100000; ++i) best = std::min(best, q_of(xi, pi * i / 100000.0));
  CHECK(std::abs(q0(xi) - best) < 1e-8);
  CHECK(q0(xi) <= best);
}

TEST_CASE("optimal angle satisfies tan 2phi = C1/C2 and minimizes Q") {
  for (double xi : {0.1, 0.318674, 0.6, 0.85}) {
    const double phi = optimal_phi(xi);
    auto [c1, c2] = c1_c2(xi);
    CHECK(std::abs(std::tan(2 * phi) - c1 / c2) < 1e-12 * std::abs(c1 / c2));
    const double qv = q_of(xi, phi);
    CHECK(std::abs(qv - q0(xi)) < 1e-15);
    for (int k = 0; k < 1000; ++k) CHECK(qv <= q_of(xi, std::numbers::pi * k / 1000.0) + 1e-15);
  }
}

TEST_CASE("minimize_q0") {
  auto s = minimize_q0();
  CHECK(std::abs(s.xi - 0.318674) < 1e-3);
  CHECK(std::abs(s.q_value + 0.04495) < 1e-5);
  CHECK(std::abs(q0(0.318674) + 0.04495) < 1e-5);
  const double lam = mup::spectral::min_eigenpair(mup::spectral::build_q_form(200)).eigenvalue;
  CHECK(std::abs(s.q_value - lam) < 1e-4);
}

TEST_CASE("reconstructed coefficients lie on the normalization ellipse") {
  auto s = minimize_q0();
  const auto& c = s.coefficients;
  const double li = mup::specfun::dilog(s.xi * s.xi);
  const double c1 = c.values[1];
  CHECK(std::abs(c.values[0] * c.values[0] + li / (s.xi * s.xi) * c1 * c1 - 1) < 1e-12);
  CHECK(std::abs(c.norm_sq + c.tail_bound - 1) < 1e-12);
  CHECK(c.truncation_order == static_cast<int>(c.values.size()));
  // the truncated quadratic form evaluated on the trial state reproduces Q
  auto q = mup::spectral::build_q_form(static_cast<int>(c.values.size()));
  CHECK(std::abs(q.quadratic_value(c.values) - s.q_value) < 1e-10);
}
