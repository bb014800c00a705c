#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mup/bipartite.hpp"
#include "mup/quadrature.hpp"
#include "mup/specfun.hpp"
#include "oracles.hpp"

using namespace mup;
using namespace mup::bipartite;
constexpr double kPi = std::numbers::pi;

namespace {

double integrate_profile(const RadialProfile& f, int order, double l1, const std::function<double(const DerivativeStack&)>& g) {
  quad::QuadratureOptions o;
  o.feature_scale = f.feature_scale();
  return quad::integrate_semi_infinite([&](double r) { return g(f.weighted_derivatives(r)); }, square_envelope(f, order, l1),
                                       Tolerance::absolute(1e-12), o)
      .value;
}

}  // namespace

TEST_CASE("coefficients are normalized") {
  CHECK(std::abs(coeff(0, 1e-9) - 1) < 1e-12);
  double s = 0.0;
  for (int n = 0; n < 400; ++n) s += coeff(n, 0.5) * coeff(n, 0.5);
  CHECK(std::abs(s - 1) < 1e-10);
}

TEST_CASE("R closed form") {
  CHECK(std::abs(r_closed(1e-9)) < 1e-8);
  CHECK(std::abs(r_closed(0.5) + 0.27977342087192731) < 1e-13);
  CHECK(std::abs(r_closed(1 - 1e-8) + 0.47560990158227580) < 1e-10);
  CHECK(std::abs(r_closed(1 - 1e-6) + 0.46854347137413543) < 1e-10);
  const double a = r_closed(1 - 1e-4), b = r_closed(1 - 1e-6), c = r_closed(1 - 1e-8);
  CHECK(a > b);
  CHECK(b > c);
  CHECK(c > -0.5);
  for (int k = 1; k < 100; ++k) CHECK(r_closed(0.01 * k) < 0);
}

TEST_CASE("R series oracle") {
  for (double xi : {0.1, 0.5, 0.9, 0.99}) {
    auto s = r_series(xi, Execution::serial);
    CHECK(std::abs(s.value - r_closed(xi)) < 1e-12);
    // sum u_n^2 = c_0^{-2} = 2K / pi
    CHECK(std::abs(s.norm_sum * kPi / (2 * specfun::ellip_k(xi)) - 1) < 1e-12);
  }
  auto s = r_series(1 - 1e-4, Execution::parallel);
  CHECK(std::abs(s.value - r_closed(1 - 1e-4)) < 1e-10);
  auto a = r_series(1 - 1e-6, Execution::serial), b = r_series(1 - 1e-6, Execution::parallel);
  CHECK(std::abs(a.value - b.value) < 1e-12);
  CHECK(std::abs(b.value - r_closed(1 - 1e-6)) < 1e-12);
  CHECK(std::abs(a.value - r_closed(1 - 1e-6)) < 1e-12);
}

TEST_CASE("uncertainty product") {
  CHECK(std::abs(uncertainty_product(1e-9).product - 0.25) < 1e-9);
  auto r = uncertainty_product(0.5);
  CHECK(std::abs(r.product - 0.18005664478201817) < 1e-13);
  CHECK(std::abs(r.violation_ratio - 1.388) < 1e-3);
  CHECK(r.separable_bound == 0.25);
  CHECK(r.infimum == 0.125);
  const double refs[] = {0.22830448730337871, 0.19888603015611457, 0.16647918690661545, 0.15400127925844319};
  const double xs[] = {0.1, 0.3, 0.7, 0.9};
  for (int i = 0; i < 4; ++i) {
    CHECK(std::abs(uncertainty_product(xs[i]).product - refs[i]) < 1e-13);
    auto q = uncertainty_product(xs[i], ProductRoute::quadrature);
    CHECK(q.route == ProductRoute::quadrature);
    CHECK(std::abs(q.product - refs[i]) < 1e-6);
  }
  // near 1 the violation ratio approaches 2
  auto near = uncertainty_product(1 - 1e-8);
  CHECK(near.product > 0.125);
  CHECK(near.violation_ratio > 1.9);
}

TEST_CASE("quadrature route is bit-identical across execution modes") {
  auto a = uncertainty_product(0.7, ProductRoute::quadrature, Execution::serial);
  auto b = uncertainty_product(0.7, ProductRoute::quadrature, Execution::parallel);
  CHECK(a.product == b.product);
}

TEST_CASE("residual norm") {
  CHECK(std::abs(residual_norm_sq(1e-8) - 0.25) < 1e-8);
  CHECK(residual_norm_sq(0.9) < residual_norm_sq(0.5));
  CHECK(residual_norm_sq(0.5) < residual_norm_sq(0.1));
  auto f = f_profile(0.7);
  const double q = integrate_profile(*f, 1, 1.5, [](const DerivativeStack& d) { return std::pow(d[1] + 0.5 * d[0], 2); });
  CHECK(std::abs(residual_norm_sq(0.7) - q) < 1e-7);
  // equals 2 * product - 1/4 because int r f f' = -1/2
  for (double xi : {0.2, 0.7, 0.95}) CHECK(std::abs(residual_norm_sq(xi) - (2 * uncertainty_product(xi).product - 0.25)) < 1e-13);
}

TEST_CASE("radial profile: routes, normalization and limits") {
  auto f0 = f_profile(1e-9);
  for (double r : {0.0, 0.5, 3.0, 10.0}) CHECK(std::abs((*f0)(r) - std::exp(-r / 2)) < 1e-8);
  CHECK(std::abs(f_prime_at_origin(1e-9) + 0.5) < 1e-8);
  CHECK(std::abs(f_prime_at_origin(0.5) + 2.0477152542043089) < 1e-12);
  for (double xi : {0.3, 0.5, 0.9, 0.999}) {
    auto a = f_profile(xi), b = f_profile(xi, ProfileRoute::angular_integral);
    CHECK(a->info().route == ProfileRoute::closed_form);
    CHECK(b->info().max_derivative_order == 3);
    for (double r : {0.0, 0.1, 1.0, 5.0, 40.0}) {
      auto da = a->weighted_derivatives(r), db = b->weighted_derivatives(r);
      CHECK(std::abs(da[0] - db[0]) < 1e-12 * a->peak());
      CHECK(std::abs(da[1] - db[1]) < 1e-11 * a->peak());
      CHECK(da[0] > 0);
    }
    const double norm = integrate_profile(*a, 0, 1.0, [](const DerivativeStack& d) { return d[0] * d[0]; });
    CHECK(std::abs(norm - 1) < 1e-10);
  }
}

TEST_CASE("f'(0) against Richardson-extrapolated one-sided differences") {
  for (double xi : {0.2, 0.5, 0.8}) {
    auto f = f_profile(xi);
    auto d = [&](double h) { return ((*f)(h) - (*f)(0.0)) / h; };
    const double h = 1e-3;
    const double rich = (8 * d(h / 4) - 6 * d(h / 2) + d(h)) / 3;
    CHECK(std::abs(rich - f_prime_at_origin(xi)) < 1e-6);
    CHECK(std::isfinite(f_prime_at_origin(xi)));
  }
}

TEST_CASE("moments and the lower-bound inequality") {
  auto f = f_profile(0.5);
  const double m = integrate_profile(*f, 1, 1.0, [](const DerivativeStack& d) { return d[1] * d[1]; });
  CHECK(std::abs(m - (1 + r_closed(0.5)) / 2) < 1e-6);
  for (double xi : {0.1, 0.5, 0.9, 0.99}) {
    auto g = f_profile(xi);
    const double rf = integrate_profile(*g, 1, 1.0, [](const DerivativeStack& d) { return d[1] * d[1]; });
    CHECK(rf >= 0.25 - 1e-8);
  }
}

TEST_CASE("wave function") {
  CHECK(std::abs(wavefunction(0.3, -0.4, 1e-9) - std::exp(-0.125) / std::sqrt(kPi)) < 1e-9);
  auto a = f_profile(0.5), b = f_profile(0.5, ProfileRoute::angular_integral);
  CHECK(std::abs(wavefunction(1, 1, 0.5) - (*a)(2.0) / std::sqrt(kPi)) < 1e-15);
  CHECK(std::abs(wavefunction(1, 1, 0.5) - (*b)(2.0) / std::sqrt(kPi)) < 1e-12);
}

TEST_CASE("overlap") {
  CHECK(std::abs(overlap(0.3, 0.7) - 0.96628835707174169) < 1e-12);
  for (double xi : {0.1, 0.6, 0.95}) {
    CHECK(std::abs(overlap(xi, xi) - 1) < 1e-12);
    CHECK(std::abs(overlap(xi, 0.0) - fock_coeff(0, 0, xi)) < 1e-12);
    CHECK(std::abs(overlap(xi, 1e-12) - fock_coeff(0, 0, xi)) < 1e-10);
  }
  for (double a : {0.2, 0.5})
    for (double b : {0.3, 0.9}) {
      CHECK(overlap(a, b) == overlap(b, a));
      CHECK(overlap(a, b) > 0);
      CHECK(overlap(a, b) < 1);
    }
  auto f3 = f_profile(0.3), f7 = f_profile(0.7);
  quad::QuadratureOptions o;
  o.feature_scale = f7->feature_scale();
  auto q = quad::integrate_semi_infinite([&](double r) { return (*f3)(r) * (*f7)(r); },
                                         {f3->decay_rate() + f7->decay_rate(), f3->peak() * f7->peak()},
                                         Tolerance::absolute(1e-12), o);
  CHECK(std::abs(q.value - overlap(0.3, 0.7)) < 1e-8);
  CHECK_THROWS_AS(overlap(1.0, 0.5), std::domain_error);
}

TEST_CASE("Fock coefficients: selection rules and closed form") {
  CHECK(fock_coeff(1, 0, 0.5) == 0.0);
  CHECK(fock_coeff(2, 1, 0.5) == 0.0);
  CHECK(fock_coeff(4, 2, 0.5) == 0.0);
  CHECK(fock_coeff(2, 0, 0.5) == 0.0);
  CHECK(fock_selected(4, 8));
  CHECK(fock_selected(6, 2));
  CHECK_FALSE(fock_selected(2, 4));
  CHECK(std::abs(fock_coeff(0, 0, 0.5) - 0.96530222812466784) < 1e-14);
  CHECK(std::abs(fock_coeff(2, 2, 0.5) - 0.96530222812466784 * 0.125) < 1e-14);
  CHECK(std::abs(fock_coeff(0, 0, 1e-9) - 1) < 1e-12);
  CHECK(fock_coeff(4, 0, 1e-9) < 1e-9);
}

TEST_CASE("Fock coefficients against Hermite projection") {
  const double xi = 0.5;
  auto project = [&](int n, int m) {
    return quad::integrate_2d(
               [&](double x, double y) {
                 auto hx = oracle::hermite_functions(n, x), hy = oracle::hermite_functions(m, y);
                 return wavefunction(x, y, xi) * hx[n] * hy[m];
               },
               {-8, 8, -8, 8}, Tolerance::absolute(1e-11))
        .value;
  };
  for (auto [n, m] : std::vector<std::pair<int, int>>{{0, 0}, {2, 2}, {4, 0}, {0, 4}, {6, 2}}) {
    CHECK(std::abs(std::abs(project(n, m)) - fock_coeff(n, m, xi)) < 1e-9);
  }
  for (auto [n, m] : std::vector<std::pair<int, int>>{{2, 0}, {1, 1}, {4, 2}}) CHECK(std::abs(project(n, m)) < 1e-9);
}

TEST_CASE("Fock normalization defect") {
  double prev = 1.0;
  for (int total : {8, 16, 40, 100, 200}) {
    const double d = fock_normalization_defect(0.5, total);
    CHECK(d > 0);
    CHECK(d < prev);
    prev = d;
  }
  CHECK(fock_normalization_defect(0.5, 200) < 1e-6);
  // cross-check a low truncation against double-precision summation
  double s = 0.0;
  for (int n = 0; n <= 16; ++n)
    for (int m = 0; n + m <= 16; ++m) s += std::pow(fock_coeff(n, m, 0.5), 2);
  CHECK(std::abs(fock_normalization_defect(0.5, 16) - (1 - s)) < 1e-14);
}

TEST_CASE("shell identities") {
  for (int N = 0; N <= 12; ++N) {
    specfun::BigInt expect = 1;
    expect <<= 4 * N;
    CHECK(shell_sum(N) == expect);
  }
  auto c = shell_identity_check(12);
  CHECK(c.passed);
  CHECK_FALSE(c.failed_at.has_value());
  for (int N = 0; N <= 6; ++N) {
    specfun::BigInt cb = specfun::central_binomial(N), den = 1;
    den <<= 4 * N;
    CHECK(shell_structure(N) == specfun::BigRational(cb * cb, den));
    for (double xi : {0.3, 0.8}) CHECK(std::abs(shell_sum_numeric(N, xi) / shell_sum_closed(N, xi) - 1) < 1e-12);
  }
}
