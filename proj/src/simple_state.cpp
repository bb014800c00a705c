#include "mup/simple_state.hpp"

#include <cmath>
#include <stdexcept>

#include "mup/specfun.hpp"

namespace mup::simple_state {

namespace {

void check_xi(double xi) {
  if (!(xi > 0.0 && xi < 1.0)) throw std::domain_error("simple_state: xi must lie in (0, 1)");
}

}  // namespace

std::pair<double, double> c1_c2(double xi) {
  check_xi(xi);
  const double x2 = xi * xi;
  const double li = specfun::dilog(x2);
  const double c1 = 0.5 * xi / std::sqrt(li);
  // sum_{n>=1} (2 + 1/n) xi^{2n-2}
  const double s = 2.0 / (1.0 - x2) - std::log1p(-x2) / x2;
  const double c2 = 0.5 * (2.0 - xi) * s * x2 / li;
  return {c1, c2};
}

double q_of(double xi, double phi) {
  auto [c1, c2] = c1_c2(xi);
  return -c1 * std::sin(2 * phi) + c2 * (1.0 - std::cos(2 * phi));
}

double q0(double xi) {
  auto [c1, c2] = c1_c2(xi);
  // C2 - sqrt(C1^2 + C2^2), written without cancellation
  return -c1 * c1 / (c2 + std::hypot(c1, c2));
}

double optimal_phi(double xi) {
  auto [c1, c2] = c1_c2(xi);
  return 0.5 * std::atan2(c1, c2);
}

CoefficientSequence reconstruct_coefficients(double xi, double phi) {
  check_xi(xi);
  // smallest m with xi^{2m} / m^2 < 1e-16
  int m = 1;
  while (std::pow(xi, 2.0 * m) / (double(m) * m) >= 1e-16) ++m;
  CoefficientSequence cs;
  cs.values.resize(m + 1);
  cs.values[0] = std::cos(phi);
  const double c1 = xi * std::sin(phi) / std::sqrt(specfun::dilog(xi * xi));
  double p = 1.0;
  for (int n = 1; n <= m; ++n) {
    cs.values[n] = p * c1 / n;
    p *= xi;
  }
  cs.truncation_order = m + 1;
  for (double v : cs.values) cs.norm_sq += v * v;
  // omitted: sum_{n>m} xi^{2n-2} c1^2 / n^2 <= c1^2 xi^{2m} / ((m+1)^2 (1 - xi^2))
  cs.tail_bound = c1 * c1 * std::pow(xi, 2.0 * m) / ((m + 1.0) * (m + 1.0) * (1.0 - xi * xi));
  return cs;
}

SimpleStateSolution minimize_q0() {
  // scan guard: locate the best grid cell, then refine by golden section inside it
  constexpr int kScan = 1000;
  const double h = (kBracketHi - kBracketLo) / kScan;
  int best = 0;
  double best_v = q0(kBracketLo);
  for (int i = 1; i <= kScan; ++i) {
    double v = q0(kBracketLo + i * h);
    if (v < best_v) {
      best_v = v;
      best = i;
    }
  }
  double a = kBracketLo + std::max(best - 1, 0) * h;
  double b = kBracketLo + std::min(best + 1, kScan) * h;
  const double invphi = (std::sqrt(5.0) - 1) / 2;
  double x1 = b - invphi * (b - a), x2 = a + invphi * (b - a);
  double f1 = q0(x1), f2 = q0(x2);
  while (b - a > kXiTol) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = q0(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = q0(x2);
    }
  }
  SimpleStateSolution s;
  s.xi = 0.5 * (a + b);
  s.phi = optimal_phi(s.xi);
  s.q_value = q0(s.xi);
  s.coefficients = reconstruct_coefficients(s.xi, s.phi);
  return s;
}

}  // namespace mup::simple_state
