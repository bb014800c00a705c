#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "mup/quadrature.hpp"

namespace mup::angular {

// After the substitution that flattens the weight 1/(1 + sqrt(xi) cos theta),
// every family member is C * int_0^pi K(x(psi)) dpsi with
//   x(psi) = r (delta - beta cos psi) = r (lambda + 2 beta sin^2(psi/2)).
struct Geometry {
  double xi, beta, delta, lambda;
  double norm;  // C = 1 / sqrt(2 pi K(xi) (1 - xi))
};

Geometry geometry(double xi);

// Kernel decay e^{-(x - lambda r)} below e^{-kCut} is dropped.
inline constexpr double kCut = 46.0;

template <std::size_t M, class Kernel>
std::array<double, M> integrate(const Geometry& g, double r, const Kernel& kernel, double rel_tol = 1e-12) {
  const double pi = std::numbers::pi;
  if (r == 0.0) {
    auto v = kernel(0.0);
    for (auto& x : v) x *= pi;
    return v;
  }
  const double br = g.beta * r, lr = g.lambda * r;
  auto xof = [&](double psi) {
    const double s = std::sin(0.5 * psi);
    return lr + 2.0 * br * s * s;
  };
  double psi_max = pi;
  if (2.0 * br > kCut) psi_max = 2.0 * std::asin(std::sqrt(kCut / (2.0 * br)));
  // first panels track the scale where x - lambda r reaches O(1)
  std::vector<double> bp{0.0};
  double s1 = 2.0 * br > 1.0 ? 2.0 * std::asin(std::sqrt(1.0 / (2.0 * br))) : psi_max;
  for (double s = s1; s < psi_max; s *= 2) bp.push_back(s);
  bp.push_back(psi_max);
  // Sign-changing kernels (higher derivatives) can integrate to ~0; the absolute
  // floor tracks the kernel magnitude e^{-x}/(1+x)^2 over the effective psi width.
  const double width = std::min(1.0, 1.0 / std::sqrt(std::max(br, 1e-300)));
  const double floor = 1e-2 * rel_tol * std::exp(-lr) / ((1.0 + lr) * (1.0 + lr)) * width;
  quad::QuadratureOptions opts;
  opts.max_evaluations = 200000;
  auto res = quad::integrate_vector<M>([&](double psi) { return kernel(xof(psi)); }, bp,
                                       Tolerance(std::max(floor, 1e-300), rel_tol), opts);
  return res.value;
}

}  // namespace mup::angular
