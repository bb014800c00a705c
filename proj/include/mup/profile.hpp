#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "mup/quadrature.hpp"

namespace mup {

enum class ProfileRoute { closed_form, angular_integral };
enum class ProductRoute { closed_form, quadrature };

std::string to_string(ProfileRoute r);
std::string to_string(ProductRoute r);

// [f, r f', r^2 f'', r^3 f'''] - Euler-weighted derivatives; entries above the
// profile's max order are NaN.
using DerivativeStack = std::array<double, 4>;

struct ProfileInfo {
  int family_n = 1;  // half the party number
  double xi = 0.0;
  int max_derivative_order = 0;
  ProfileRoute route = ProfileRoute::closed_form;
};

class RadialProfile {
 public:
  virtual ~RadialProfile() = default;
  virtual ProfileInfo info() const = 0;
  virtual DerivativeStack weighted_derivatives(double r) const = 0;
  // Asymptotic decay rate lambda: |r^k f^(k)| = O(r^k e^{-lambda r}).
  virtual double decay_rate() const = 0;
  // Upper bound on |f| (attained at r = 0 for every family here).
  virtual double peak() const = 0;
  // Smallest length scale of the profile, used to seed quadrature panels.
  virtual double feature_scale() const = 0;

  double operator()(double r) const { return weighted_derivatives(r)[0]; }
};

// Envelope for squares of linear combinations of weighted derivatives up to
// `order` with coefficient l1-norm `coeff_l1`. Polynomial growth r^k is folded
// into a slower exponential: (lambda r)^k e^{-lambda r / 4} <= (4k/e)^k.
inline quad::DecayEnvelope square_envelope(const RadialProfile& p, int order, double coeff_l1) {
  double growth = 1.0;
  for (int k = 1; k <= order; ++k) growth = std::max(growth, std::pow(4.0 * k / std::exp(1.0), k));
  const double amp = 8.0 * coeff_l1 * p.peak() * growth;
  return {1.5 * p.decay_rate(), amp * amp};
}

struct UncertaintyReport {
  int parties = 2;
  double xi = 0.0;
  double product = 0.0;
  double separable_bound = 0.0;
  double infimum = 0.0;
  double violation_ratio = 0.0;
  ProductRoute route = ProductRoute::closed_form;
};

double separable_bound(int parties);
double product_infimum(int parties);
UncertaintyReport make_report(int parties, double xi, double product, ProductRoute route);

}  // namespace mup
