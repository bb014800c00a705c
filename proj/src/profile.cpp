#include "mup/profile.hpp"

#include <stdexcept>

#include "mup/angular.hpp"
#include "mup/specfun.hpp"

namespace mup {

std::string to_string(ProfileRoute r) { return r == ProfileRoute::closed_form ? "closed_form" : "angular_integral"; }
std::string to_string(ProductRoute r) { return r == ProductRoute::closed_form ? "closed_form" : "quadrature"; }

double separable_bound(int parties) {
  if (parties < 2 || parties % 2 != 0) throw std::invalid_argument("separable_bound: parties must be even and >= 2");
  return std::ldexp(1.0, -parties);
}

double product_infimum(int parties) {
  switch (parties) {
    case 2: return 1.0 / 8;
    case 4: return 1.0 / 30;
    case 6: return 35.0 / 4096;
    default: throw std::invalid_argument("product_infimum: only 2, 4, 6 parties are constructed");
  }
}

UncertaintyReport make_report(int parties, double xi, double product, ProductRoute route) {
  UncertaintyReport r;
  r.parties = parties;
  r.xi = xi;
  r.product = product;
  r.separable_bound = separable_bound(parties);
  r.infimum = product_infimum(parties);
  r.violation_ratio = r.separable_bound / product;
  r.route = route;
  return r;
}

namespace angular {

Geometry geometry(double xi) {
  XiParameter checked(xi);
  const double sq = std::sqrt(xi);
  Geometry g;
  g.xi = xi;
  g.beta = sq / (1.0 - xi);
  g.delta = (1.0 + xi) / (2.0 * (1.0 - xi));
  g.lambda = (1.0 - sq) / (2.0 * (1.0 + sq));
  g.norm = 1.0 / std::sqrt(2.0 * std::numbers::pi * specfun::ellip_k(xi) * (1.0 - xi));
  return g;
}

}  // namespace angular

}  // namespace mup
