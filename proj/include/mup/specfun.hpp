#pragma once

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <stdexcept>

namespace mup::specfun {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// Complete elliptic integrals with modulus xi (not parameter m = xi^2):
//   K(xi) = int_0^{pi/2} dtheta / sqrt(1 - xi^2 sin^2 theta).
// Templated so the Fock-layer defect can run in extended precision.
template <class T>
T ellip_k(const T& xi) {
  using std::abs;
  using std::sqrt;
  if (!(xi >= T(0)) || !(xi < T(1))) throw std::domain_error("ellip_k: xi must lie in [0, 1)");
  T a = 1, g = sqrt((T(1) - xi) * (T(1) + xi));
  const T eps = std::numeric_limits<T>::epsilon();
  for (int it = 0; it < 64 && abs(a - g) > eps * a; ++it) {
    T an = (a + g) / 2;
    g = sqrt(a * g);
    a = an;
  }
  return boost::math::constants::half_pi<T>() / a;
}

template <class T>
T ellip_e(const T& xi) {
  using std::abs;
  using std::sqrt;
  if (!(xi >= T(0)) || !(xi <= T(1))) throw std::domain_error("ellip_e: xi must lie in [0, 1]");
  if (xi == T(1)) return T(1);
  T a = 1, g = sqrt((T(1) - xi) * (T(1) + xi));
  T sum = xi * xi / 2, pow2 = T(1) / 2;
  const T eps = std::numeric_limits<T>::epsilon();
  for (int it = 0; it < 64; ++it) {
    T c = (a - g) / 2;
    T an = (a + g) / 2;
    g = sqrt(a * g);
    a = an;
    pow2 *= 2;
    sum += pow2 * c * c;
    if (abs(c) <= eps * a) break;
  }
  return boost::math::constants::half_pi<T>() / a * (T(1) - sum);
}

double dilog(double z);

double bessel_j0(double z);
double bessel_i0(double z);
// Exponentially scaled: e^{-z} I_nu(z), z >= 0.
double bessel_i0e(double z);
double bessel_i1e(double z);
// e^{-z} (I_0(z) - I_1(z)) without cancellation at large z.
double bessel_i0e_minus_i1e(double z);

double laguerre(int n, double r);
// l_n(r) = L_n(r) e^{-r/2}
double laguerre_fn(int n, double r);

// Upper incomplete gamma Gamma(s, x) for real s (negative integers excluded), x > 0.
double upper_gamma(double s, double x);
// Gamma(s, x) x^{-s} e^{x}: finite and well-conditioned where Gamma(s, x) itself
// under/overflows. Continued fraction for x > max(1, s + 1); below that the
// lower series for s > 0, and for s < 0 a downward recurrence from s + ceil(-s).
double upper_gamma_scaled(double s, double x);

BigInt binom(long n, long k);
BigInt central_binomial(long n);

namespace detail {
inline constexpr double kJ0Crossover = 12.0;
inline constexpr double kI0Crossover = 12.0;
double bessel_j0_series(double z);
double bessel_j0_asymptotic(double z);
double bessel_i0_series(double z);
double bessel_i0_asymptotic(double z);
double expint_e1(double x);
}  // namespace detail

}  // namespace mup::specfun
