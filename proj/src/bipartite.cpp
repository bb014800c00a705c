#include "mup/bipartite.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "mup/angular.hpp"

namespace mup::bipartite {

namespace {

constexpr double kPi = std::numbers::pi;

double checked(double xi) { return XiParameter(xi).value(); }

class ClosedFormProfile final : public RadialProfile {
 public:
  explicit ClosedFormProfile(double xi) : g_(angular::geometry(xi)) { amp_ = kPi * g_.norm; }

  ProfileInfo info() const override { return {1, g_.xi, 1, ProfileRoute::closed_form}; }

  DerivativeStack weighted_derivatives(double r) const override {
    if (!(r >= 0.0)) throw std::domain_error("f_profile: r must be >= 0");
    const double z = g_.beta * r;
    const double decay = std::exp(-g_.lambda * r);
    const double i0e = specfun::bessel_i0e(z);
    // beta I1e - delta I0e = -beta (I0e - I1e) - lambda I0e: no cancellation near xi = 1
    const double slope = -g_.beta * specfun::bessel_i0e_minus_i1e(z) - g_.lambda * i0e;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    return {amp_ * i0e * decay, amp_ * decay * r * slope, nan, nan};
  }
  double decay_rate() const override { return g_.lambda; }
  double peak() const override { return amp_; }
  double feature_scale() const override { return 1.0 / (g_.delta + g_.beta); }

 private:
  angular::Geometry g_;
  double amp_;
};

class AngularProfile final : public RadialProfile {
 public:
  explicit AngularProfile(double xi) : g_(angular::geometry(xi)) {}

  ProfileInfo info() const override { return {1, g_.xi, 3, ProfileRoute::angular_integral}; }

  DerivativeStack weighted_derivatives(double r) const override {
    if (!(r >= 0.0)) throw std::domain_error("f_profile: r must be >= 0");
    // r^k d^k/dr^k e^{-gamma r} = (-x)^k e^{-x}
    auto v = angular::integrate<4>(g_, r, [](double x) {
      const double e = std::exp(-x);
      return std::array<double, 4>{e, -x * e, x * x * e, -x * x * x * e};
    });
    for (auto& c : v) c *= g_.norm;
    return v;
  }
  double decay_rate() const override { return g_.lambda; }
  double peak() const override { return kPi * g_.norm; }
  double feature_scale() const override { return 1.0 / (g_.delta + g_.beta); }

 private:
  angular::Geometry g_;
};

// ln binom(2k, k)
double log_central(double k) { return std::lgamma(2 * k + 1) - 2 * std::lgamma(k + 1); }

// ln( Gamma(n + 1/2) / (sqrt(pi) Gamma(n + 1)) ) for large n, asymptotic ratio series
double log_u_ratio(double n) {
  const double t = 1.0 / n;
  const double s = 1.0 + t * (-1.0 / 8 + t * (1.0 / 128 + t * (5.0 / 1024 - t * 21.0 / 32768)));
  return -0.5 * std::log(n * kPi) + std::log(s);
}

struct Kahan {
  double sum = 0.0, c = 0.0;
  void add(double x) {
    const double y = x - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
};

// (2n+1)^2: weight of the positive-term form of the series
inline double t_weight(double n) { return (2 * n + 1) * (2 * n + 1); }

constexpr double kSeriesRelTol = 1e-15;
constexpr long long kChunk = 1 << 20;
constexpr int kWave = 64;

// With a_n = u_n^2, summation by parts on (2n+2)^2 a_{n+1} = xi^2 (2n+1)^2 a_n turns
// sum a_n [2n(2n+1) - xi(2n+1)^2] into ((1-xi)^2 T - S0)/2, T = sum (2n+1)^2 a_n.
// Every term is positive, so nothing cancels as xi -> 1.
double r_from_sums(double xi, double s0, double t) { return -0.5 + 0.5 * (1 - xi) * (1 - xi) * t / s0; }

// Term ratios of T decrease toward xi^2 and those of S0 stay below xi^2, so both
// remaining sums are bounded by geometric tails.
bool series_done(double n, double xi, double u2, double s0, double t) {
  const double ratio = xi * xi * t_weight(n + 1) / t_weight(n) * std::pow((2 * n + 1) / (2 * n + 2), 2);
  if (!(ratio < 1.0)) return false;
  const double t_tail = u2 * t_weight(n) * ratio / (1.0 - ratio);
  return t_tail < kSeriesRelTol * t && u2 / (1.0 - xi * xi) < kSeriesRelTol * s0;
}

SeriesResult r_series_serial(double xi) {
  Kahan s0, t;
  double u = 1.0;
  long long n = 0;
  for (;; ++n) {
    const double u2 = u * u;
    s0.add(u2);
    t.add(u2 * t_weight(double(n)));
    if (series_done(double(n), xi, u2, s0.sum, t.sum) || u2 == 0.0) break;
    u *= xi * (2.0 * n + 1) / (2.0 * n + 2);
  }
  return {r_from_sums(xi, s0.sum, t.sum), n + 1, s0.sum};
}

struct Chunk {
  double s0 = 0.0, t = 0.0;
  double last_u2 = 0.0;
};

Chunk run_chunk(long long start, double xi, double log_xi) {
  double u = start == 0 ? 1.0 : std::exp(double(start) * log_xi + log_u_ratio(double(start)));
  Kahan s0, t;
  Chunk c;
  for (long long n = start; n < start + kChunk; ++n) {
    const double u2 = u * u;
    s0.add(u2);
    t.add(u2 * t_weight(double(n)));
    c.last_u2 = u2;
    u *= xi * (2.0 * n + 1) / (2.0 * n + 2);
  }
  c.s0 = s0.sum;
  c.t = t.sum;
  return c;
}

SeriesResult r_series_chunked(double xi, Execution exec) {
  const double log_xi = std::log1p(xi - 1.0);
  Kahan s0, t;
  long long next = 0;
  while (true) {
    auto wave = map_indexed<Chunk>(kWave, exec, [&](std::size_t k) {
      return run_chunk(next + static_cast<long long>(k) * kChunk, xi, log_xi);
    });
    for (int k = 0; k < kWave; ++k) {
      s0.add(wave[k].s0);
      t.add(wave[k].t);
      const long long last = next + (k + 1) * kChunk - 1;
      if (series_done(double(last), xi, wave[k].last_u2, s0.sum, t.sum) || wave[k].last_u2 == 0.0)
        return {r_from_sums(xi, s0.sum, t.sum), last + 1, s0.sum};
    }
    next += kWave * kChunk;
  }
}

}  // namespace

double coeff(int n, double xi) {
  checked(xi);
  if (n < 0) throw std::domain_error("coeff: n must be >= 0");
  double c = std::sqrt(kPi / (2.0 * specfun::ellip_k(xi)));
  if (n > 100000) return c * std::exp(n * std::log(xi) + log_u_ratio(n));
  for (int k = 0; k < n; ++k) c *= xi * (2.0 * k + 1) / (2.0 * k + 2);
  return c;
}

double r_closed(double xi) {
  checked(xi);
  const double k = specfun::ellip_k(xi), e = specfun::ellip_e(xi);
  return -1.0 / (1.0 + xi) + e / ((1.0 + xi) * (1.0 + xi) * k);
}

SeriesResult r_series(double xi, Execution exec) {
  checked(xi);
  if (exec == Execution::serial) return r_series_serial(xi);
  // short series are cheaper (and exact-er) without restarts
  if (xi < 1.0 - 1e-4) return r_series_serial(xi);
  return r_series_chunked(xi, exec);
}

UncertaintyReport uncertainty_product(double xi, ProductRoute route, Execution exec) {
  checked(xi);
  if (route == ProductRoute::closed_form) return make_report(2, xi, 0.25 + 0.25 * r_closed(xi), route);
  const double k = specfun::ellip_k(xi);
  auto integrand = [xi](double t, double tp) {
    const double c = std::cos(t), cp = std::cos(tp);
    const double den = 1.0 - xi * c * cp;
    return (1.0 - xi * c * c) * (1.0 - xi * cp * cp) / (den * den * den);
  };
  quad::QuadratureOptions opts;
  opts.execution = exec;
  auto res = quad::integrate_2d(integrand, {0.0, kPi, 0.0, kPi}, Tolerance::relative(1e-11), opts);
  return make_report(2, xi, res.value / (8.0 * kPi * k), route);
}

double residual_norm_sq(double xi) {
  checked(xi);
  const double k = specfun::ellip_k(xi), e = specfun::ellip_e(xi);
  return (2.0 * e - (1.0 - xi * xi) * k) / (4.0 * (1.0 + xi) * (1.0 + xi) * k);
}

std::unique_ptr<RadialProfile> f_profile(double xi, ProfileRoute route) {
  checked(xi);
  if (route == ProfileRoute::closed_form) return std::make_unique<ClosedFormProfile>(xi);
  return std::make_unique<AngularProfile>(xi);
}

double f_prime_at_origin(double xi) {
  checked(xi);
  return -std::sqrt(kPi / (8.0 * specfun::ellip_k(xi))) * (1.0 + xi) / std::pow(1.0 - xi, 1.5);
}

double wavefunction(double x, double y, double xi) {
  ClosedFormProfile f(checked(xi));
  return f(x * x + y * y) / std::sqrt(kPi);
}

double overlap(double xi, double xi_prime) {
  for (double v : {xi, xi_prime})
    if (!(v >= 0.0 && v < 1.0)) throw std::domain_error("overlap: xi must lie in [0, 1)");
  const double km = specfun::ellip_k(std::sqrt(xi * xi_prime));
  return km / std::sqrt(specfun::ellip_k(xi) * specfun::ellip_k(xi_prime));
}

bool fock_selected(int n, int m) {
  if (n < 0 || m < 0) return false;
  return (n % 4 == 0 && m % 4 == 0) || (n % 4 == 2 && m % 4 == 2);
}

double fock_coeff(int n, int m, double xi) {
  checked(xi);
  if (n < 0 || m < 0) throw std::domain_error("fock_coeff: n, m must be >= 0");
  if (!fock_selected(n, m)) return 0.0;
  const double s = (n + m) / 4.0;
  const double logv = 0.5 * std::log(kPi / (2.0 * specfun::ellip_k(xi))) +
                      0.5 * (log_central(n / 2.0) + log_central(m / 2.0)) + log_central(s) +
                      s * std::log(xi / 16.0);
  return std::exp(logv);
}

double fock_normalization_defect(double xi, int max_total) {
  checked(xi);
  if (max_total < 4) throw std::domain_error("fock_normalization_defect: max_total must be >= 4");
  using F50 = boost::multiprecision::cpp_bin_float_50;
  const F50 x(xi);
  const F50 pref = boost::math::constants::pi<F50>() / (2 * specfun::ellip_k<F50>(x));
  std::vector<F50> cb(max_total / 2 + 1), pw(max_total / 2 + 1);
  F50 p = 1;
  for (int k = 0; k <= max_total / 2; ++k) {
    cb[k] = F50(specfun::central_binomial(k));
    pw[k] = p;
    p *= x / 16;
  }
  F50 sum = 0;
  for (int n = 0; n <= max_total; n += 2)
    for (int m = n % 4; n + m <= max_total; m += 4) {
      const int s = (n + m) / 4;  // n + m = 4s
      sum += cb[n / 2] * cb[m / 2] * cb[s] * cb[s] * pw[2 * s];
    }
  return static_cast<double>(F50(1) - pref * sum);
}

specfun::BigInt shell_sum(int N) {
  if (N < 0) throw std::domain_error("shell_sum: N must be >= 0");
  using specfun::binom;
  specfun::BigInt s = 0;
  for (int n = 0; n <= N; ++n) s += binom(4 * n, 2 * n) * binom(4 * N - 4 * n, 2 * N - 2 * n);
  for (int n = 0; n < N; ++n) s += binom(4 * n + 2, 2 * n + 1) * binom(4 * N - 4 * n - 2, 2 * N - 2 * n - 1);
  return s;
}

ShellCheck shell_identity_check(int N_max) {
  if (N_max < 1) throw std::domain_error("shell_identity_check: N_max must be >= 1");
  for (int N = 0; N <= N_max; ++N) {
    specfun::BigInt target = 1;
    target <<= 4 * N;
    if (shell_sum(N) != target) return {false, N};
  }
  return {true, std::nullopt};
}

specfun::BigRational shell_structure(int N) {
  if (N < 0) throw std::domain_error("shell_structure: N must be >= 0");
  using specfun::central_binomial;
  specfun::BigInt acc = 0;
  for (int n = 0; n <= 4 * N; n += 2) acc += central_binomial(n / 2) * central_binomial((4 * N - n) / 2);
  specfun::BigInt c = central_binomial(N);
  specfun::BigInt den = 1;
  den <<= 8 * N;
  return specfun::BigRational(acc * c * c, den);
}

double shell_sum_numeric(int N, double xi) {
  double s = 0.0;
  for (int n = 0; n <= 4 * N; ++n) {
    const double c = fock_coeff(n, 4 * N - n, xi);
    s += c * c;
  }
  return s;
}

double shell_sum_closed(int N, double xi) {
  checked(xi);
  const double c = static_cast<double>(specfun::central_binomial(N));
  return kPi / (2.0 * specfun::ellip_k(xi)) * c * c * std::pow(xi * xi / 16.0, N);
}

}  // namespace mup::bipartite
