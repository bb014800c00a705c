#include "mup/multipartite.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "mup/angular.hpp"

namespace mup::multipartite {

namespace {

constexpr double kPi = std::numbers::pi;

BigInt factorial(int n) {
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

void check_n(int n, const char* who) {
  if (n < 1 || n > 12) throw std::domain_error(std::string(who) + ": n must lie in [1, 12]");
}

// theta-powers -> [f, r f', r^2 f'', r^3 f''']
DerivativeStack to_weighted(const std::array<double, 4>& t) {
  return {t[0], t[1], t[2] - t[1], t[3] - 3 * t[2] + 2 * t[1]};
}

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

}  // namespace

std::vector<BigRational> OperatorCoefficients::a() const {
  BigInt scale = factorial(n);
  scale <<= n;
  std::vector<BigRational> out;
  for (const auto& bk : b) out.push_back(bk * BigRational(scale));
  return out;
}

OperatorCoefficients b_coefficients(int n) {
  check_n(n, "b_coefficients");
  OperatorCoefficients oc;
  oc.n = n;
  for (int k = 1; k <= n; ++k) {
    BigInt acc = 0;
    for (int j = 0; j <= k; ++j) {
      if (j * n < n) continue;  // binom(jn, n) = 0
      BigInt term = specfun::binom(k, j) * specfun::binom(long(j) * n, n);
      acc += (j % 2 == 0) ? term : BigInt(-term);
    }
    if (k % 2 == 1) acc = -acc;
    oc.b.emplace_back(acc, factorial(k));
  }
  BigInt nf = factorial(n);
  oc.prefactor = BigRational(BigInt(3) * nf * nf * nf, factorial(3 * n));
  return oc;
}

PascalPair pascal_matrix_pair(int n) {
  check_n(n, "pascal_matrix_pair");
  PascalPair p;
  p.a.assign(n, std::vector<BigRational>(n, BigRational(0)));
  p.a_inv = p.a;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      BigRational e(BigInt(1), factorial(i - j));
      p.a[i][j] = e;
      p.a_inv[i][j] = ((i + j) % 2 == 0) ? e : BigRational(-e);
    }
  return p;
}

RationalMatrix multiply(const RationalMatrix& x, const RationalMatrix& y) {
  const std::size_t n = x.size(), m = y.empty() ? 0 : y[0].size(), k = y.size();
  RationalMatrix out(n, std::vector<BigRational>(m, BigRational(0)));
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i].size() != k) throw std::invalid_argument("multiply: dimension mismatch");
    for (std::size_t l = 0; l < k; ++l) {
      if (x[i][l] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) out[i][j] += x[i][l] * y[l][j];
    }
  }
  return out;
}

bool is_identity(const RationalMatrix& m) {
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i].size() != m.size()) return false;
    for (std::size_t j = 0; j < m.size(); ++j)
      if (m[i][j] != (i == j ? 1 : 0)) return false;
  }
  return true;
}

BigRational falling(const BigRational& alpha, int k) {
  BigRational r = 1;
  for (int i = 0; i < k; ++i) r *= alpha - i;
  return r;
}

BigRational pochhammer_root_residual(int n, int j) {
  check_n(n, "pochhammer_root_residual");
  if (j < 0 || j >= n) throw std::domain_error("pochhammer_root_residual: need 0 <= j < n");
  auto oc = b_coefficients(n);
  const BigRational alpha(j, n);
  BigRational s = 0;
  for (int k = 1; k <= n; ++k) s += oc.b[k - 1] * falling(alpha, k);
  return s;
}

double functional_z(int n, const RadialProfile& profile, const Tolerance& tol, Execution exec) {
  if (n < 1 || n > 3) throw std::domain_error("functional_z: profiles expose derivatives up to order 3");
  if (profile.info().max_derivative_order < n)
    throw std::invalid_argument("functional_z: profile does not expose enough derivatives");
  auto oc = b_coefficients(n);
  std::array<double, 4> b{};
  double l1 = 0.0;
  for (int k = 1; k <= n; ++k) {
    b[k] = static_cast<double>(oc.b[k - 1]);
    l1 += std::abs(b[k]);
  }
  auto integrand = [&](double r) {
    auto d = profile.weighted_derivatives(r);
    double s = 0.0;
    for (int k = 1; k <= n; ++k) s += b[k] * d[k];
    return std::array<double, 1>{s * s};
  };
  quad::QuadratureOptions opts;
  opts.execution = exec;
  opts.feature_scale = profile.feature_scale();
  auto r = quad::integrate_vector_semi_infinite<1>(integrand, square_envelope(profile, n, l1), tol, opts);
  if (!r.converged)
    throw quad::QuadratureError("functional_z: tolerance not reached", {r.value[0], r.error[0], r.evaluations});
  return static_cast<double>(oc.prefactor) * r.value[0];
}

double g_kernel(double p, double x) {
  if (x == 0.0) return p > 0.0 ? 1.0 / p : std::numeric_limits<double>::infinity();
  return std::exp(-x) * specfun::upper_gamma_scaled(-p, x);
}

double h_kernel(double x) {
  if (x == 0.0) return -1.5;
  if (x > 60.0) {
    // e^{-x} sum_k c_k x^{-k}, c_k = -3/2 P_k(1/3) - P_{k-1}(-1/3), P_k(s) = prod_{i<=k} (s - i);
    // c_0 = c_1 = 0
    double pa = (1.0 / 3 - 1), pb = 1.0;  // P_1(1/3), P_0(-1/3)
    double sum = 0.0, xk = 1.0 / x, prev = std::numeric_limits<double>::infinity();
    for (int k = 2; k < 60; ++k) {
      pb *= (-1.0 / 3 - (k - 1));
      pa *= (1.0 / 3 - k);
      xk /= x;
      const double term = (-1.5 * pa - pb) * xk;
      if (std::abs(term) >= prev) break;
      prev = std::abs(term);
      sum += term;
      if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return std::exp(-x) * sum;
  }
  const double s13 = specfun::upper_gamma_scaled(1.0 / 3, x);
  const double sm13 = specfun::upper_gamma_scaled(-1.0 / 3, x);
  return std::exp(-x) * (1.5 - 1.5 * x * s13 - sm13);
}

OdeFamilyProfile::OdeFamilyProfile(OdeKind kind, double xi, double a) : kind_(kind), xi_(xi), a_(a) {
  auto g = angular::geometry(xi);
  lambda_ = g.lambda;
  beta_ = g.beta;
  delta_ = g.delta;
  c_ = g.norm;
  p_ = (a - 1.0) / a;
}

OdeFamilyProfile OdeFamilyProfile::g_family(double xi, double a, Execution exec) {
  XiParameter checked(xi);
  if (!(a >= 1.0) || !std::isfinite(a)) throw std::domain_error("g_family: a must be >= 1");
  OdeFamilyProfile f(OdeKind::g, xi, a);
  f.compute_norms(exec);
  return f;
}

OdeFamilyProfile OdeFamilyProfile::h_family(double xi, Execution exec) {
  XiParameter checked(xi);
  OdeFamilyProfile f(OdeKind::h, xi, 1.5);
  f.compute_norms(exec);
  return f;
}

void OdeFamilyProfile::chains(double r, std::array<double, 4>& bt, std::array<double, 4>& mt) const {
  const angular::Geometry geo{xi_, beta_, delta_, lambda_, c_};
  if (kind_ == OdeKind::g) {
    const double p = p_;
    auto m = angular::integrate<4>(geo, r, [p](double x) {
      const double e = std::exp(-x);
      return std::array<double, 4>{e, -x * e, (x * x - x) * e, g_kernel(p, x)};
    });
    for (auto& v : m) v *= c_;
    bt = {m[0], m[1], m[2], kNan};
    // theta G = p G - f (from the ODE), iterated
    mt[0] = m[3];
    mt[1] = p * mt[0] - m[0];
    mt[2] = p * mt[1] - m[1];
    mt[3] = p * mt[2] - m[2];
  } else {
    auto m = angular::integrate<4>(geo, r, [](double x) {
      const double e = std::exp(-x);
      return std::array<double, 4>{e, -x * e, g_kernel(1.0 / 3, x), h_kernel(x)};
    });
    for (auto& v : m) v *= c_;
    // base F: theta F = F/3 - f;  member: theta h = (F + 2h)/3
    bt[0] = m[2];
    bt[1] = bt[0] / 3 - m[0];
    bt[2] = bt[1] / 3 - m[1];
    bt[3] = kNan;
    mt[0] = m[3];
    mt[1] = (bt[0] + 2 * mt[0]) / 3;
    mt[2] = (bt[1] + 2 * mt[1]) / 3;
    mt[3] = (bt[2] + 2 * mt[2]) / 3;
  }
}

void OdeFamilyProfile::compute_norms(Execution exec) {
  // components: base^2, then the 10 Gram entries of the member's weighted derivatives
  constexpr std::size_t M = 11;
  auto integrand = [this](double r) {
    std::array<double, 4> bt, mt;
    chains(r, bt, mt);
    auto d = to_weighted(mt);
    std::array<double, M> out{};
    out[0] = bt[0] * bt[0];
    std::size_t k = 1;
    for (int i = 0; i < 4; ++i)
      for (int j = i; j < 4; ++j) out[k++] = d[i] * d[j];
    return out;
  };
  // |member| <= |member(0)| e^{-lambda r}; derivative growth folded in as for square_envelope
  std::array<double, 4> bt, mt;
  double peak0;
  if (kind_ == OdeKind::g && p_ == 0.0) {
    chains(1e-6 * feature_scale(), bt, mt);  // log-singular origin at a = 1
    peak0 = std::max(std::abs(mt[0]), kPi * c_);
  } else {
    chains(0.0, bt, mt);
    peak0 = std::max(std::abs(mt[0]), std::abs(bt[0]));
  }
  const double growth = std::pow(12.0 / std::exp(1.0), 3);
  const double amp = 8.0 * 6.0 * peak0 * growth;
  quad::DecayEnvelope env{1.5 * lambda_, amp * amp};
  quad::QuadratureOptions opts;
  opts.execution = exec;
  opts.feature_scale = feature_scale();
  auto res = quad::integrate_vector_semi_infinite<M>(integrand, env, Tolerance(1e-13, 1e-10), opts);
  if (!res.converged)
    throw quad::QuadratureError("ode family: norm integrals did not converge",
                                {res.value[1], res.error[1], res.evaluations});
  Gram gram{};
  std::size_t k = 1;
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) {
      gram[i][j] = gram[j][i] = res.value[k];
      ++k;
    }
  const double mem_sq = gram[0][0];
  norm_ = std::sqrt(mem_sq);
  if (kind_ == OdeKind::g) {
    // natural-sign normalization: g = -(1/a) * member, member = C * int x^p Gamma(-p, x)
    const double s = 1.0 / (a_ * a_);
    norms_.base_norm_sq = res.value[0];
    norms_.norm_sq = mem_sq * s;
    norms_.rprime_norm_sq = gram[1][1] * s;
    norms_.r2_second_norm_sq = gram[2][2] * s;
  } else {
    // h = member / ||F||, driven by the unit-norm f4 = F / ||F||
    base_scale_ = 1.0 / std::sqrt(res.value[0]);
    const double s = base_scale_ * base_scale_;
    norms_.base_norm_sq = 1.0;
    norms_.norm_sq = mem_sq * s;
    norms_.rprime_norm_sq = gram[1][1] * s;
    norms_.r2_second_norm_sq = gram[2][2] * s;
  }
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) norms_.gram[i][j] = gram[i][j] / mem_sq;
  norms_.evaluations = res.evaluations;
}

ProfileInfo OdeFamilyProfile::info() const {
  return {kind_ == OdeKind::g ? 2 : 3, xi_, 3, ProfileRoute::angular_integral};
}

DerivativeStack OdeFamilyProfile::weighted_derivatives(double r) const {
  if (!(r >= 0.0)) throw std::domain_error("ode family: r must be >= 0");
  std::array<double, 4> bt, mt;
  chains(r, bt, mt);
  auto d = to_weighted(mt);
  // g member is positive (g itself negative); h member is negative
  const double s = (kind_ == OdeKind::g ? 1.0 : -1.0) / norm_;
  for (auto& v : d) v *= s;
  return d;
}

DerivativeStack OdeFamilyProfile::raw(double r) const {
  if (!(r >= 0.0)) throw std::domain_error("ode family: r must be >= 0");
  std::array<double, 4> bt, mt;
  chains(r, bt, mt);
  auto d = to_weighted(mt);
  const double s = kind_ == OdeKind::g ? -1.0 / a_ : base_scale_;
  for (auto& v : d) v *= s;
  return d;
}

DerivativeStack OdeFamilyProfile::base(double r) const {
  if (!(r >= 0.0)) throw std::domain_error("ode family: r must be >= 0");
  std::array<double, 4> bt, mt;
  chains(r, bt, mt);
  auto d = to_weighted(bt);
  const double s = kind_ == OdeKind::g ? 1.0 : base_scale_;
  for (auto& v : d) v *= s;
  d[3] = kNan;
  return d;
}

double OdeFamilyProfile::gamma(double theta) const {
  const double c = std::sqrt(xi_) * std::cos(theta);
  return 0.5 * (1.0 - c) / (1.0 + c);
}

double OdeFamilyProfile::decay_rate() const { return lambda_; }
double OdeFamilyProfile::feature_scale() const { return 1.0 / (delta_ + beta_); }
double OdeFamilyProfile::peak() const {
  if (kind_ == OdeKind::g && p_ == 0.0) return std::abs(weighted_derivatives(1e-6 * feature_scale())[0]);
  return std::abs(weighted_derivatives(0.0)[0]);
}

UncertaintyReport z4_product(double xi, Execution exec) {
  auto g = OdeFamilyProfile::g_family(xi, 2.0, exec);
  return make_report(4, xi, functional_z(2, g, Tolerance::relative(1e-9), exec), ProductRoute::quadrature);
}

UncertaintyReport z6_product(double xi, Execution exec) {
  auto h = OdeFamilyProfile::h_family(xi, exec);
  return make_report(6, xi, functional_z(3, h, Tolerance::relative(1e-9), exec), ProductRoute::quadrature);
}

std::pair<double, double> z6_factorization(const RadialProfile& p, Execution exec) {
  if (p.info().max_derivative_order < 3) throw std::invalid_argument("z6_factorization: need third derivatives");
  auto integrand = [&p](double r) {
    auto d = p.weighted_derivatives(r);
    const double lhs = d[1] + 9 * d[2] + 4.5 * d[3];
    // u = 3 D1 - 2 D0; theta u = 3 theta^2 f - 2 theta f, theta^2 u = 3 theta^3 f - 2 theta^2 f
    const double t1 = d[1], t2 = d[2] + d[1], t3 = d[3] + 3 * d[2] + d[1];
    const double tu1 = 3 * t2 - 2 * t1, tu2 = 3 * t3 - 2 * t2;
    const double rhs = tu1 + 1.5 * (tu2 - tu1);
    return std::array<double, 2>{lhs * lhs, rhs * rhs};
  };
  quad::QuadratureOptions opts;
  opts.execution = exec;
  opts.feature_scale = p.feature_scale();
  auto r = quad::integrate_vector_semi_infinite<2>(integrand, square_envelope(p, 3, 24.0), Tolerance::relative(1e-9), opts);
  if (!r.converged) throw quad::QuadratureError("z6_factorization: tolerance not reached", {r.value[0], r.error[0], r.evaluations});
  return {r.value[0], r.value[1]};
}

double euler_combination_norm(const Gram& g, double a) {
  return std::sqrt(g[1][1] + 2 * a * g[1][2] + a * a * g[2][2]);
}

std::array<AlphaBetaResidual, 2> alpha_beta_certificate() {
  const double s = std::sqrt(74.0);
  std::array<AlphaBetaResidual, 2> out{};
  int k = 0;
  for (double sign : {1.0, -1.0}) {
    const double al = 9.0 / 8 * (9 + sign * s), be = 3.0 / 4 * (24 + sign * s);
    const double r1 = al * al - 3 * al * be + 54 * al - (28 - 49 * (5.0 / 8) * (5.0 / 8));
    const double r2 = be * be - 9 * al - 45 * be / 2 + 261.0 / 2;
    out[k++] = {al, be, r1, r2};
  }
  return out;
}

}  // namespace mup::multipartite
