#pragma once

#include <array>
#include <utility>
#include <vector>

#include "mup/parallel.hpp"
#include "mup/profile.hpp"
#include "mup/specfun.hpp"

namespace mup::multipartite {

using specfun::BigInt;
using specfun::BigRational;
using RationalMatrix = std::vector<std::vector<BigRational>>;

// Coefficients of the radial operator sum_k b_k r^k d^k/dr^k (k = 1..n).
struct OperatorCoefficients {
  int n = 1;
  std::vector<BigRational> b;  // b[0] is b_1
  BigRational prefactor;       // 3 (n!)^3 / (3n)!
  std::vector<BigRational> a() const;  // a_k = 2^n n! b_k
};

OperatorCoefficients b_coefficients(int n);

struct PascalPair {
  RationalMatrix a, a_inv;
};
PascalPair pascal_matrix_pair(int n);
RationalMatrix multiply(const RationalMatrix& x, const RationalMatrix& y);
bool is_identity(const RationalMatrix& m);

// Falling product alpha (alpha - 1) ... (alpha - k + 1).
BigRational falling(const BigRational& alpha, int k);
BigRational pochhammer_root_residual(int n, int j);

// prefactor * int_0^inf (sum_k b_k r^k f^(k))^2 dr
double functional_z(int n, const RadialProfile& profile, const Tolerance& tol = Tolerance::relative(1e-9),
                    Execution exec = Execution::parallel);

// Gram matrix int D_i D_j dr of weighted derivatives D_0..D_3 (order-limited).
using Gram = std::array<std::array<double, 4>, 4>;

enum class OdeKind { g, h };

struct FamilyNorms {
  double base_norm_sq = 0.0;   // ||driving profile||^2, analytically 1
  double norm_sq = 0.0;        // ||g||^2 or ||h||^2 (unnormalized family member)
  double rprime_norm_sq = 0.0;  // ||r g'||^2 or ||r h'||^2
  double r2_second_norm_sq = 0.0;  // ||r^2 g''||^2 or ||r^2 h''||^2
  Gram gram{};                 // of the normalized companion
  std::size_t evaluations = 0;
};

// g: (1 - a) g + a r g' = f_xi, the normalizable branch
//   g = -(C/a) int_0^pi (x^p Gamma(-p, x)) dpsi,  p = (a - 1)/a.
// h: -2 h + 3 r h' = f4 with f4 = normalized positive companion of g at a = 3/2.
// The profile itself evaluates the normalized positive companion (-g/||g||
// resp. -h/||h||); raw() gives the family member with its natural sign.
class OdeFamilyProfile final : public RadialProfile {
 public:
  static OdeFamilyProfile g_family(double xi, double a, Execution exec = Execution::parallel);
  static OdeFamilyProfile h_family(double xi, Execution exec = Execution::parallel);

  ProfileInfo info() const override;
  DerivativeStack weighted_derivatives(double r) const override;
  double decay_rate() const override;
  double peak() const override;
  double feature_scale() const override;

  OdeKind kind() const { return kind_; }
  double xi() const { return xi_; }
  double a_parameter() const { return a_; }
  double normalization() const { return norm_; }
  const FamilyNorms& norms() const { return norms_; }

  // Unnormalized member (g or h) and its weighted derivatives.
  DerivativeStack raw(double r) const;
  // Driving profile of the ODE (f_xi or f4), weighted derivatives.
  DerivativeStack base(double r) const;
  // gamma(theta) = (1/2)(1 - sqrt(xi) cos theta)/(1 + sqrt(xi) cos theta)
  double gamma(double theta) const;

 private:
  OdeFamilyProfile(OdeKind kind, double xi, double a);
  void compute_norms(Execution exec);
  // theta-powers (theta = r d/dr) of base and member, both unscaled by norm_
  void chains(double r, std::array<double, 4>& base_t, std::array<double, 4>& member_t) const;

  OdeKind kind_;
  double xi_, a_, p_;
  double lambda_, beta_, delta_, c_;
  double base_scale_ = 1.0;  // 1/||F|| for h
  double norm_ = 1.0;        // ||member||
  FamilyNorms norms_;
};

// Kernels on x = gamma r.
double g_kernel(double p, double x);  // x^p Gamma(-p, x)
double h_kernel(double x);            // 1.5 e^{-x} - 1.5 x^{2/3} Gamma(1/3, x) - x^{1/3} Gamma(-1/3, x)

UncertaintyReport z4_product(double xi, Execution exec = Execution::parallel);
UncertaintyReport z6_product(double xi, Execution exec = Execution::parallel);

// int (D1 + 9 D2 + 9/2 D3)^2 and int (r u' + 3/2 r^2 u'')^2 with u = 3 r f' - 2 f.
std::pair<double, double> z6_factorization(const RadialProfile& p, Execution exec = Execution::parallel);
// ||r f' + a r^2 f''|| from a Gram matrix.
double euler_combination_norm(const Gram& g, double a);

struct AlphaBetaResidual {
  double alpha, beta, first, second;
};
std::array<AlphaBetaResidual, 2> alpha_beta_certificate();

}  // namespace mup::multipartite
