#include <cmath>
#include <numbers>

#include "mup/bipartite.hpp"
#include "mup/cli.hpp"
#include "mup/multipartite.hpp"
#include "mup/quadrature.hpp"
#include "mup/simple_state.hpp"
#include "mup/spectral.hpp"
#include "mup/specfun.hpp"

namespace mup::cli {

namespace {

constexpr double kPi = std::numbers::pi;

struct Suite {
  std::vector<Check> checks;

  void near(const std::string& name, double value, double ref, double tol) {
    checks.push_back({name, value, ref, tol, "abs<=tol", std::abs(value - ref) <= tol});
  }
  void less(const std::string& name, double value, double bound) {
    checks.push_back({name, value, bound, 0.0, "<", value < bound});
  }
  void greater(const std::string& name, double value, double bound) {
    checks.push_back({name, value, bound, 0.0, ">", value > bound});
  }
  void exact(const std::string& name, bool ok) { checks.push_back({name, ok ? 1.0 : 0.0, 1.0, 0.0, "exact", ok}); }

  // run a group; an exception turns into a failed check of that name
  template <class Fn>
  void guard(const std::string& name, Fn&& fn) {
    try {
      fn();
    } catch (const std::exception&) {
      checks.push_back({name, std::nan(""), 0.0, 0.0, "exception", false});
    }
  }
};

std::string tag(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

}  // namespace

std::vector<Check> verify_suite(const std::string& inject_fault, Execution exec) {
  Suite s;
  using namespace mup::specfun;

  s.guard("specfun", [&] {
    s.near("ellip_k_0.5", ellip_k(0.5), 1.6857503548125960, 1e-12);
    s.near("ellip_e_0.5", ellip_e(0.5), 1.4674622093394272, 1e-12);
    s.near("dilog_0.25", dilog(0.25), 0.26765263908273261, 1e-12);
    s.near("bessel_j0_first_zero", bessel_j0(2.404825557695773), 0.0, 1e-10);
    s.near("bessel_i0_1", bessel_i0(1.0), 1.2660658777520083, 1e-10);
    s.near("bessel_i0_large_ratio", bessel_i0(50.0) * std::sqrt(2 * kPi * 50) * std::exp(-50.0), 1.0 + 1.0 / 400, 1e-3);
    const double lhs = upper_gamma(2.0 / 3, 0.8);
    const double rhs = -1.0 / 3 * upper_gamma(-1.0 / 3, 0.8) + std::pow(0.8, -1.0 / 3) * std::exp(-0.8);
    s.near("upper_gamma_recurrence", lhs - rhs, 0.0, 1e-9);
    s.exact("central_binomial_20", central_binomial(20) == BigInt(137846528820LL));
  });

  s.guard("quadrature", [&] {
    auto a = quad::integrate_finite([](double t) { return std::sin(t); }, 0.0, kPi, Tolerance::absolute(1e-12));
    s.near("quad_finite_sin", a.value, 2.0, 1e-10);
    auto b = quad::integrate_semi_infinite([](double t) { return std::exp(-t) * bessel_j0(2 * std::sqrt(0.25 * t)); },
                                           {1.0, 1.0}, Tolerance::absolute(1e-12));
    s.near("quad_semi_infinite_bessel", b.value, std::exp(-0.25), 1e-10);
  });

  double lambda_q = std::nan("");
  s.guard("spectral", [&] {
    lambda_q = spectral::min_eigenpair(spectral::build_q_form(200)).eigenvalue;
    s.near("q_min_eigenvalue", lambda_q, -0.04495, 5e-4);
    const double l150 = spectral::min_eigenpair(spectral::build_q_form(150)).eigenvalue;
    s.near("q_truncation_drift_150_200", lambda_q - l150, 0.0, 1e-6);
    auto r = spectral::min_eigenpair(spectral::build_r_form(200));
    s.greater("r_min_eigenvalue_above_minus_half", r.eigenvalue, -0.5);
    auto r40 = spectral::min_eigenpair(spectral::build_r_form(40));
    double odd = 0.0;
    for (std::size_t i = 1; i < r40.eigenvector.size(); i += 2) odd = std::max(odd, std::abs(r40.eigenvector[i]));
    s.less("r_odd_components", odd, 1e-8);
  });

  s.guard("simple_state", [&] {
    auto sol = simple_state::minimize_q0();
    s.near("simple_xi_min", sol.xi, 0.318674, 1e-3);
    s.near("simple_q0_min", sol.q_value, -0.04495, 1e-5);
    s.near("simple_product", 0.25 + sol.q_value, 0.20505, 1e-5);
    s.near("q_routes_agree", sol.q_value - lambda_q, 0.0, 1e-4);
  });

  s.guard("bipartite", [&] {
    using namespace mup::bipartite;
    s.near("r_closed_0.5", r_closed(0.5), -0.27977342087192731, 1e-10);
    s.near("r_series_0.5", r_series(0.5, exec).value, r_closed(0.5), 1e-12);
    for (double xi : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      const double c = uncertainty_product(xi, ProductRoute::closed_form).product;
      const double q = uncertainty_product(xi, ProductRoute::quadrature, exec).product;
      s.near("product_routes_" + tag(xi), c - q, 0.0, 1e-6);
    }
    double prev = 0.25;
    bool window = true, monotone = true;
    for (int k = 1; k <= 19; ++k) {
      const double p = uncertainty_product(0.05 * k).product;
      window = window && p > 0.125 && p < 0.25;
      monotone = monotone && p < prev;
      prev = p;
    }
    s.exact("product_window_1/8_1/4", window);
    s.exact("product_monotone_grid", monotone);
    auto near_one = r_series(1.0 - 1e-6, exec);
    s.near("r_series_1-1e-6", near_one.value, r_closed(1.0 - 1e-6), 1e-8);
    s.less("r_closed_1-1e-8", r_closed(1.0 - 1e-8), -0.47);

    auto f3 = f_profile(0.3), f7 = f_profile(0.7);
    quad::QuadratureOptions o;
    o.feature_scale = f7->feature_scale();
    o.execution = exec;
    auto ov = quad::integrate_semi_infinite([&](double r) { return (*f3)(r) * (*f7)(r); },
                                            {f3->decay_rate() + f7->decay_rate(), f3->peak() * f7->peak()},
                                            Tolerance::absolute(1e-12), o);
    s.near("overlap_formula_vs_quadrature", overlap(0.3, 0.7), ov.value, 1e-8);
    s.near("overlap_0.3_0.7", overlap(0.3, 0.7), 0.96628835707174169, 1e-10);
    s.near("overlap_self", overlap(0.6, 0.6), 1.0, 1e-10);
    s.near("overlap_vacuum", overlap(0.6, 0.0), fock_coeff(0, 0, 0.6), 1e-10);

    auto f = f_profile(0.7);
    o.feature_scale = f->feature_scale();
    auto res = quad::integrate_semi_infinite(
        [&](double r) {
          auto d = f->weighted_derivatives(r);
          return (d[1] + 0.5 * d[0]) * (d[1] + 0.5 * d[0]);
        },
        square_envelope(*f, 1, 1.5), Tolerance::absolute(1e-12), o);
    s.near("residual_norm_sq_0.7", residual_norm_sq(0.7), res.value, 1e-7);

    s.exact("fock_selection_rules", fock_coeff(1, 0, 0.5) == 0.0 && fock_coeff(2, 1, 0.5) == 0.0 &&
                                        fock_coeff(4, 2, 0.5) == 0.0 && fock_coeff(2, 2, 0.5) > 0.0);
    s.near("fock_c00_0.5", fock_coeff(0, 0, 0.5), 0.96530222812466784, 1e-12);
    const double d = fock_normalization_defect(0.5, 200);
    s.less("fock_defect_0.5_200", d, 1e-6);
    s.greater("fock_defect_positive", d, 0.0);
    auto sc = shell_identity_check(12);
    s.exact("shell_identity_check_N<=12", sc.passed);
    bool structure = true;
    for (int N = 0; N <= 6; ++N) {
      BigInt c = central_binomial(N), den = 1;
      den <<= 4 * N;
      structure = structure && shell_structure(N) == BigRational(c * c, den);
      structure = structure && std::abs(shell_sum_numeric(N, 0.5) / shell_sum_closed(N, 0.5) - 1.0) < 1e-12;
    }
    s.exact("fock_shell_structure_N<=6", structure);
  });

  s.guard("b_coefficients", [&] {
    using namespace mup::multipartite;
    auto b1 = b_coefficients(1), b2 = b_coefficients(2), b3 = b_coefficients(3);
    if (inject_fault == "b_coefficients") b2.b[1] += BigRational(1, 1000);
    bool ok = b1.b == std::vector<BigRational>{1} && b1.prefactor == BigRational(1, 2);
    ok = ok && b2.b == std::vector<BigRational>{1, 2} && b2.prefactor == BigRational(1, 30);
    ok = ok && b3.b == std::vector<BigRational>{1, 9, BigRational(9, 2)} && b3.prefactor == BigRational(1, 560);
    // the tables must also annihilate the kernel monomials
    for (int j = 0; j < 2; ++j) {
      BigRational res = 0;
      for (int k = 1; k <= 2; ++k) res += b2.b[k - 1] * falling(BigRational(j, 2), k);
      ok = ok && res == 0;
    }
    s.exact("b_coefficients", ok);
  });

  s.guard("combinatorics", [&] {
    using namespace mup::multipartite;
    bool pascal = true;
    for (int n = 1; n <= 12; ++n) {
      auto p = pascal_matrix_pair(n);
      pascal = pascal && is_identity(multiply(p.a, p.a_inv));
    }
    s.exact("pascal_inverse_n<=12", pascal);
    bool roots = true;
    for (int n = 1; n <= 8; ++n)
      for (int j = 0; j < n; ++j) roots = roots && pochhammer_root_residual(n, j) == 0;
    s.exact("pochhammer_roots_n<=8", roots);
    for (const auto& c : alpha_beta_certificate()) {
      s.near("alpha_beta_first_" + tag(c.alpha), c.first, 0.0, 1e-10);
      s.near("alpha_beta_second_" + tag(c.alpha), c.second, 0.0, 1e-10);
    }
  });

  s.guard("four_partite", [&] {
    using namespace mup::multipartite;
    for (double xi : {0.3, 0.5, 0.7})
      for (double a : {1.5, 2.0}) {
        auto g = OdeFamilyProfile::g_family(xi, a, exec);
        const auto& n = g.norms();
        const double lhs = (1 - a) * (1 - 2 * a) * n.norm_sq + a * a * n.rprime_norm_sq;
        s.near("g_identity_" + tag(xi) + "_" + tag(a), lhs, 1.0, 1e-6);
      }
    double prev = 1.0;
    bool monotone = true;
    double last = 0.0;
    for (double xi : {0.5, 0.9, 0.99}) {
      const double z = z4_product(xi, exec).product;
      s.greater("z4_above_1/30_" + tag(xi), z, 1.0 / 30);
      monotone = monotone && z < prev;
      prev = last = z;
    }
    s.exact("z4_monotone", monotone);
    s.less("z4_below_1/16_at_0.99", last, 1.0 / 16);
  });

  s.guard("six_partite", [&] {
    using namespace mup::multipartite;
    auto h5 = OdeFamilyProfile::h_family(0.5, exec);
    s.near("h_identity_0.5", 10 * h5.norms().norm_sq + 9 * h5.norms().rprime_norm_sq, 1.0, 1e-6);
    double prev_h = 0.0, prev_z = 1.0, last = 0.0;
    bool monotone = true;
    for (double xi : {0.9, 0.99, 0.999}) {
      auto h = OdeFamilyProfile::h_family(xi, exec);
      const double nh = std::sqrt(h.norms().norm_sq);
      s.less("h_norm_below_2/7_" + tag(xi), nh, 2.0 / 7);
      const double z = functional_z(3, h, Tolerance::relative(1e-9), exec);
      s.greater("z6_above_35/4096_" + tag(xi), z, 35.0 / 4096);
      monotone = monotone && nh > prev_h && z < prev_z;
      prev_h = nh;
      prev_z = last = z;
    }
    s.exact("h_norm_and_z6_monotone", monotone);
    s.less("z6_below_1/64_at_0.999", last, 1.0 / 64);
  });

  return s.checks;
}

}  // namespace mup::cli
