#pragma once

#include <memory>
#include <optional>

#include "mup/parallel.hpp"
#include "mup/profile.hpp"
#include "mup/specfun.hpp"

namespace mup::bipartite {

// c_n = (2n-1)!!/(2n)!! xi^n c_0, c_0 = sqrt(pi / (2 K(xi)))
double coeff(int n, double xi);

// R(xi) = -1/(1+xi) + E/((1+xi)^2 K)
double r_closed(double xi);

// Independent route: R = sum c_n^2 [2n(2n+1) - xi(2n+1)^2] / sum c_n^2, with the
// c_n generated by their recurrence; K never enters. Summed in the equivalent
// positive-term form -1/2 + (1-xi)^2 sum (2n+1)^2 c_n^2 / (2 sum c_n^2). The serial path is a plain
// compensated recurrence; the parallel path restarts each chunk from an
// asymptotic Gamma ratio and reduces chunk partials in order.
struct SeriesResult {
  double value = 0.0;
  long long terms = 0;
  double norm_sum = 0.0;  // sum u_n^2 = c_0^{-2}
};
SeriesResult r_series(double xi, Execution exec = Execution::parallel);

UncertaintyReport uncertainty_product(double xi, ProductRoute route = ProductRoute::closed_form,
                                      Execution exec = Execution::parallel);

// ||r f' + f/2||^2
double residual_norm_sq(double xi);

// Closed form A I0(beta r) e^{-delta r} evaluated as A i0e(beta r) e^{-lambda r},
// or the flattened angular integral of e^{-x}.
std::unique_ptr<RadialProfile> f_profile(double xi, ProfileRoute route = ProfileRoute::closed_form);
// right derivative at r = 0
double f_prime_at_origin(double xi);

double wavefunction(double x, double y, double xi);

// <Psi_xi | Psi_xi'>; either argument may be 0 (vacuum).
double overlap(double xi, double xi_prime);

bool fock_selected(int n, int m);
double fock_coeff(int n, int m, double xi);
// 1 - sum_{n+m <= max_total} c_nm^2 in 50-digit arithmetic.
double fock_normalization_defect(double xi, int max_total);

// S_N from the two convolution sums over (n, m) classes.
specfun::BigInt shell_sum(int N);
struct ShellCheck {
  bool passed = true;
  std::optional<int> failed_at;
};
ShellCheck shell_identity_check(int N_max);
// Primed shell sum of squared Fock coefficients with the pi/(2K) and xi
// factors stripped: sum_{n+m=4N} binom(n,n/2) binom(m,m/2) binom(2N,N)^2 / 256^N.
specfun::BigRational shell_structure(int N);
// Same sum computed from fock_coeff at a given xi, and the closed shell value.
double shell_sum_numeric(int N, double xi);
double shell_sum_closed(int N, double xi);

}  // namespace mup::bipartite
