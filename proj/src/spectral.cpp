#include "mup/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mup::spectral {

double BandedSymmetricForm::entry(int i, int j) const {
  if (i < 0 || j < 0 || i >= order || j >= order) throw std::out_of_range("BandedSymmetricForm::entry");
  if (i == j) return diagonal[i];
  const int d = std::abs(i - j);
  if (d > bandwidth) return 0.0;
  return off_diagonals[d - 1][std::min(i, j)];
}

std::vector<double> BandedSymmetricForm::apply(std::span<const double> v) const {
  if (static_cast<int>(v.size()) != order) throw std::invalid_argument("BandedSymmetricForm::apply: size mismatch");
  std::vector<double> out(order);
  for (int i = 0; i < order; ++i) out[i] = diagonal[i] * v[i];
  for (int d = 1; d <= bandwidth; ++d) {
    const auto& od = off_diagonals[d - 1];
    for (int i = 0; i + d < order; ++i) {
      out[i] += od[i] * v[i + d];
      out[i + d] += od[i] * v[i];
    }
  }
  return out;
}

double BandedSymmetricForm::quadratic_value(std::span<const double> v) const {
  auto mv = apply(v);
  double s = 0.0;
  for (int i = 0; i < order; ++i) s += v[i] * mv[i];
  return s;
}

double BandedSymmetricForm::norm_bound() const {
  double best = 0.0;
  for (int i = 0; i < order; ++i) {
    double row = std::abs(diagonal[i]);
    for (int d = 1; d <= bandwidth; ++d) {
      if (i + d < order) row += std::abs(off_diagonals[d - 1][i]);
      if (i - d >= 0) row += std::abs(off_diagonals[d - 1][i - d]);
    }
    best = std::max(best, row);
  }
  return best;
}

BandedSymmetricForm build_q_form(int order) {
  if (order < 2) throw std::invalid_argument("build_q_form: order must be >= 2");
  BandedSymmetricForm f;
  f.order = order;
  f.bandwidth = 1;
  f.diagonal.resize(order);
  f.off_diagonals.assign(1, std::vector<double>(order - 1));
  for (int n = 0; n < order; ++n) f.diagonal[n] = 2.0 * n * (2.0 * n + 1);
  // -(2)(n+1)(2n+1) c_n c_{n+1} split evenly over (n, n+1) and (n+1, n)
  for (int n = 0; n + 1 < order; ++n) f.off_diagonals[0][n] = -(n + 1.0) * (2.0 * n + 1) / 2;
  return f;
}

BandedSymmetricForm build_r_form(int order) {
  if (order < 3) throw std::invalid_argument("build_r_form: order must be >= 3");
  BandedSymmetricForm f;
  f.order = order;
  f.bandwidth = 2;
  f.diagonal.resize(order);
  f.off_diagonals.assign(2, {});
  f.off_diagonals[0].assign(order - 1, 0.0);
  f.off_diagonals[1].resize(order - 2);
  for (int n = 0; n < order; ++n) f.diagonal[n] = double(n) * (n + 1);
  for (int n = 0; n + 2 < order; ++n) f.off_diagonals[1][n] = -(n + 1.0) * (n + 2) / 2;
  return f;
}

Tridiagonal r_parity_block(const BandedSymmetricForm& r, int parity) {
  if (r.bandwidth != 2) throw std::invalid_argument("r_parity_block: need bandwidth 2");
  Tridiagonal t;
  for (int i = parity; i < r.order; i += 2) {
    t.diag.push_back(r.diagonal[i]);
    if (i + 2 < r.order) t.off.push_back(r.off_diagonals[1][i]);
  }
  return t;
}

int sturm_count(const Tridiagonal& t, double sigma) {
  const std::size_t n = t.diag.size();
  const double tiny = std::numeric_limits<double>::min();
  int count = 0;
  double q = t.diag[0] - sigma;
  for (std::size_t i = 0;; ++i) {
    if (q == 0.0) q = -tiny;
    if (q < 0.0) ++count;
    if (i + 1 == n) break;
    q = t.diag[i + 1] - sigma - t.off[i] * t.off[i] / q;
  }
  return count;
}

double min_eigenvalue_bisection(const Tridiagonal& t) {
  const std::size_t n = t.diag.size();
  if (n == 0) throw std::invalid_argument("min_eigenvalue_bisection: empty matrix");
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (std::size_t i = 0; i < n; ++i) {
    double rad = (i > 0 ? std::abs(t.off[i - 1]) : 0.0) + (i + 1 < n ? std::abs(t.off[i]) : 0.0);
    lo = std::min(lo, t.diag[i] - rad);
    hi = std::max(hi, t.diag[i] + rad);
  }
  hi = std::min(hi, *std::min_element(t.diag.begin(), t.diag.end()));  // Rayleigh bound
  lo -= 1e-12 * (std::abs(lo) + 1);
  hi += 1e-12 * (std::abs(hi) + 1);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    if (sturm_count(t, mid) >= 1)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

namespace {

double tri_norm(const Tridiagonal& t) {
  const std::size_t n = t.diag.size();
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = std::abs(t.diag[i]);
    if (i > 0) row += std::abs(t.off[i - 1]);
    if (i + 1 < n) row += std::abs(t.off[i]);
    best = std::max(best, row);
  }
  return best;
}

double tri_residual(const Tridiagonal& t, const std::vector<double>& v, double lambda) {
  const std::size_t n = v.size();
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double r = (t.diag[i] - lambda) * v[i];
    if (i > 0) r += t.off[i - 1] * v[i - 1];
    if (i + 1 < n) r += t.off[i] * v[i + 1];
    s += r * r;
  }
  return std::sqrt(s);
}

void fix_sign(std::vector<double>& v) {
  for (double x : v) {
    if (x == 0.0) continue;
    if (x < 0.0)
      for (double& y : v) y = -y;
    return;
  }
}

}  // namespace

EigenPair min_eigenpair(const Tridiagonal& t) {
  const std::size_t n = t.diag.size();
  const double lambda = min_eigenvalue_bisection(t);
  const double norm = std::max(tri_norm(t), 1.0);
  // Shift just below lambda: T - sigma is positive definite, so the
  // unpivoted tridiagonal solve is stable.
  const double sigma = lambda - 1e-9 * norm;
  std::vector<double> v(n, 1.0 / std::sqrt(double(n))), c(n), d(n);
  double res = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 8; ++it) {
    // forward elimination
    double piv = t.diag[0] - sigma;
    c[0] = n > 1 ? t.off[0] / piv : 0.0;
    d[0] = v[0] / piv;
    for (std::size_t i = 1; i < n; ++i) {
      piv = t.diag[i] - sigma - t.off[i - 1] * c[i - 1];
      if (i + 1 < n) c[i] = t.off[i] / piv;
      d[i] = (v[i] - t.off[i - 1] * d[i - 1]) / piv;
    }
    v[n - 1] = d[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) v[i] = d[i] - c[i] * v[i + 1];
    double nrm = 0.0;
    for (double x : v) nrm += x * x;
    nrm = std::sqrt(nrm);
    for (double& x : v) x /= nrm;
    res = tri_residual(t, v, lambda);
    if (res <= 1e-12 * norm && it >= 1) break;
  }
  fix_sign(v);
  if (!(res <= 1e-8 * norm)) throw SpectralError("min_eigenpair: inverse iteration did not converge", res);
  return {lambda, v, res};
}

EigenPair min_eigenpair(const BandedSymmetricForm& form) {
  if (form.order < 2) throw std::invalid_argument("min_eigenpair: order must be >= 2");
  if (form.bandwidth == 1) {
    Tridiagonal t{form.diagonal, form.off_diagonals[0]};
    return min_eigenpair(t);
  }
  if (form.bandwidth != 2) throw std::invalid_argument("min_eigenpair: bandwidth must be 1 or 2");
  for (double x : form.off_diagonals[0])
    if (x != 0.0) throw std::invalid_argument("min_eigenpair: bandwidth-2 forms must decouple by parity");
  // (n, n+2) couplings only: even and odd indices form independent tridiagonal blocks
  EigenPair best;
  int best_parity = -1;
  for (int parity = 0; parity < 2 && parity < form.order; ++parity) {
    auto block = r_parity_block(form, parity);
    auto ep = min_eigenpair(block);
    if (best_parity < 0 || ep.eigenvalue < best.eigenvalue) {
      best = ep;
      best_parity = parity;
    }
  }
  std::vector<double> full(form.order, 0.0);
  for (std::size_t k = 0; k < best.eigenvector.size(); ++k) full[best_parity + 2 * k] = best.eigenvector[k];
  EigenPair out{best.eigenvalue, full, 0.0};
  auto mv = form.apply(full);
  double s = 0.0;
  for (int i = 0; i < form.order; ++i) s += (mv[i] - out.eigenvalue * full[i]) * (mv[i] - out.eigenvalue * full[i]);
  out.residual = std::sqrt(s);
  if (!(out.residual <= 1e-8 * form.norm_bound()))
    throw SpectralError("min_eigenpair: residual bound violated", out.residual);
  return out;
}

}  // namespace mup::spectral
