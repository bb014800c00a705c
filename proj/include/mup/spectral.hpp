#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mup::spectral {

// Truncated symmetric form sum_ij M_ij v_i v_j with bandwidth 1 or 2.
// off_diagonals[d-1][i] holds M(i, i+d).
struct BandedSymmetricForm {
  int order = 0;
  int bandwidth = 1;
  std::vector<double> diagonal;
  std::vector<std::vector<double>> off_diagonals;

  double entry(int i, int j) const;
  std::vector<double> apply(std::span<const double> v) const;
  double quadratic_value(std::span<const double> v) const;
  double norm_bound() const;  // max absolute row sum
};

struct EigenPair {
  double eigenvalue = 0.0;
  std::vector<double> eigenvector;
  double residual = 0.0;  // ||M v - lambda v||
};

class SpectralError : public std::runtime_error {
 public:
  SpectralError(const std::string& what, double best_residual)
      : std::runtime_error(what), best_residual_(best_residual) {}
  double best_residual() const { return best_residual_; }

 private:
  double best_residual_;
};

struct Tridiagonal {
  std::vector<double> diag;
  std::vector<double> off;  // size n-1
};

// Number of eigenvalues strictly below sigma.
int sturm_count(const Tridiagonal& t, double sigma);
double min_eigenvalue_bisection(const Tridiagonal& t);
EigenPair min_eigenpair(const Tridiagonal& t);

BandedSymmetricForm build_q_form(int order);
BandedSymmetricForm build_r_form(int order);
// The block of an R form restricted to even (parity 0) or odd (parity 1) indices.
Tridiagonal r_parity_block(const BandedSymmetricForm& r, int parity);

EigenPair min_eigenpair(const BandedSymmetricForm& form);

inline constexpr int kDefaultOrder = 200;

}  // namespace mup::spectral
