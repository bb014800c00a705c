#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mup {

// Absolute/relative tolerance pair; a target is met when err <= max(abs, rel*|value|).
struct Tolerance {
  double abs_tol = 0.0;
  double rel_tol = 0.0;

  Tolerance(double abs, double rel) : abs_tol(abs), rel_tol(rel) {
    if (!(abs_tol >= 0.0) || !(rel_tol >= 0.0) || !(abs_tol > 0.0 || rel_tol > 0.0))
      throw std::invalid_argument("tolerance: need abs_tol >= 0, rel_tol >= 0, one of them > 0");
  }
  static Tolerance absolute(double a) { return {a, 0.0}; }
  static Tolerance relative(double r) { return {0.0, r}; }

  double bound(double value) const { return std::max(abs_tol, rel_tol * std::abs(value)); }
  Tolerance scaled(double s) const { return {abs_tol * s, rel_tol * s}; }
};

// Interpolation parameter of the squeezed-state family, open interval (0, 1).
class XiParameter {
 public:
  explicit XiParameter(double v) : v_(v) {
    if (!(v > 0.0 && v < 1.0)) throw std::domain_error("xi must lie in the open interval (0, 1)");
  }
  double value() const { return v_; }
  operator double() const { return v_; }

 private:
  double v_;
};

}  // namespace mup
