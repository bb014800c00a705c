#pragma once

#include <utility>
#include <vector>

#include "mup/common.hpp"

namespace mup {

// Finite coefficient sequence with its truncation metadata.
struct CoefficientSequence {
  std::vector<double> values;
  int truncation_order = 0;   // number of stored terms
  double tail_bound = 0.0;    // bound on the omitted sum of squares
  double norm_sq = 0.0;       // sum of squares of the stored terms
};

}  // namespace mup

namespace mup::simple_state {

struct SimpleStateSolution {
  double xi = 0.0;
  double phi = 0.0;
  double q_value = 0.0;
  CoefficientSequence coefficients;
};

std::pair<double, double> c1_c2(double xi);
// Ansatz form Q(xi, phi) = -C1 sin 2phi + C2 (1 - cos 2phi).
double q_of(double xi, double phi);
double q0(double xi);
// Minimizing angle, branch 2phi in (0, pi).
double optimal_phi(double xi);
CoefficientSequence reconstruct_coefficients(double xi, double phi);
SimpleStateSolution minimize_q0();

// Golden-section bracket and tolerance used by minimize_q0.
inline constexpr double kBracketLo = 0.05;
inline constexpr double kBracketHi = 0.9;
inline constexpr double kXiTol = 1e-8;

}  // namespace mup::simple_state
