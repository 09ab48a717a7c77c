#pragma once

#include <vector>

#include "c3bound/model.hpp"
#include "c3bound/solver.hpp"
#include "c3bound/spread.hpp"

namespace c3bound {

// First-moment growth rate F(c) = f_value per vertex; the graph family is
// asymptotically non-colourable wherever f_value < 1.
struct BoundReport {
  double c = 0.0;
  SpreadVector phi;
  double f_value = 0.0;
  double log_f = 0.0;
  int x_max = 0;
};

// log F at an explicit spread vector:
//   sum_x p_x log B(x, phi) - c log 2 + c sum_i (1-4 phi_i) log(1-2 phi_i).
// The exponent is also formed as (1-2 phi_i)c - lambda*phi_i and the two
// must agree to 1e-14, which pins lambda == 2c at the use site.
double log_bound(const SpreadVector& phi, const ModelParams& params,
                 const PoissonProfile& profile);

// Evaluate the bound at a solved stationary point. The solution must have
// been produced for the same density.
BoundReport bound_per_vertex(const ModelParams& params, const PhiSolution& sol);

// Convenience: solve then evaluate.
BoundReport bound_at(double c, int x_max = kDefaultXMax,
                     const SolverConfig& config = {});

struct ThresholdResult {
  double c_star = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  int iterations = 0;
};

// Bisection for the density where F crosses 1. Starts from [2.40, 2.50];
// if F(2.40) <= 1 the bracket widens once to 2.30 before giving up.
ThresholdResult threshold_search(int x_max, double tol_c);

// Fresh solve + bound at each of `steps` equally spaced densities in
// [c_lo, c_hi] (both inside [2.40, 2.50]).
std::vector<BoundReport> scan(double c_lo, double c_hi, int steps, int x_max);

}  // namespace c3bound
