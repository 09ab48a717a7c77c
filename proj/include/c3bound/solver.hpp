#pragma once

#include "c3bound/model.hpp"
#include "c3bound/spread.hpp"

namespace c3bound {

enum class SolveScheme {
  nested_bisection,  // outer bisection in y0 over the inner root y1*(y0)
  spiral,            // alternating one-dimensional solves in phi0 and phi1
};

struct SolverConfig {
  double tol_residual = 1e-13;
  int max_outer_iters = 200;
  SolveScheme scheme = SolveScheme::nested_bisection;
  bool unit_total_spread = false;  // replace u_trunc by 1 in the budget
  bool verify_monotonicity = true;
  bool cross_check = true;  // re-solve along a different path, agree to 1e-9
  double bracket_margin = 1e-7;  // inset from the open admissible box
  int scan_points = 33;          // coarse grid that locates the outer bracket
};

struct PhiSolution {
  SpreadVector phi;
  double residual_norm = 0.0;  // max(|E0|, |E1|) at phi
  int iterations = 0;
  double c = 0.0;
};

// Range of y0 for which some y1 keeps all three coordinates inside the box.
struct YBox {
  double y0_lo = 0.0;
  double y0_hi = 0.0;
};
YBox admissible_y_box(double total);
// y1 interval for a given y0; empty means y0 itself is infeasible.
struct YRange {
  double lo = 0.0;
  double hi = 0.0;
  bool empty() const { return !(lo < hi); }
};
YRange y1_range(double y0);

// Finite-difference check of the rotated system's sign pattern
// (dK0/dy0 > 0, dK0/dy1 > 0, dK1/dy0 > 0, dK1/dy1 < 0) on a grid x grid
// lattice inside the admissible box. Throws MonotonicityError naming the
// first offending point; also rejects derivative magnitudes below floor.
void verify_monotone_pattern(const ModelParams& params,
                             const PoissonProfile& profile, double total,
                             int grid = 5, double step = 1e-6,
                             double floor = 1e-8);

// Root of the strictly decreasing y1 |-> K1(y0, y1) by bisection, run to
// floating-point exhaustion. Throws BracketError when K1 does not change
// sign on the admissible y1 interval, ConvergenceError when the exhausted
// bisection still leaves |K1| above tol.
double inner_root_y1(double y0, const ModelParams& params,
                     const PoissonProfile& profile, double total, double tol,
                     double margin = 1e-7);

PhiSolution solve_system(const ModelParams& params,
                         const SolverConfig& config = {});

}  // namespace c3bound
