#include "c3bound/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "c3bound/errors.hpp"

namespace c3bound {

namespace {

constexpr double kCrossCheckTol = 1e-9;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

struct Evaluator {
  const ModelParams& params;
  const PoissonProfile& profile;
  double total;

  RotatedResidual operator()(double y0, double y1) const {
    return rotated_residual(RotatedPoint{y0, y1}, params, profile, total);
  }
};

// Bisection for the strictly decreasing y1 |-> K1(y0, y1), run until the
// midpoint stops moving. Empty optional: no sign change on the interval.
std::optional<double> try_inner_root(const Evaluator& ev, double y0,
                                     double margin) {
  const YRange r = y1_range(y0);
  if (r.empty()) return std::nullopt;
  double a = r.lo + margin;
  double b = r.hi - margin;
  if (!(a < b)) return std::nullopt;
  double ka = ev(y0, a).k1;
  if (ka == 0.0) return a;
  double kb = ev(y0, b).k1;
  if (kb == 0.0) return b;
  if (!(ka > 0.0 && kb < 0.0)) return std::nullopt;
  for (;;) {
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) break;
    const double km = ev(y0, mid).k1;
    if (km > 0.0)
      a = mid;
    else if (km < 0.0)
      b = mid;
    else
      return mid;
  }
  return 0.5 * (a + b);
}

PhiSolution finish(const Evaluator& ev, double y0, double y1) {
  const SpreadVector phi = phi_of(RotatedPoint{y0, y1}, ev.total);
  const Residual e =
      system_residual(phi.phi0, phi.phi1, ev.params, ev.profile, ev.total);
  PhiSolution sol;
  sol.phi = phi;
  sol.residual_norm = std::max(std::abs(e.e0), std::abs(e.e1));
  sol.c = ev.params.c;
  return sol;
}

// Outer bisection over y0 on g(y0) = K0(y0, y1*(y0)), which is strictly
// increasing along the inner-root path. The bracket comes from a coarse
// scan because the inner root does not exist over the whole y0 range for
// every density.
PhiSolution nested_solve(const Evaluator& ev, const SolverConfig& config,
                         double margin) {
  const YBox box = admissible_y_box(ev.total);
  const double a = box.y0_lo + margin;
  const double b = box.y0_hi - margin;
  if (!(a < b))
    throw BracketError("admissible y0 interval is empty for total spread " +
                       fmt(ev.total));

  struct ScanPoint {
    double y0, y1, g;
  };
  std::vector<ScanPoint> pts;
  const int n = std::max(5, config.scan_points);
  for (int i = 0; i < n; ++i) {
    const double y0 = a + (b - a) * i / (n - 1);
    if (const auto y1 = try_inner_root(ev, y0, margin))
      pts.push_back({y0, *y1, ev(y0, *y1).k0});
  }
  if (pts.size() < 2)
    throw BracketError("inner root exists at fewer than two scanned y0 points");

  int cross = -1;
  int crossings = 0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    if (pts[i].g < 0.0 && pts[i + 1].g >= 0.0) {
      cross = static_cast<int>(i);
      ++crossings;
    } else if (pts[i].g >= 0.0 && pts[i + 1].g < 0.0) {
      throw MonotonicityError("outer function decreases across y0 = " +
                              fmt(pts[i].y0) + " .. " + fmt(pts[i + 1].y0));
    }
  }
  if (crossings == 0)
    throw BracketError("outer function has no sign change on y0 in [" + fmt(a) +
                       ", " + fmt(b) + "]; endpoints g = " + fmt(pts.front().g) +
                       ", " + fmt(pts.back().g));
  if (crossings > 1)
    throw MonotonicityError("outer function changes sign more than once across "
                            "the scanned y0 range");

  double lo = pts[cross].y0;
  double hi = pts[cross + 1].y0;
  double y1_at = pts[cross + 1].y1;
  int iters = 0;
  for (;;) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const auto y1 = try_inner_root(ev, mid, margin);
    if (!y1)
      throw BracketError("inner root lost during outer bisection at y0 = " +
                         fmt(mid));
    ++iters;
    if (ev(mid, *y1).k0 < 0.0) {
      lo = mid;
    } else {
      hi = mid;
      y1_at = *y1;
    }
  }
  PhiSolution sol = finish(ev, hi, y1_at);
  sol.iterations = iters;
  return sol;
}

// One-dimensional solve of an increasing function on [lo, hi] with endpoint
// clamping: if the sign never changes the nearest endpoint is the best the
// slice can do and the next sweep moves on from there.
template <class F>
double clamped_root(F f, double lo, double hi) {
  double flo = f(lo);
  if (flo >= 0.0) return lo;
  double fhi = f(hi);
  if (fhi <= 0.0) return hi;
  for (;;) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm < 0.0)
      lo = mid;
    else if (fm > 0.0)
      hi = mid;
    else
      return mid;
  }
  return 0.5 * (lo + hi);
}

// Alternating sweeps: solve the first residual in phi0 with phi1 frozen,
// then the second in phi1 with phi0 frozen, spiralling into the fixed point.
PhiSolution spiral_solve(const Evaluator& ev, const SolverConfig& config,
                         bool start_high) {
  const double margin = config.bracket_margin;
  const double corner =
      start_high ? kPhiMax - margin : kPhiMin + margin;
  double p0 = corner, p1 = corner;

  const auto slice = [&](double other) {
    // range of the free coordinate keeping itself and phi2 in the box
    const double lo = std::max(kPhiMin, ev.total - other - kPhiMax) + margin;
    const double hi = std::min(kPhiMax, ev.total - other - kPhiMin) - margin;
    return std::pair<double, double>{lo, hi};
  };

  PhiSolution best;
  best.residual_norm = std::numeric_limits<double>::infinity();
  for (int sweep = 1; sweep <= config.max_outer_iters; ++sweep) {
    auto [lo0, hi0] = slice(p1);
    if (!(lo0 < hi0))
      throw BracketError("empty phi0 slice at phi1 = " + fmt(p1));
    p0 = clamped_root(
        [&](double v) {
          return system_residual(v, p1, ev.params, ev.profile, ev.total).e0;
        },
        lo0, hi0);
    auto [lo1, hi1] = slice(p0);
    if (!(lo1 < hi1))
      throw BracketError("empty phi1 slice at phi0 = " + fmt(p0));
    p1 = clamped_root(
        [&](double v) {
          return system_residual(p0, v, ev.params, ev.profile, ev.total).e1;
        },
        lo1, hi1);

    const Residual e = system_residual(p0, p1, ev.params, ev.profile, ev.total);
    const double norm = std::max(std::abs(e.e0), std::abs(e.e1));
    if (norm < best.residual_norm) {
      best.phi = SpreadVector::from_free(p0, p1, ev.total);
      best.residual_norm = norm;
      best.iterations = sweep;
      best.c = ev.params.c;
    }
    if (norm <= config.tol_residual) return best;
  }
  throw ConvergenceError(
      "spiral sweeps exhausted with residual " + fmt(best.residual_norm),
      best.phi.phi0, best.phi.phi1, best.residual_norm);
}

}  // namespace

YBox admissible_y_box(double total) {
  return YBox{std::max(kPhiMin, 0.5 * (total - kPhiMax)),
              std::min(kPhiMax, 0.5 * (total - kPhiMin))};
}

YRange y1_range(double y0) {
  return YRange{std::max(kPhiMin - y0, y0 - kPhiMax),
                std::min(kPhiMax - y0, y0 - kPhiMin)};
}

void verify_monotone_pattern(const ModelParams& params,
                             const PoissonProfile& profile, double total,
                             int grid, double step, double floor) {
  if (grid < 2) throw ParameterError("verify_monotone_pattern: grid too small");
  if (!(step > 0.0)) throw ParameterError("verify_monotone_pattern: bad step");
  const Evaluator ev{params, profile, total};
  const YBox box = admissible_y_box(total);
  for (int i = 0; i < grid; ++i) {
    const double f0 = (i + 1.0) / (grid + 1.0);
    const double y0 = box.y0_lo + f0 * (box.y0_hi - box.y0_lo);
    const YRange r = y1_range(y0);
    for (int j = 0; j < grid; ++j) {
      const double f1 = (j + 1.0) / (grid + 1.0);
      const double y1 = r.lo + f1 * (r.hi - r.lo);
      const RotatedResidual xp = ev(y0 + step, y1);
      const RotatedResidual xm = ev(y0 - step, y1);
      const RotatedResidual yp = ev(y0, y1 + step);
      const RotatedResidual ym = ev(y0, y1 - step);
      const double d00 = (xp.k0 - xm.k0) / (2.0 * step);
      const double d01 = (yp.k0 - ym.k0) / (2.0 * step);
      const double d10 = (xp.k1 - xm.k1) / (2.0 * step);
      const double d11 = (yp.k1 - ym.k1) / (2.0 * step);
      if (!(d00 > floor) || !(d01 > floor) || !(d10 > floor) ||
          !(d11 < -floor)) {
        throw MonotonicityError(
            "sign pattern failed at c = " + fmt(params.c) + ", y0 = " +
            fmt(y0) + ", y1 = " + fmt(y1) + ": dK0 = (" + fmt(d00) + ", " +
            fmt(d01) + "), dK1 = (" + fmt(d10) + ", " + fmt(d11) + ")");
      }
    }
  }
}

double inner_root_y1(double y0, const ModelParams& params,
                     const PoissonProfile& profile, double total, double tol,
                     double margin) {
  if (!(tol > 0.0)) throw ParameterError("inner_root_y1: tolerance must be positive");
  const Evaluator ev{params, profile, total};
  const auto y1 = try_inner_root(ev, y0, margin);
  if (!y1)
    throw BracketError("K1 does not change sign on the admissible y1 interval "
                       "at y0 = " + fmt(y0));
  const double k1 = ev(y0, *y1).k1;
  if (!(std::abs(k1) <= tol)) {
    const SpreadVector phi = phi_of(RotatedPoint{y0, *y1}, total);
    throw ConvergenceError("inner bisection exhausted with |K1| = " +
                               fmt(std::abs(k1)),
                           phi.phi0, phi.phi1, std::abs(k1));
  }
  return *y1;
}

PhiSolution solve_system(const ModelParams& params, const SolverConfig& config) {
  params.validate();
  if (!(config.tol_residual > 0.0))
    throw ParameterError("solve_system: tol_residual must be positive");
  if (config.max_outer_iters < 1)
    throw ParameterError("solve_system: max_outer_iters must be positive");
  if (!(config.bracket_margin > 0.0) || config.bracket_margin >= 1e-2)
    throw ParameterError("solve_system: bracket_margin out of range");

  const PoissonProfile profile = build_profile(params);
  const double total = config.unit_total_spread ? 1.0 : profile.u_trunc;
  const Evaluator ev{params, profile, total};

  if (config.verify_monotonicity)
    verify_monotone_pattern(params, profile, total);

  PhiSolution sol;
  if (config.scheme == SolveScheme::nested_bisection) {
    sol = nested_solve(ev, config, config.bracket_margin);
    if (sol.residual_norm > config.tol_residual)
      throw ConvergenceError("nested bisection exhausted with residual " +
                                 fmt(sol.residual_norm),
                             sol.phi.phi0, sol.phi.phi1, sol.residual_norm);
    if (config.cross_check) {
      // Different inset margin: a genuinely different floating-point path
      // through the scan and both bisections.
      const PhiSolution alt = nested_solve(ev, config, 2.0 * config.bracket_margin);
      for (int i = 0; i < 3; ++i) {
        if (!(std::abs(sol.phi[i] - alt.phi[i]) < kCrossCheckTol))
          throw ConvergenceError(
              "cross-check disagreement in phi" + std::to_string(i) + ": " +
                  fmt(sol.phi[i]) + " vs " + fmt(alt.phi[i]),
              sol.phi.phi0, sol.phi.phi1, sol.residual_norm);
      }
    }
  } else {
    sol = spiral_solve(ev, config, /*start_high=*/false);
    if (config.cross_check) {
      const PhiSolution alt = spiral_solve(ev, config, /*start_high=*/true);
      for (int i = 0; i < 3; ++i) {
        if (!(std::abs(sol.phi[i] - alt.phi[i]) < kCrossCheckTol))
          throw ConvergenceError(
              "corner cross-check disagreement in phi" + std::to_string(i) +
                  ": " + fmt(sol.phi[i]) + " vs " + fmt(alt.phi[i]),
              sol.phi.phi0, sol.phi.phi1, sol.residual_norm);
      }
    }
  }
  return sol;
}

}  // namespace c3bound
