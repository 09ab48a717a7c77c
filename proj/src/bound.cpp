#include "c3bound/bound.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "c3bound/errors.hpp"

namespace c3bound {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

double log_bound(const SpreadVector& phi, const ModelParams& params,
                 const PoissonProfile& profile) {
  params.validate();
  double s = 0.0;
  for (int x = 0; x <= profile.x_max(); ++x)
    s += profile.weights[x] * std::log(type_normalizer(x, phi));
  s -= params.c * std::log(2.0);
  for (int i = 0; i < 3; ++i) {
    const double e_direct = (1.0 - 4.0 * phi[i]) * params.c;
    const double e_split = (1.0 - 2.0 * phi[i]) * params.c - params.lambda * phi[i];
    // Two ways of writing the same exponent; they only coincide when
    // lambda == 2c, so this doubles as a consistency check at the use site.
    if (!(std::abs(e_direct - e_split) <= 1e-14 * std::max(1.0, std::abs(e_direct))))
      throw ParameterError("exponent forms disagree: " + fmt(e_direct) + " vs " +
                           fmt(e_split));
    s += e_direct * std::log1p(-2.0 * phi[i]);
  }
  return s;
}

BoundReport bound_per_vertex(const ModelParams& params, const PhiSolution& sol) {
  params.validate();
  if (sol.c != params.c)
    throw ParameterError("solution was computed for c = " + fmt(sol.c) +
                         ", bound requested at c = " + fmt(params.c));
  const PoissonProfile profile = build_profile(params);
  BoundReport rep;
  rep.c = params.c;
  rep.phi = sol.phi;
  rep.log_f = log_bound(sol.phi, params, profile);
  rep.f_value = std::exp(rep.log_f);
  rep.x_max = params.x_max;
  return rep;
}

BoundReport bound_at(double c, int x_max, const SolverConfig& config) {
  const ModelParams params = ModelParams::make(c, x_max);
  return bound_per_vertex(params, solve_system(params, config));
}

ThresholdResult threshold_search(int x_max, double tol_c) {
  if (!(tol_c > 0.0)) throw ParameterError("threshold_search: tol_c must be positive");
  if (x_max < 2) throw ParameterError("threshold_search: x_max must be at least 2");

  const auto f_at = [&](double c) { return bound_at(c, x_max).f_value; };

  double lo = 2.40;
  double hi = 2.50;
  double f_lo = f_at(lo);
  if (f_lo <= 1.0) {
    // One widening step before giving up.
    lo = 2.30;
    f_lo = f_at(lo);
    if (f_lo <= 1.0)
      throw BracketError("growth rate already below 1 at c = 2.30: F(2.30) = " +
                         fmt(f_lo));
  }
  const double f_hi = f_at(hi);
  if (f_hi >= 1.0)
    throw BracketError("growth rate not below 1 at c = 2.50: F(2.40) = " +
                       fmt(f_lo) + ", F(2.50) = " + fmt(f_hi));

  // Invariant: F(lo) >= 1 > F(hi).
  int iters = 0;
  while (hi - lo > tol_c) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    ++iters;
    if (f_at(mid) >= 1.0)
      lo = mid;
    else
      hi = mid;
  }
  return ThresholdResult{0.5 * (lo + hi), lo, hi, iters};
}

std::vector<BoundReport> scan(double c_lo, double c_hi, int steps, int x_max) {
  if (!(c_lo >= 2.40) || !(c_hi <= 2.50) || !(c_lo < c_hi))
    throw ParameterError("scan: need 2.40 <= c_lo < c_hi <= 2.50");
  if (steps < 2) throw ParameterError("scan: need at least 2 steps");
  std::vector<BoundReport> out;
  out.reserve(steps);
  for (int i = 0; i < steps; ++i) {
    const double c = i == steps - 1
                         ? c_hi
                         : c_lo + (c_hi - c_lo) * i / (steps - 1);
    try {
      out.push_back(bound_at(c, x_max));
    } catch (const Error& e) {
      throw Error(e.code(), "scan failed at c = " + fmt(c) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace c3bound
