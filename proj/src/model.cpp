#include "c3bound/model.hpp"

#include <cmath>
#include <string>

#include "c3bound/errors.hpp"

namespace c3bound {

ModelParams ModelParams::make(double c, int x_max, double epsilon) {
  ModelParams p;
  p.c = c;
  p.lambda = 2.0 * c;
  p.x_max = x_max;
  p.epsilon = epsilon;
  p.validate();
  return p;
}

void ModelParams::validate() const {
  if (!(c > 0.0) || !std::isfinite(c))
    throw ParameterError("density c must be positive, got " + std::to_string(c));
  if (lambda != 2.0 * c)
    throw ParameterError("lambda must equal 2c");
  if (x_max < 2)
    throw ParameterError("x_max must be at least 2, got " + std::to_string(x_max));
  if (!(epsilon > 0.0))
    throw ParameterError("epsilon must be positive, got " + std::to_string(epsilon));
}

double poisson_pmf(int x, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw ParameterError("poisson_pmf: lambda must be positive");
  if (x < 0) throw ParameterError("poisson_pmf: x must be non-negative");
  return std::exp(-lambda + x * std::log(lambda) - std::lgamma(x + 1.0));
}

PoissonProfile build_profile(const ModelParams& params) {
  params.validate();
  PoissonProfile prof;
  prof.lambda = params.lambda;
  prof.weights.resize(params.x_max + 1);
  for (int x = 0; x <= params.x_max; ++x)
    prof.weights[x] = poisson_pmf(x, params.lambda);

  // lambda^{-1} sum_{x<=x_max} x p_x == 1 - sum_{y>=x_max} p_y, by the
  // identity x p_x = lambda p_{x-1}. Summing the upper tail instead of the
  // bulk keeps the full double precision of the tiny deficit 1 - u.
  double tail = 0.0;
  double term = prof.weights[params.x_max];
  for (int y = params.x_max; y < params.x_max + 2000; ++y) {
    tail += term;
    term *= params.lambda / (y + 1);
    if (y + 1 > params.lambda && term < tail * 1e-22) break;
  }
  prof.u_trunc = 1.0 - tail;
  return prof;
}

double large_deviation_rate(double xi, double eta) {
  if (!(eta > 0.0)) throw ParameterError("large_deviation_rate: eta must be positive");
  if (xi < 0.0) throw ParameterError("large_deviation_rate: xi must be non-negative");
  if (xi == 0.0) return 0.0;
  const double bennett = (xi + eta) * std::log1p(xi / eta) - xi;
  const double quad = xi * xi / (2.0 * eta);
  return std::min(bennett, quad);
}

}  // namespace c3bound
