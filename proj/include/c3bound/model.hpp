#pragma once

#include <vector>

namespace c3bound {

inline constexpr int kDefaultXMax = 60;

// Global knobs shared by every computation: edge density c = m/n, the mean
// degree lambda = 2c it induces, the degree truncation x_max, and the
// subspace slack epsilon.
struct ModelParams {
  double c = 0.0;
  double lambda = 0.0;  // always 2*c
  int x_max = kDefaultXMax;
  double epsilon = 0.05;

  static ModelParams make(double c, int x_max = kDefaultXMax,
                          double epsilon = 0.05);

  // Throws ParameterError unless c > 0, lambda == 2c, x_max >= 2, epsilon > 0.
  void validate() const;
};

// Truncated Poisson(lambda) weights p_0..p_{x_max} plus the fraction of the
// mean captured below the truncation.
struct PoissonProfile {
  double lambda = 0.0;
  std::vector<double> weights;
  double u_trunc = 0.0;  // lambda^{-1} * sum_{x<=x_max} x*p_x, in [0,1]

  int x_max() const { return static_cast<int>(weights.size()) - 1; }
};

// e^{-lambda} lambda^x / x!, evaluated in log space so large x stays finite.
double poisson_pmf(int x, double lambda);

PoissonProfile build_profile(const ModelParams& params);

// Large-deviation rate for seeing xi*n edge endpoints where eta*n are
// expected: min{ (xi+eta)ln(1+xi/eta) - xi, xi^2/(2 eta) }.
double large_deviation_rate(double xi, double eta);

}  // namespace c3bound
