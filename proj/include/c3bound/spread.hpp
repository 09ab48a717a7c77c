#pragma once

#include <array>
#include <vector>

#include "c3bound/model.hpp"

namespace c3bound {

// Admissible box for each spread coordinate in solver context. Open on both
// sides: every evaluation stays strictly inside.
inline constexpr double kPhiMin = 0.26;
inline constexpr double kPhiMax = 0.4;

// Fractions of edge endpoints adjacent to the three vertex types. Each
// coordinate must stay below 1/2 for the pattern weights to make sense; in
// solver context all three live in (kPhiMin, kPhiMax).
struct SpreadVector {
  double phi0 = 0.0;
  double phi1 = 0.0;
  double phi2 = 0.0;

  // phi2 is eliminated through the total spread budget.
  static SpreadVector from_free(double phi0, double phi1, double total);

  double operator[](int i) const;
};

bool admissible(const SpreadVector& phi);
void require_admissible(const SpreadVector& phi);  // throws DomainError

// Rotated solver coordinates: phi0 = y0 + y1, phi1 = y0 - y1.
struct RotatedPoint {
  double y0 = 0.0;
  double y1 = 0.0;
};

SpreadVector phi_of(const RotatedPoint& y, double total);
RotatedPoint rotate(double phi0, double phi1);

// Number of admissible neighbour-type patterns around a degree-x vertex of
// the given type: 2^x - 2 for type 0 (clamped at 0), 2^x - 1 for type 1,
// 2^x for type 2.
double pattern_count(int x, int type);
// Log of the same; -inf where the count is zero, so the weight drops out of
// log-sum-exp accumulations exactly.
double log_pattern_count(int x, int type);

// Normalizer B(x, phi) = sum_i N_i(x) (1-2 phi_i)^x and the derived type
// fractions alpha and slot occupancies mu. All are evaluated in log space.
double type_normalizer(int x, const SpreadVector& phi);
double type_fraction(int x, int type, const SpreadVector& phi);
double occupancy(int x, int j, int type, const SpreadVector& phi);

// Dense table of alpha and mu over all degrees 0..x_max.
class OccupancyProfile {
 public:
  OccupancyProfile(int x_max, std::vector<std::array<double, 3>> alpha,
                   std::vector<std::array<double, 3>> mu);

  int x_max() const { return x_max_; }
  const std::array<double, 3>& alpha(int x) const;
  // Fraction of degree-x, type-i vertices with j endpoints on the
  // complementary pair of types.
  double mu(int x, int j, int type) const;

 private:
  int x_max_;
  std::vector<std::array<double, 3>> alpha_;  // per degree
  std::vector<std::array<double, 3>> mu_;     // triangular layout, row x at x(x+1)/2
};

OccupancyProfile build_occupancy_profile(const SpreadVector& phi,
                                         const ModelParams& params);

// Residuals of the stationarity system in the free coordinates (phi0, phi1):
//   E_i = lambda*phi_i - sum_{x>=1} x p_x N_i(x) (1-2 phi_i)^x / B(x, phi).
struct Residual {
  double e0 = 0.0;
  double e1 = 0.0;
};

// Same pair viewed through the rotation; identical values, different axes.
struct RotatedResidual {
  double k0 = 0.0;
  double k1 = 0.0;
};

Residual system_residual(double phi0, double phi1, const ModelParams& params,
                         const PoissonProfile& profile, double total);
Residual system_residual(double phi0, double phi1, const ModelParams& params,
                         const PoissonProfile& profile);  // total = u_trunc

RotatedResidual rotated_residual(const RotatedPoint& y, const ModelParams& params,
                                 const PoissonProfile& profile, double total);
RotatedResidual rotated_residual(const RotatedPoint& y, const ModelParams& params,
                                 const PoissonProfile& profile);

}  // namespace c3bound
