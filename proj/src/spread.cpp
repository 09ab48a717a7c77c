#include "c3bound/spread.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "c3bound/errors.hpp"

namespace c3bound {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// lgamma-based log C(x, j); exact 0 at the ends since lgamma(1) == 0.
double log_binomial(int x, int j) {
  return std::lgamma(x + 1.0) - std::lgamma(j + 1.0) - std::lgamma(x - j + 1.0);
}

void require_below_half(const SpreadVector& phi) {
  if (!(phi.phi0 < 0.5) || !(phi.phi1 < 0.5) || !(phi.phi2 < 0.5))
    throw DomainError("spread coordinate must be below 1/2");
}

// Per-type log weights t_i = log N_i(x) + x log(1-2 phi_i). Everything
// downstream (normalizer, fractions, occupancies, residuals) goes through
// this one path so the algebraic identities hold bitwise.
struct TypeWeights {
  double t[3];
  double tmax;
  double sumexp;  // sum_i exp(t_i - tmax)
};

TypeWeights log_type_weights(int x, const SpreadVector& phi) {
  TypeWeights w;
  const double l[3] = {std::log1p(-2.0 * phi.phi0), std::log1p(-2.0 * phi.phi1),
                       std::log1p(-2.0 * phi.phi2)};
  for (int i = 0; i < 3; ++i) w.t[i] = log_pattern_count(x, i) + x * l[i];
  w.tmax = std::max({w.t[0], w.t[1], w.t[2]});
  w.sumexp = std::exp(w.t[0] - w.tmax) + std::exp(w.t[1] - w.tmax) +
             std::exp(w.t[2] - w.tmax);
  return w;
}

}  // namespace

SpreadVector SpreadVector::from_free(double phi0, double phi1, double total) {
  return SpreadVector{phi0, phi1, total - phi0 - phi1};
}

double SpreadVector::operator[](int i) const {
  switch (i) {
    case 0: return phi0;
    case 1: return phi1;
    case 2: return phi2;
    default: throw ParameterError("spread index out of range");
  }
}

bool admissible(const SpreadVector& phi) {
  for (int i = 0; i < 3; ++i)
    if (!(phi[i] > kPhiMin) || !(phi[i] < kPhiMax)) return false;
  return true;
}

void require_admissible(const SpreadVector& phi) {
  if (!admissible(phi))
    throw DomainError("spread vector (" + std::to_string(phi.phi0) + ", " +
                      std::to_string(phi.phi1) + ", " + std::to_string(phi.phi2) +
                      ") leaves the admissible box");
}

SpreadVector phi_of(const RotatedPoint& y, double total) {
  return SpreadVector::from_free(y.y0 + y.y1, y.y0 - y.y1, total);
}

RotatedPoint rotate(double phi0, double phi1) {
  return RotatedPoint{0.5 * (phi0 + phi1), 0.5 * (phi0 - phi1)};
}

double pattern_count(int x, int type) {
  if (x < 0) throw ParameterError("pattern_count: negative degree");
  if (x >= 1024) throw ParameterError("pattern_count: degree too large for 2^x");
  const double pow2 = std::ldexp(1.0, x);
  switch (type) {
    case 0: return std::max(0.0, pow2 - 2.0);
    case 1: return pow2 - 1.0;
    case 2: return pow2;
    default: throw ParameterError("pattern_count: type must be 0, 1 or 2");
  }
}

double log_pattern_count(int x, int type) {
  if (x < 0) throw ParameterError("log_pattern_count: negative degree");
  const double xlog2 = x * std::log(2.0);
  switch (type) {
    // log(2^x - k) = x log 2 + log1p(-k 2^{-x}), exact -inf when 2^x == k
    case 0: return x < 2 ? kNegInf : xlog2 + std::log1p(-2.0 * std::ldexp(1.0, -x));
    case 1: return x < 1 ? kNegInf : xlog2 + std::log1p(-std::ldexp(1.0, -x));
    case 2: return xlog2;
    default: throw ParameterError("log_pattern_count: type must be 0, 1 or 2");
  }
}

double type_normalizer(int x, const SpreadVector& phi) {
  require_below_half(phi);
  const TypeWeights w = log_type_weights(x, phi);
  return std::exp(w.tmax) * w.sumexp;
}

double type_fraction(int x, int type, const SpreadVector& phi) {
  if (type < 0 || type > 2) throw ParameterError("type_fraction: bad type");
  require_below_half(phi);
  const TypeWeights w = log_type_weights(x, phi);
  return std::exp(w.t[type] - w.tmax) / w.sumexp;
}

double occupancy(int x, int j, int type, const SpreadVector& phi) {
  if (type < 0 || type > 2) throw ParameterError("occupancy: bad type");
  if (j < 0 || j > x) throw ParameterError("occupancy: need 0 <= j <= x");
  require_below_half(phi);
  // Structural zeros: a type-0 vertex needs endpoints on both complementary
  // types (so j = 0 and j = x are impossible, and x < 2 has no patterns at
  // all); a type-1 vertex needs at least one (j = 0 impossible).
  if (type == 0 && (x < 2 || j == 0 || j == x)) return 0.0;
  if (type == 1 && j == 0) return 0.0;
  const TypeWeights w = log_type_weights(x, phi);
  const double log_b = w.tmax + std::log(w.sumexp);
  return std::exp(log_binomial(x, j) + x * std::log1p(-2.0 * phi[type]) - log_b);
}

OccupancyProfile::OccupancyProfile(int x_max,
                                   std::vector<std::array<double, 3>> alpha,
                                   std::vector<std::array<double, 3>> mu)
    : x_max_(x_max), alpha_(std::move(alpha)), mu_(std::move(mu)) {}

const std::array<double, 3>& OccupancyProfile::alpha(int x) const {
  if (x < 0 || x > x_max_) throw ParameterError("alpha: degree out of range");
  return alpha_[x];
}

double OccupancyProfile::mu(int x, int j, int type) const {
  if (x < 0 || x > x_max_) throw ParameterError("mu: degree out of range");
  if (j < 0 || j > x) throw ParameterError("mu: need 0 <= j <= x");
  if (type < 0 || type > 2) throw ParameterError("mu: bad type");
  return mu_[static_cast<std::size_t>(x) * (x + 1) / 2 + j][type];
}

OccupancyProfile build_occupancy_profile(const SpreadVector& phi,
                                         const ModelParams& params) {
  params.validate();
  require_admissible(phi);
  const int xm = params.x_max;
  std::vector<std::array<double, 3>> alpha(xm + 1);
  std::vector<std::array<double, 3>> mu(static_cast<std::size_t>(xm + 1) *
                                        (xm + 2) / 2);
  std::size_t row = 0;
  for (int x = 0; x <= xm; ++x) {
    const TypeWeights w = log_type_weights(x, phi);
    const double log_b = w.tmax + std::log(w.sumexp);
    for (int i = 0; i < 3; ++i)
      alpha[x][i] = std::exp(w.t[i] - w.tmax) / w.sumexp;
    for (int j = 0; j <= x; ++j, ++row) {
      for (int i = 0; i < 3; ++i) {
        const bool zero = (i == 0 && (x < 2 || j == 0 || j == x)) ||
                          (i == 1 && j == 0);
        mu[row][i] = zero ? 0.0
                          : std::exp(log_binomial(x, j) +
                                     x * std::log1p(-2.0 * phi[i]) - log_b);
      }
    }
  }
  return OccupancyProfile(xm, std::move(alpha), std::move(mu));
}

Residual system_residual(double phi0, double phi1, const ModelParams& params,
                         const PoissonProfile& profile, double total) {
  const SpreadVector phi = SpreadVector::from_free(phi0, phi1, total);
  require_admissible(phi);
  double s0 = 0.0, s1 = 0.0;
  for (int x = 1; x <= profile.x_max(); ++x) {
    const TypeWeights w = log_type_weights(x, phi);
    const double wx = x * profile.weights[x];
    s0 += wx * std::exp(w.t[0] - w.tmax) / w.sumexp;
    s1 += wx * std::exp(w.t[1] - w.tmax) / w.sumexp;
  }
  return Residual{params.lambda * phi0 - s0, params.lambda * phi1 - s1};
}

Residual system_residual(double phi0, double phi1, const ModelParams& params,
                         const PoissonProfile& profile) {
  return system_residual(phi0, phi1, params, profile, profile.u_trunc);
}

RotatedResidual rotated_residual(const RotatedPoint& y, const ModelParams& params,
                                 const PoissonProfile& profile, double total) {
  // The rotation only relabels the axes; the residual pair is evaluated
  // through the exact same path as the unrotated system.
  const Residual e =
      system_residual(y.y0 + y.y1, y.y0 - y.y1, params, profile, total);
  return RotatedResidual{e.e0, e.e1};
}

RotatedResidual rotated_residual(const RotatedPoint& y, const ModelParams& params,
                                 const PoissonProfile& profile) {
  return rotated_residual(y, params, profile, profile.u_trunc);
}

}  // namespace c3bound
