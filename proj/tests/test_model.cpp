#include "c3bound/model.hpp"

#include <cmath>

#include "c3bound/errors.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace c3bound;

TEST_CASE("params: construction and validation") {
  const auto p = ModelParams::make(2.468155);
  CHECK(p.lambda == 2.0 * p.c);
  CHECK(p.x_max == 60);
  CHECK(p.epsilon == 0.05);

  CHECK_THROWS_AS(ModelParams::make(0.0), ParameterError);
  CHECK_THROWS_AS(ModelParams::make(-1.0), ParameterError);
  CHECK_THROWS_AS(ModelParams::make(2.5, 1), ParameterError);
  CHECK_THROWS_AS(ModelParams::make(2.5, 60, 0.0), ParameterError);
  CHECK_THROWS_AS(ModelParams::make(2.5, 60, -0.1), ParameterError);
  // A slack above 1 is legal; it makes the subspace restriction vacuous.
  CHECK_NOTHROW(ModelParams::make(2.5, 60, 1.5));

  ModelParams broken = p;
  broken.lambda = 2.0 * p.c + 1e-9;
  CHECK_THROWS_AS(broken.validate(), ParameterError);
}

TEST_CASE("poisson weights: anchor value and recurrence") {
  const double lam = 4.936310;
  // x = 0 is pure exp
  CHECK(poisson_pmf(0, lam) == doctest::Approx(std::exp(-lam)).epsilon(1e-15));
  // 40-digit reference at x = 2
  CHECK(poisson_pmf(2, lam) == doctest::Approx(oracle::kPmfRef).epsilon(1e-14));
  // long-double direct evaluation agrees everywhere we care about
  for (int x = 0; x <= 60; ++x) {
    const double ref = static_cast<double>(oracle::pmf(x, lam));
    CHECK(poisson_pmf(x, lam) == doctest::Approx(ref).epsilon(1e-12));
  }
  // (x+1) p_{x+1} = lambda p_x
  for (double l : {1.0, 4.936310, 9.7}) {
    for (int x = 0; x < 60; ++x) {
      const double lhs = (x + 1) * poisson_pmf(x + 1, l);
      const double rhs = l * poisson_pmf(x, l);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(poisson_pmf(2, 0.0), ParameterError);
  CHECK_THROWS_AS(poisson_pmf(2, -1.0), ParameterError);
  CHECK_THROWS_AS(poisson_pmf(-1, 1.0), ParameterError);
}

TEST_CASE("profile: weights are a sub-probability, mean fraction behaves") {
  const auto prof = build_profile(ModelParams::make(2.468155, 60));
  REQUIRE(prof.x_max() == 60);
  double sum = 0.0;
  for (double w : prof.weights) {
    CHECK(w > 0.0);
    CHECK(w < 1.0);
    sum += w;
  }
  CHECK(sum <= 1.0 + 1e-12);  // 1e-12 of floating-point headroom

  // truncated mean fraction: essentially all of the mass at x_max = 60.
  // The true deficit (the upper tail, ~6e-23) is below one ulp of 1.0, so
  // the correctly rounded double is exactly 1.0; the tail itself is checked
  // in extended precision.
  CHECK(prof.u_trunc == 1.0);
  CHECK(oracle::poisson_upper_tail(60, 4.936310L) < 1e-20L);
  CHECK(oracle::poisson_upper_tail(60, 4.936310L) > 0.0L);

  // 40-digit reference at x_max = 8, plus the direct long-double sum
  const auto prof8 = build_profile(ModelParams::make(2.468155, 8));
  CHECK(prof8.u_trunc == doctest::Approx(oracle::kUTrunc8Ref).epsilon(1e-13));
  CHECK(prof8.u_trunc ==
        doctest::Approx(static_cast<double>(oracle::u_trunc(8, 4.936310L)))
            .epsilon(1e-12));

  // non-decreasing in the truncation, never above 1
  double prev = 0.0;
  for (int xm = 2; xm <= 80; ++xm) {
    const double u = build_profile(ModelParams::make(2.468155, xm)).u_trunc;
    CHECK(u >= prev);
    CHECK(u <= 1.0);
    prev = u;
  }
}

TEST_CASE("large-deviation rate: zero at zero, monotone, quadratic cap") {
  CHECK(large_deviation_rate(0.0, 0.5) == 0.0);
  CHECK(large_deviation_rate(0.0, 2.0) == 0.0);
  // at xi = eta = 1 the entropic branch wins: 2 ln 2 - 1 < 1/2
  CHECK(large_deviation_rate(1.0, 1.0) ==
        doctest::Approx(2.0 * std::log(2.0) - 1.0).epsilon(1e-15));
  double prev = 0.0;
  for (int i = 1; i <= 20; ++i) {
    const double xi = 0.1 * i;
    const double r = large_deviation_rate(xi, 0.5);
    CHECK(r > prev);
    CHECK(r <= xi * xi / (2.0 * 0.5) + 1e-18);
    prev = r;
  }
  CHECK_THROWS_AS(large_deviation_rate(1.0, 0.0), ParameterError);
  CHECK_THROWS_AS(large_deviation_rate(-0.5, 1.0), ParameterError);
}
