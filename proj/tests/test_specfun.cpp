#include <boost/math/special_functions/bessel.hpp>

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "edgeflow/errors.hpp"
#include "edgeflow/specfun.hpp"
#include "oracles.hpp"

using namespace edgeflow;
using namespace edgeflow::specfun;

namespace {
double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
}  // namespace

TEST_CASE("I_1/2 at z=1 matches the sinh closed form") {
  CHECK(bessel_i(0.5, 1.0) == doctest::Approx(0.9376748882).epsilon(1e-9));
  CHECK(rel(bessel_i(0.5, 1.0), std::sqrt(2.0 / std::numbers::pi) * std::sinh(1.0)) < 1e-13);
}

TEST_CASE("I_0 tends to one at the origin") {
  CHECK(bessel_i(0.0, 1e-300) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(bessel_i(0.0, 1e-8) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("half-order closed forms") {
  for (int twice : {1, 3, 5}) {
    for (double z : {0.1, 0.7, 1.0, 4.0, 10.0, 30.0, 100.0, 500.0}) {
      const double ref = oracle::bessel_i_half(twice, z);
      CAPTURE(twice);
      CAPTURE(z);
      CHECK(rel(bessel_i(twice / 2.0, z), ref) < 1e-10);
    }
  }
}

TEST_CASE("40-term power series oracle") {
  for (double nu : {0.0, 0.5, 1.0, 1.5, 3.0, 10.0, 37.25}) {
    for (double z : {1e-3, 0.1, 1.0, 2.0, 7.5, 10.0}) {
      CAPTURE(nu);
      CAPTURE(z);
      const double ref = static_cast<double>(oracle::bessel_i_series(nu, z, 40));
      CHECK(rel(bessel_i(nu, z), ref) < 1e-12);
    }
  }
  CHECK(rel(bessel_i(3.0, 2.0), static_cast<double>(oracle::bessel_i_series(3.0, 2.0))) < 1e-13);
}

TEST_CASE("fully converged series at large argument") {
  for (double nu : {0.0, 0.5, 1.0, 3.0, 10.0}) {
    for (double z : {30.0, 100.0}) {
      CAPTURE(nu);
      CAPTURE(z);
      const double ref = static_cast<double>(oracle::bessel_i_series_full(nu, z));
      CHECK(rel(bessel_i(nu, z), ref) < 1e-10);
    }
  }
}

TEST_CASE("recurrence I_{nu-1} - I_{nu+1} = (2 nu / z) I_nu") {
  for (double nu = 1.0; nu <= 50.0; nu += 3.5) {
    for (double z : {0.1, 0.5, 2.0, 9.0, 11.0, 25.0, 49.0, 51.0, 80.0, 100.0}) {
      const double a = bessel_i(nu - 1.0, z, true);
      const double b = bessel_i(nu + 1.0, z, true);
      const double c = bessel_i(nu, z, true);
      CAPTURE(nu);
      CAPTURE(z);
      CHECK(std::abs(a - b - 2.0 * nu / z * c) <= 1e-9 * c);
    }
  }
}

TEST_CASE("monotone in the argument") {
  for (double nu : {0.0, 0.5, 2.0, 17.0, 120.0}) {
    double prev = 0.0;
    for (double z = 0.05; z < 400.0; z *= 1.13) {
      const double v = log_bessel_i(nu, z);
      if (z > 0.05) CHECK(v > prev);
      prev = v;
    }
  }
}

TEST_CASE("series and asymptotic routes agree where both apply") {
  int compared = 0;
  for (double nu : {0.0, 0.5, 1.0, 4.0, 12.0, 30.0}) {
    for (double z : {20.0, 40.0, 80.0, 150.0, 400.0, 1000.0}) {
      double asym = 0.0;
      if (!detail::log_bessel_i_hankel(nu, z, asym)) continue;
      const double series = detail::log_bessel_i_series(nu, z);
      CAPTURE(nu);
      CAPTURE(z);
      CHECK(std::abs(std::expm1(asym - series)) < 1e-9);
      ++compared;
    }
  }
  CHECK(compared > 20);
}

TEST_CASE("cross-reference against boost at moderate arguments") {
  for (double nu : {0.0, 0.25, 2.0, 7.5, 60.0, 199.0}) {
    for (double z : {0.3, 5.0, 50.0, 300.0}) {
      CAPTURE(nu);
      CAPTURE(z);
      const double ref = boost::math::cyl_bessel_i(nu, z);
      if (ref < 1e-290) {
        CHECK(log_bessel_i(nu, z) < -660.0);  // below double range either way
        continue;
      }
      CHECK(rel(bessel_i(nu, z), ref) < 1e-10);
    }
  }
}

TEST_CASE("scaled variant stays finite and in (0, 1]") {
  for (double nu : {0.0, 1.0, 50.0, 200.0}) {
    for (double z : {1e-3, 1.0, 1e3, 1e5, 1e6}) {
      const double s = bessel_i(nu, z, true);
      CHECK(std::isfinite(s));
      CHECK(s <= 1.0);
      if (log_bessel_i(nu, z) - z > -700.0) CHECK(s > 0.0);
    }
  }
  // large-argument leading behaviour e^{-z} I_nu(z) ~ 1/sqrt(2 pi z)
  CHECK(rel(bessel_i(0.0, 1e6, true), 1.0 / std::sqrt(2e6 * std::numbers::pi)) < 1e-6);
}

TEST_CASE("domain errors name the parameter") {
  CHECK_THROWS_AS(bessel_i(-0.1, 1.0), DomainError);
  CHECK_THROWS_AS(bessel_i(201.0, 1.0), DomainError);
  CHECK_THROWS_AS(bessel_i(1.0, 0.0), DomainError);
  CHECK_THROWS_AS(bessel_i(1.0, 2e6, true), DomainError);
  try {
    bessel_i(1.0, -1.0);
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("argument z") != std::string::npos);
  }
  try {
    bessel_i(300.0, 1.0);
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("order") != std::string::npos);
  }
  // unscaled overflow is reported rather than returning inf
  CHECK_THROWS_AS(bessel_i(0.0, 1e5), DomainError);
  CHECK(std::isfinite(bessel_i(0.0, 1e5, true)));
}

TEST_CASE("first zero of J_nu") {
  CHECK(std::abs(bessel_j_first_zero(0.5) - std::numbers::pi) < 1e-8);
  const double j0 = oracle::bisect(oracle::bessel_j0_series, 2.0, 3.0);
  CHECK(std::abs(bessel_j_first_zero(0.0) - j0) < 1e-8);
  CHECK(std::abs(j0 - 2.40482556) < 1e-8);
  // J_{3/2}(z) ~ sin z / z - cos z, zero where tan z = z
  const double j32 = oracle::bisect([](double z) { return std::tan(z) - z; }, 4.0, 4.6);
  CHECK(std::abs(bessel_j_first_zero(1.5) - j32) < 1e-8);
  CHECK(std::abs(j32 - 4.49340946) < 1e-8);
  CHECK_THROWS_AS(bessel_j_first_zero(-1.0), DomainError);
  // zeros increase with order (interlacing)
  double prev = 0.0;
  for (double nu = 0.0; nu <= 200.0; nu += 12.5) {
    const double z = bessel_j_first_zero(nu);
    CHECK(z > prev);
    CHECK(z > nu);
    prev = z;
  }
}
