#include "edgeflow/specfun.hpp"

#include <boost/math/special_functions/bessel.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include "edgeflow/errors.hpp"

namespace edgeflow::specfun {

namespace {

void check_order(double order) {
  if (!(order >= 0.0 && order <= kMaxOrder)) {
    std::ostringstream os;
    os << "bessel: order=" << order << " outside [0, " << kMaxOrder << "]";
    throw DomainError(os.str());
  }
}

void check_argument(double z) {
  if (!(z > 0.0 && z <= kMaxArgument)) {
    std::ostringstream os;
    os << "bessel: argument z=" << z << " outside (0, " << kMaxArgument << "]";
    throw DomainError(os.str());
  }
}

// Neumaier-compensated accumulator.
struct Accumulator {
  double sum = 0.0;
  double comp = 0.0;
  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + comp; }
};

}  // namespace

namespace detail {

double log_bessel_i_series(double order, double z) {
  const double half = 0.5 * z;
  const double q = half * half;
  // Terms t_k = (z/2)^(2k+nu) / (k! Gamma(k+nu+1)) peak where
  // (k+1)(k+nu+1) ~ q; sum outward from there in units of the peak term.
  double kpeak = 0.5 * (std::sqrt(order * order + 4.0 * q) - order) - 1.0;
  kpeak = std::max(0.0, std::floor(kpeak));
  const double log_peak = (2.0 * kpeak + order) * std::log(half) -
                          std::lgamma(kpeak + 1.0) -
                          std::lgamma(kpeak + order + 1.0);

  Accumulator acc;
  acc.add(1.0);
  constexpr double kTol = 1.0e-18;
  double r = 1.0;
  for (double k = kpeak; ; k += 1.0) {
    r *= q / ((k + 1.0) * (k + order + 1.0));
    acc.add(r);
    if (r < kTol * acc.value()) break;
  }
  r = 1.0;
  for (double k = kpeak; k >= 1.0; k -= 1.0) {
    r *= k * (k + order) / q;
    acc.add(r);
    if (r < kTol * acc.value()) break;
  }
  return log_peak + std::log(acc.value());
}

bool log_bessel_i_hankel(double order, double z, double& out) {
  // I_nu(z) ~ e^z / sqrt(2 pi z) * sum_k (-1)^k a_k(nu) / z^k
  // The dropped e^{-z} branch is relatively O(e^{-2z} max_term); below
  // z = 25 it is visible at 1e-10, even when the sum terminates.
  if (z < 25.0) return false;
  const double mu4 = 4.0 * order * order;
  Accumulator acc;
  acc.add(1.0);
  double term = 1.0;
  double max_term = 1.0;
  double prev_abs = 1.0;
  for (int k = 1; k < 400; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= -(mu4 - odd * odd) / (8.0 * k * z);
    const double a = std::abs(term);
    if (a == 0.0) {
      out = z - 0.5 * std::log(2.0 * std::numbers::pi * z) + std::log(acc.value());
      return true;
    }
    if (a > prev_abs && a < max_term * 1e-3) {
      return false;  // started diverging before reaching full precision
    }
    max_term = std::max(max_term, a);
    if (max_term > 1.0e3) return false;  // cancellation would cost digits
    acc.add(term);
    if (a < 1.0e-17 * std::abs(acc.value())) {
      const double s = acc.value();
      if (!(s > 0.0)) return false;
      out = z - 0.5 * std::log(2.0 * std::numbers::pi * z) + std::log(s);
      return true;
    }
    prev_abs = a;
  }
  return false;
}

}  // namespace detail

double log_bessel_i(double order, double z) {
  check_order(order);
  check_argument(z);
  if (z <= std::max(10.0, order)) {
    return detail::log_bessel_i_series(order, z);
  }
  double out = 0.0;
  if (detail::log_bessel_i_hankel(order, z, out)) return out;
  return detail::log_bessel_i_series(order, z);
}

double bessel_i(double order, double z, bool scaled) {
  const double log_value = log_bessel_i(order, z);
  if (scaled) return std::exp(log_value - z);
  if (log_value > std::log(std::numeric_limits<double>::max())) {
    std::ostringstream os;
    os << "bessel_i: I_" << order << "(" << z
       << ") overflows double; use the scaled variant";
    throw DomainError(os.str());
  }
  return std::exp(log_value);
}

BesselEval evaluate_bessel_i(double order, double z, bool scaled) {
  return BesselEval{order, z, bessel_i(order, z, scaled), scaled};
}

double bessel_j(double order, double z) {
  check_order(order);
  if (!(z >= 0.0)) throw DomainError("bessel_j: argument z must be >= 0");
  return boost::math::cyl_bessel_j(order, z);
}

void bessel_j_zeros(double order, int count, double* out) {
  check_order(order);
  try {
    for (int k = 1; k <= count; ++k) {
      out[k - 1] = boost::math::cyl_bessel_j_zero(order, k);
    }
  } catch (const std::exception& e) {
    std::ostringstream os;
    os << "bessel_j_zeros: root bracketing failed for order=" << order << ": "
       << e.what();
    throw NumericError(os.str());
  }
}

double bessel_j_first_zero(double order) {
  double zero = 0.0;
  bessel_j_zeros(order, 1, &zero);
  // Bracket check: J_nu changes sign across the returned root.
  const double lo = boost::math::cyl_bessel_j(order, zero * (1.0 - 1e-6));
  const double hi = boost::math::cyl_bessel_j(order, zero * (1.0 + 1e-6));
  if (!(lo > 0.0 && hi < 0.0)) {
    std::ostringstream os;
    os << "bessel_j_first_zero: no sign change around " << zero
       << " (J=" << lo << ", " << hi << ") for order=" << order;
    throw NumericError(os.str());
  }
  return zero;
}

}  // namespace edgeflow::specfun
