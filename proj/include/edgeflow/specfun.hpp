#pragma once

// Real-order Bessel functions used by the model heat kernels.

namespace edgeflow::specfun {

inline constexpr double kMaxOrder = 200.0;
inline constexpr double kMaxArgument = 1.0e6;

struct BesselEval {
  double order = 0.0;
  double argument = 0.0;
  double value = 0.0;
  bool scaled = false;  // value holds exp(-z) I_nu(z)
};

/// Modified Bessel function of the first kind I_nu(z), or exp(-z) I_nu(z)
/// when `scaled` is set. order in [0, 200], z in (0, 1e6].
///
/// Power series (summed outward from its largest term) for z <= max(10, nu);
/// above that the large-argument Hankel expansion is used whenever it
/// converges cleanly, with the series as fallback. Unscaled values that do
/// not fit in a double raise DomainError.
double bessel_i(double order, double z, bool scaled = false);

/// log I_nu(z); finite over the whole supported range.
double log_bessel_i(double order, double z);

BesselEval evaluate_bessel_i(double order, double z, bool scaled);

/// Smallest positive zero j_{nu,1} of J_nu, order in [0, 200].
double bessel_j_first_zero(double order);

/// First `count` positive zeros of J_nu.
void bessel_j_zeros(double order, int count, double* out);

/// J_nu(z) for z >= 0.
double bessel_j(double order, double z);

namespace detail {
// Individual evaluation routes, exposed for cross-regime checks.
double log_bessel_i_series(double order, double z);
// Returns false when the asymptotic sum does not converge to full precision.
bool log_bessel_i_hankel(double order, double z, double& out);
}  // namespace detail

}  // namespace edgeflow::specfun
