#pragma once

#include <vector>

namespace edgeflow {

/// Graded radial grid on (0, x_max]: node_i = x_max (i/n)^p, i = 1..n, with
/// quadrature weights for the measure s^f ds.
struct RadialGrid {
  std::vector<double> nodes;
  std::vector<double> weights;
  double x_max = 1.0;
  double grading = 3.0;
  int f = 1;

  int size() const { return static_cast<int>(nodes.size()); }
  /// sum_j values_j weights_j (compensated).
  double integrate(const std::vector<double>& values) const;
};

/// Weights come from the trapezoid rule in the uniform variable tau = i/n
/// with fourth-order end corrections (3/8, 7/6, 23/24); the tau = 0 end
/// contributes nothing since the integrand carries s^f.
RadialGrid make_radial_grid(int n, double x_max, double grading, int f);

/// Finite-difference weights (Fornberg) for the `deriv`-th derivative at x0
/// from the points x[0..npts).
std::vector<double> fd_weights(double x0, const double* x, int npts, int deriv);

/// Derivative of sampled values on arbitrary increasing nodes using 5-point
/// stencils (centred where possible, one-sided at the ends). Fewer than 5
/// nodes raises DomainError.
std::vector<double> differentiate(const std::vector<double>& nodes,
                                  const std::vector<double>& values, int deriv);

/// Neumaier-compensated sum.
double compensated_sum(const std::vector<double>& terms);

/// Cubic Lagrange interpolation from the four nodes nearest to x
/// (extrapolates outside [nodes.front(), nodes.back()]).
double interpolate_cubic(const std::vector<double>& nodes, const std::vector<double>& values,
                         double x);

}  // namespace edgeflow
