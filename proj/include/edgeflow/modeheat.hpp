#pragma once

#include <optional>
#include <ostream>
#include <vector>

#include "edgeflow/grid.hpp"

namespace edgeflow::modeheat {

/// Radial model operator -d^2/ds^2 - (f/s) d/ds + (mu^2 - ((f-1)/2)^2)/s^2.
struct ModeKernelSpec {
  double mu = 0.0;
  int f = 1;
  std::optional<double> lambda;  // generating eigenvalue, mu^2 = lambda + ((f-1)/2)^2
};

/// mu = sqrt(lambda + ((f-1)/2)^2); DomainError when lambda is below the bound.
ModeKernelSpec spec_from_eigenvalue(double lambda, int f);

/// Index-set element mu - (f-1)/2 carried by the mode.
double boundary_element(const ModeKernelSpec& spec);

/// log of (1/2t)(s s')^{(1-f)/2} I_mu(s s'/2t) exp(-(s^2+s'^2)/4t), the heat
/// kernel of the Friedrichs extension with respect to s^f ds.
double log_mode_heat_kernel(const ModeKernelSpec& spec, double t, double s, double s_tilde);
double mode_heat_kernel(const ModeKernelSpec& spec, double t, double s, double s_tilde);

enum class Boundary {
  HalfLine,   // kernel on (0, inf) applied by quadrature on the grid
  Dirichlet,  // eigenfunction expansion on (0, x_max] with u(x_max) = 0
};

/// output_i = sum_j K(t, s_i, s_j) field_j w_j. Rows whose Gaussian width is
/// not resolved by the local node spacing are integrated on a fine local
/// sub-grid against a cubic interpolant of the field.
std::vector<double> mode_propagate(const ModeKernelSpec& spec, double t, const RadialGrid& grid,
                                   const std::vector<double>& field,
                                   Boundary boundary = Boundary::HalfLine);

/// Dirichlet eigenbasis on (0, x_max]: lambda_k = (j_{mu,k}/x_max)^2,
/// phi_k(s) = c_k s^{(1-f)/2} J_mu(j_{mu,k} s / x_max), orthonormal for s^f ds.
class DirichletBasis {
 public:
  DirichletBasis(const ModeKernelSpec& spec, const RadialGrid& grid, int modes);

  int modes() const { return static_cast<int>(lambda_.size()); }
  const std::vector<double>& eigenvalues() const { return lambda_; }
  double eigenfunction(int k, double s) const;
  /// Values of phi_k at the grid nodes.
  const std::vector<double>& sampled(int k) const { return phi_[k]; }

  std::vector<double> project(const std::vector<double>& field) const;
  std::vector<double> reconstruct(const std::vector<double>& coeffs) const;
  std::vector<double> propagate(double t, const std::vector<double>& field) const;

 private:
  ModeKernelSpec spec_;
  RadialGrid grid_;
  std::vector<double> zeros_;
  std::vector<double> lambda_;
  std::vector<double> norm_;
  std::vector<std::vector<double>> phi_;
};

/// Number of Dirichlet modes a grid can represent, used when none is given.
int default_mode_count(const RadialGrid& grid);

/// Least-squares slope of log K(t, s, s_tilde) against log s on log-spaced
/// samples (spacing 0.1 in log s) in [s_lo, s_hi]; fewer than 4 samples
/// raises FitError.
double boundary_exponent(const ModeKernelSpec& spec, double t, double s_tilde, double s_lo,
                         double s_hi);

struct WeightedMode {
  ModeKernelSpec spec;
  double weight = 1.0;
};

struct ConeKernelSum {
  double value = 0.0;
  double tail_bound = 0.0;  // bound on the dropped modes
  int modes_used = 0;
};

/// sum_k weight_k K_k(t, s, s_tilde) over modes ordered by increasing mu.
/// Summation stops once a term falls below 1e-14 of the running sum; the
/// remaining modes are bounded through
/// I_mu(z) <= (z/2)^mu / Gamma(mu+1) exp(z^2 / (4(mu+1))).
ConeKernelSum assemble_cone_kernel(const std::vector<WeightedMode>& modes, double t, double s,
                                   double s_tilde);

/// CSV with header t,s,s_tilde,mu,f,value.
void write_kernel_csv(std::ostream& out, const std::vector<ModeKernelSpec>& specs,
                      const std::vector<double>& times, const std::vector<double>& points);

}  // namespace edgeflow::modeheat
