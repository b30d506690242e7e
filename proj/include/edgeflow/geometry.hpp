#pragma once

#include <Eigen/Dense>

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace edgeflow::geometry {

using Point = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
/// Metric components g_ij as a function of the coordinates.
using MetricFn = std::function<Matrix(const Point&)>;
using VectorFn = std::function<Point(const Point&)>;

/// Christoffel symbols Gamma^j_{pq}, stored as gamma[j](p, q).
using Christoffel = std::vector<Matrix>;

/// Rotationally symmetric cone metric dx^2 + phi(x)^2 g_F over a cross-section
/// of constant sectional curvature kappa = E / (f - 1) (E the Einstein
/// constant; E = f - 1 is the unit round model).
struct ConeMetric {
  int f = 1;
  std::vector<double> x;
  std::vector<double> phi, dphi, ddphi;
  double einstein_constant = 0.0;
  bool exact_cone = false;
  double cone_c = 1.0;  // phi = c x when exact_cone

  double kappa() const { return f >= 2 ? einstein_constant / (f - 1) : 0.0; }
};

/// phi = c x with exact derivatives.
ConeMetric exact_cone(const std::vector<double>& x, int f, double c,
                      std::optional<double> einstein_constant = std::nullopt);

/// phi from samples; derivatives by 5-point finite differences.
ConeMetric warped_from_samples(const std::vector<double>& x, int f, const std::vector<double>& phi,
                               std::optional<double> einstein_constant = std::nullopt);

/// phi with analytic first and second derivatives.
ConeMetric warped_from_functions(const std::vector<double>& x, int f,
                                 const std::function<double(double)>& phi,
                                 const std::function<double(double)>& dphi,
                                 const std::function<double(double)>& ddphi,
                                 std::optional<double> einstein_constant = std::nullopt);

/// Curvature in the orthonormal frame {e_0 = d/dx, e_a = phi^{-1} (unit fibre
/// frame)}. A warped product over a constant-curvature fibre has a diagonal
/// curvature operator, so R_{abcd} = K_ab (delta_ad delta_bc - delta_ac delta_bd)
/// with K_0a = radial, K_ab = fibre (a != b >= 1).
struct CurvatureTensors {
  int f = 1;
  std::vector<double> x;
  std::vector<double> radial;           // K_{0a}
  std::vector<double> fibre;            // K_{ab}, zero when f = 1
  std::vector<double> ricci_radial;     // Ric_00
  std::vector<double> ricci_fibre;      // Ric_aa
  std::vector<double> scal;
  std::vector<double> tracefree_radial; // Ric'_00
  std::vector<double> tracefree_fibre;  // Ric'_aa

  int dimension() const { return f + 1; }
  /// Full (0,4) component at node i, frame indices 0..f.
  double riemann(int node, int a, int b, int c, int d) const;
  double ricci(int node, int a, int b) const;
  double tracefree_trace(int node) const;
};

CurvatureTensors curvature(const ConeMetric& metric);

/// Curvature of e^{2 psi} g in its own orthonormal frame via the conformal
/// transformation rule; psi and its radial derivatives are given per node.
CurvatureTensors conformal_curvature(const ConeMetric& metric, const std::vector<double>& psi,
                                     const std::vector<double>& dpsi,
                                     const std::vector<double>& ddpsi);
/// Same with psi derivatives taken by finite differences.
CurvatureTensors conformal_curvature(const ConeMetric& metric, const std::vector<double>& psi);

/// Sectional curvatures of e^{2psi} g evaluated on g-orthonormal vectors, i.e.
/// the (0,4) tensor R(e^{2psi} g)(e_a, e_b, e_b, e_a) with e the frame of g.
struct ConformalSectional {
  double radial = 0.0;
  double fibre = 0.0;
};
ConformalSectional conformal_sectional_on_background(double K_radial, double K_fibre, double w,
                                                     double dw, double psi, double dpsi,
                                                     double ddpsi);

// ---- coordinate (finite-difference) route -------------------------------

/// Christoffel symbols of a metric callable at a point, fourth-order centred
/// differences with step h. Singular metric -> LinearAlgebraError.
Christoffel christoffel(const MetricFn& g, const Point& p, double h = 1e-4);

/// Christoffel symbols at every node of a radial grid for a metric whose
/// components depend on x = coordinate 0 only; metric[i] is g at node i.
/// Derivatives use 5-point stencils. Singular g -> LinearAlgebraError
/// naming the node.
std::vector<Christoffel> christoffel_on_grid(const std::vector<double>& x,
                                             const std::vector<Matrix>& metric);

/// (0,4) curvature R_{abcd} = g(R(d_a, d_b) d_c, d_d) ... stored as
/// R[a][b](c, d) in coordinates, with R_{abba} = sectional * |d_a|^2 |d_b|^2
/// for orthogonal coordinate vectors. Nested centred differences.
struct CoordinateRiemann {
  int n = 0;
  std::vector<double> data;
  double operator()(int a, int b, int c, int d) const {
    return data[((a * n + b) * n + c) * n + d];
  }
  double& at(int a, int b, int c, int d) { return data[((a * n + b) * n + c) * n + d]; }
};
CoordinateRiemann riemann_fd(const MetricFn& g, const Point& p, double h = 2e-3);

/// Sectional curvature of the coordinate plane (a, b) from riemann_fd.
double sectional_fd(const MetricFn& g, const Point& p, int a, int b, double h = 2e-3);

// ---- de Turck vector field ----------------------------------------------

/// W^j = -g_t^{pq} (Gamma^j_pq(g_t) - Gamma^j_pq(g_ref)) at a point.
Point deturck_field(const MetricFn& g_t, const MetricFn& g_ref, const Point& p, double h = 1e-3);

struct DeturckProfile {
  std::vector<double> x;
  std::vector<Point> coordinate;  // W^j
  std::vector<Point> ie_frame;    // (W^x, x W^z, ...)
  bool inward_pointing = true;    // W^x >= 0 on the innermost nodes
};

/// Grid version for metrics depending on x only; coordinate 0 is x.
DeturckProfile deturck_field_on_grid(const std::vector<double>& x, const std::vector<Matrix>& g_t,
                                     const std::vector<Matrix>& g_ref);

struct Box {
  Point lo, hi;
  bool contains(const Point& p) const;
};

/// max over samples of |Phi^* g - (g + dt L_W g)| with Phi(p) = p + dt W(p);
/// O(dt^2). An Euler step leaving `domain` raises DomainError.
double pullback_consistency(const MetricFn& g, const VectorFn& W, double dt,
                            const std::vector<Point>& samples, const Box& domain,
                            double h = 1e-4);

// ---- regularity and boundary defining function ---------------------------

struct ExponentFit {
  std::string component;
  double slope = 0.0;
  double residual = 0.0;  // rms of log residuals
  bool vanishing = false;
};

struct RegularityReport {
  std::vector<ExponentFit> exponents;
  std::optional<double> gamma_fit;  // 2 + min(slope scal, slope Ric')
  bool curvature_clause = false;    // every curvature slope >= -2
  bool weight_clause = false;       // gamma_fit > 0 (or all vanish)
  std::string verdict;
};

RegularityReport regularity_report(const ConeMetric& metric, double x_lo, double x_hi);

struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  int points = 0;
};
/// Least squares of log|y| against log x; needs >= 3 points with y != 0.
LogLogFit loglog_fit(const std::vector<double>& x, const std::vector<double>& y);

struct BdfRenormalization {
  double u0 = 0.0;
  double scale = 1.0;  // x_tilde = scale * x, scale = sqrt(1 + u0)
  std::string description;
};

BdfRenormalization renormalize_bdf(double u0);

/// Residual (1 + u)/(1 + u0) - 1 of the renormalised leading metric and the
/// log-log decay fit of its magnitude.
LogLogFit bdf_residual_decay(double u0, const std::vector<double>& x, const std::vector<double>& u);

}  // namespace edgeflow::geometry
