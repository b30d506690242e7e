#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <optional>

namespace edgeflow::appendix {

using Curve = std::function<Eigen::VectorXd(double)>;

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

/// sup over a dense (eta, eta')-grid on K of
///   N |r(eta) - r(eta')| / |eta - eta'|^{1/N},  r = signed real N-th root.
/// N must be odd and positive; K must have lo < hi.
double holder_quotient_constant(int N, Interval K, int grid = 1001);

struct MeanValueSample {
  Curve omega;
  Curve derivative;  // empty: central differences with step 1e-7 |K|
  double eta = 0.0;
  double eta_prime = 0.0;
  int N = 1;
  Interval K;
  std::optional<double> constant;  // C(N, K); computed when absent
};

struct MeanValueResult {
  double lhs = 0.0;          // |omega(eta) - omega(eta')|
  double rhs = 0.0;          // C |eta - eta'|^{1/N} |delta^{(N-1)/N} omega'(delta)| at delta_star
  double rhs_min = 0.0;      // same with delta minimising instead
  double ratio = 0.0;        // lhs / rhs, 0 when eta = eta'
  double fitted_c = 0.0;     // smallest C for which the bound holds at delta_star
  double delta_star = 0.0;
  double constant = 0.0;     // C(N, K) used
};

/// Checks the one-variable bound. delta_star maximises the weighted
/// derivative over a 257-point grid on [eta, eta'] refined by golden section.
MeanValueResult mean_value_bound_check(const MeanValueSample& sample);

struct MeanValueAudit {
  int samples = 0;
  double worst_ratio = 0.0;
  double max_fitted_c = 0.0;
  double constant = 0.0;
  double worst_eta = 0.0;
  double worst_eta_prime = 0.0;
  bool holds = true;  // max_fitted_c <= constant + 1e-6
};

/// Uniform random pairs in K from a seeded mt19937_64.
MeanValueAudit mean_value_audit(const Curve& omega, const Curve& derivative, int N, Interval K,
                                int samples, std::uint64_t seed);

// Edge chart (x, y, z) with x in (0, x_hi], one edge and one fibre variable.
struct EdgeChart {
  int id = 0;
  Interval x{0.0, 1.0};
  Interval y{0.0, 1.0};
  Interval z{0.0, 1.0};
};

struct EdgePoint {
  int chart = 0;
  double x = 0.0, y = 0.0, z = 0.0;
};

using EdgeField = std::function<Eigen::VectorXd(double, double, double)>;

/// (|x-x'|^2 + (x+x')^2 |z-z'|^2 + |y-y'|^2)^{1/2}
double edge_distance(const EdgePoint& p, const EdgePoint& q);

struct EdgeMeanValueResult {
  double lhs = 0.0;  // |w(p) - w(p')| / d^{1/N}
  double radial = 0.0;
  double edge = 0.0;
  double fibre = 0.0;
  double rhs = 0.0;       // radial + edge + fibre
  double fitted_c = 0.0;  // lhs / rhs
  double constant = 0.0;  // chart constant
};

/// Three-term bound with suprema over the connecting segments, each sampled
/// at `segment` points. Derivatives by central differences with step
/// 1e-7 times the chart extent. The pair is put in a canonical order first,
/// so swapping p and p' gives identical output. The chart constant is
/// max{C(N, x-range), C(N, y-range - y_ref), diam_z^{(N-1)/N}}.
/// Points from different charts raise DomainError.
EdgeMeanValueResult edge_mean_value_check(const EdgeField& w, const EdgeChart& chart,
                                          const EdgePoint& p, const EdgePoint& q, double y_ref,
                                          int N, int segment = 64);

struct EdgeAudit {
  int samples = 0;
  double max_fitted_c = 0.0;
  double constant = 0.0;
  bool holds = true;
};

EdgeAudit edge_mean_value_audit(const EdgeField& w, const EdgeChart& chart, double y_ref, int N,
                                int samples, std::uint64_t seed, int segment = 64);

}  // namespace edgeflow::appendix
