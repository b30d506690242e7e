#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "edgeflow/geometry.hpp"
#include "edgeflow/grid.hpp"
#include "edgeflow/holder.hpp"
#include "edgeflow/modeheat.hpp"

namespace edgeflow::flow {

// Rotationally symmetric perturbations of an exact cone g = dx^2 + (c x)^2 g_F:
// v = u g + omega T with T = f dx^2 - (c x)^2 g_F trace-free, so that
// g + v = (1 + u + f omega) dx^2 + (1 + u - omega)(c x)^2 g_F.
// The Ricci-de Turck operator splits on this sector into
//   (d_t + l_{mu_u}) u     = F_trace,      mu_u     = (f - 1)/2,
//   (d_t + l_{mu_omega}) w = F_tracefree,  mu_omega = (f + 3)/2,
// with l_mu the model operator of modeheat.

enum class Mode { ShortTime, FlatLongTime };
enum class Profile { GroundMode, Bump };

std::string mode_name(Mode m);
Mode parse_mode(const std::string& s);
std::string profile_name(Profile p);
Profile parse_profile(const std::string& s);

struct FlowConfig {
  int f = 1;
  double cone_c = 1.0;
  std::optional<double> einstein_constant;  // of the cross-section, default f - 1
  int n_space = 120;
  double x_max = 1.0;
  double grading = 2.0;
  double t_end = 0.05;
  int n_time = 21;
  int modes = 0;  // Dirichlet modes per component, 0 = grid default
  Mode mode = Mode::FlatLongTime;
  Profile profile = Profile::GroundMode;
  double amplitude_u = 0.0;
  double amplitude_omega = 0.0;
  double tol = 1e-13;  // on the residual relative to max(1, |v|)
  int max_iters = 40;
  holder::NormWeights weights;
  bool project_kernel = false;
  double decay_from = 0.3;  // decay fit window starts at decay_from * t_end
};

/// Throws ValidationError on out-of-range parameters.
void validate(const FlowConfig& config);

double mu_trace(int f);
double mu_tracefree(int f);

/// Nodal fields per time slice.
struct PerturbationState {
  std::vector<double> times;
  std::vector<std::vector<double>> u;
  std::vector<std::vector<double>> omega;

  /// min over slices and nodes of 1 + u, 1 + u + f omega, 1 + u - omega.
  double min_metric_factor(int f) const;
};

struct Sources {
  std::vector<double> trace;
  std::vector<double> tracefree;
};

struct KernelElement {
  std::vector<double> u;
  std::vector<double> omega;
};

struct Split {
  KernelElement parallel;
  KernelElement perp;
  double gram_defect = 0.0;  // max |G - I|
};

struct DecayFit {
  bool fitted = false;
  double rate = 0.0;
  double r2 = 0.0;
  std::string verdict;
};

struct FlowReport {
  std::vector<double> residual_history;
  std::vector<double> contraction_ratios;
  std::vector<double> holder_trajectory;      // per time slice
  std::vector<double> l2_trajectory;          // of the kernel-orthogonal part
  std::vector<double> curvature_trajectory;   // max x^2 |K| of g + v
  DecayFit decay;
  std::optional<double> lambda0;              // (j_{mu,1} / x_max)^2 of the slowest component
  double max_contraction_ratio = 0.0;
  int iterations = 0;
  bool contracted = false;
  bool diverged = false;
  bool decayed = false;
  bool positivity_preserved = true;
  double min_metric_factor = 1.0;
  double trace_source_max = 0.0;      // max x^2 |F_trace(0)|
  double tracefree_source_max = 0.0;  // max x^2 |F_tracefree(0)|
  std::string note;
};

class FlowProblem {
 public:
  explicit FlowProblem(const FlowConfig& config);

  const FlowConfig& config() const { return config_; }
  const RadialGrid& grid() const { return grid_; }
  const geometry::ConeMetric& background() const { return background_; }
  const std::vector<double>& times() const { return times_; }
  const modeheat::DirichletBasis& basis_trace() const { return basis_u_; }
  const modeheat::DirichletBasis& basis_tracefree() const { return basis_w_; }

  /// Ricci-de Turck velocity of g + v split into trace / trace-free
  /// coefficients. Metric degeneracy raises StateError.
  Sources ricci_deturck(const std::vector<double>& u, const std::vector<double>& omega) const;
  /// F(v) = Q(g + v) + (l_{mu_u} u, l_{mu_omega} omega).
  Sources rhs(const std::vector<double>& u, const std::vector<double>& omega) const;
  Sources rhs_F(const PerturbationState& state, int t_index) const;

  /// Frame sectional curvatures (radial, fibre) of g + v per node.
  std::pair<std::vector<double>, std::vector<double>> perturbed_curvature(
      const std::vector<double>& u, const std::vector<double>& omega) const;

  /// Initial datum for the configured profile and amplitudes.
  KernelElement initial_data() const;

  /// Heat evolution of (u0, omega0) on the time grid; slice 0 is the datum.
  PerturbationState heat(const KernelElement& initial) const;

  /// heat(initial) + Duhamel convolution of the given source slices, with
  /// each mode coefficient of the source taken linear in time between grid
  /// times and integrated exactly against the exponential.
  PerturbationState duhamel(const KernelElement& initial, const std::vector<Sources>& sources) const;

  /// One application of the Picard map.
  PerturbationState picard_step(const PerturbationState& state, const KernelElement& initial) const;

  /// Sum of the Hoelder norms (configured weights) of both components.
  double state_norm(const PerturbationState& state) const;
  double difference_norm(const PerturbationState& a, const PerturbationState& b) const;

  /// s^f-weighted L^2 inner product with pointwise tensor norms
  /// |u g|^2 = (f+1) u^2, |omega T|^2 = f (f+1) omega^2 (c = 1 frame).
  double inner(const KernelElement& a, const KernelElement& b) const;

 private:
  FlowConfig config_;
  RadialGrid grid_;
  geometry::ConeMetric background_;
  std::vector<double> times_;
  modeheat::DirichletBasis basis_u_;
  modeheat::DirichletBasis basis_w_;
};

/// Orthogonal split along span(basis) in FlowProblem::inner. The Gram
/// matrix is solved by LDLT; condition worse than 1e12 raises BasisError.
Split kernel_projection(const FlowProblem& problem, const KernelElement& v,
                        const std::vector<KernelElement>& basis);

/// Least squares slope of -log y over t restricted to [t_lo, t_hi]. A fit
/// with r^2 < 0.95 or non-positive data gives fitted = false.
DecayFit decay_rate(const std::vector<double>& t, const std::vector<double>& y, double t_lo,
                    double t_hi);

struct FlowResult {
  PerturbationState state;
  FlowReport report;
};

/// Picard iteration to a fixed point. Divergence (three consecutive
/// ratios > 1) and loss of positivity end the run with a report.
FlowResult run_flow(const FlowConfig& config, const std::vector<KernelElement>& kernel = {});

/// Normalised u = const element (g itself, parallel on the cone).
KernelElement trace_constant_element(const FlowProblem& problem);

/// max x^2 |F_trace(eps) - F_trace(0)| for constant pure-trace u = eps: the
/// trace source has no undifferentiated quadratic terms in u.
std::vector<double> pure_trace_sweep(const FlowProblem& problem, const std::vector<double>& eps);

/// t, x, u, omega rows.
void write_state_csv(std::ostream& out, const FlowProblem& problem, const PerturbationState& state);

}  // namespace edgeflow::flow
