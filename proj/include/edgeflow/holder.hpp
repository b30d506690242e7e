#pragma once

#include <vector>

#include "edgeflow/indicial.hpp"

namespace edgeflow::holder {

/// Radial field sampled on nodes x (increasing, > 0) at times t;
/// values[k][i] is the value at (x_i, t_k).
struct SampledField {
  std::vector<double> x;
  std::vector<double> t;
  std::vector<std::vector<double>> values;
};

/// sup |x^{-gamma} v|.
double sup_norm(const SampledField& v, double gamma);

/// sup over sampled pairs of |w(p,t) - w(p',t')| / (|x-x'|^alpha + |t-t'|^{alpha/2})
/// with w = x^{-gamma} v. For radial fields the cone distance reduces to
/// |x - x'|. A lower bound of the continuum seminorm.
double seminorm(const SampledField& v, double alpha, double gamma);

/// ||x^{-gamma} v||_alpha = sup |x^{-gamma} v| + seminorm.
double weighted_norm(const SampledField& v, double alpha, double gamma);

/// ||v||'_{alpha,gamma} = ||x^{-gamma} v||_alpha + ||x^{-gamma-alpha} v||_inf.
double hybrid_norm(const SampledField& v, double alpha, double gamma);

/// Sum of hybrid norms of X v over X = (x d_x)^j (x^2 d_t)^l, j + 2l <= k,
/// plus the hybrid norm of v itself (k <= 2). Derivatives by 5-point finite
/// differences; time derivatives need at least 5 time samples.
double higher_order_norm(const SampledField& v, double alpha, double gamma, int k);

/// Weights read off a window: gamma for the trace part, gamma for the
/// trace-free part, alpha. Infeasible windows raise DomainError.
struct NormWeights {
  double gamma_trace = 0.0;
  double gamma_tracefree = 0.0;
  double alpha = 0.5;
};
NormWeights weights_from_window(const indicial::HolderWindow& window);

/// Norm of one component of a flow state under a window.
double holder_norm(const SampledField& v, const indicial::HolderWindow& window, bool tracefree,
                   int k);

}  // namespace edgeflow::holder
