#include "edgeflow/holder.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "edgeflow/errors.hpp"
#include "edgeflow/grid.hpp"

namespace edgeflow::holder {

namespace {

void check_field(const SampledField& v) {
  if (v.x.empty() || v.t.empty()) throw DomainError("holder: empty field");
  if (v.values.size() != v.t.size()) throw DomainError("holder: one value row per time required");
  for (const auto& row : v.values) {
    if (row.size() != v.x.size()) throw DomainError("holder: row length differs from node count");
  }
  for (double xi : v.x) {
    if (!(xi > 0.0)) throw DomainError("holder: nodes must be positive");
  }
}

std::vector<std::vector<double>> weighted(const SampledField& v, double gamma) {
  std::vector<std::vector<double>> w = v.values;
  std::vector<double> scale(v.x.size());
  for (std::size_t i = 0; i < v.x.size(); ++i) scale[i] = std::pow(v.x[i], -gamma);
  for (auto& row : w) {
    for (std::size_t i = 0; i < row.size(); ++i) row[i] *= scale[i];
  }
  return w;
}

SampledField x_dx(const SampledField& v) {
  SampledField out = v;
  for (std::size_t k = 0; k < v.t.size(); ++k) {
    const auto d = differentiate(v.x, v.values[k], 1);
    for (std::size_t i = 0; i < v.x.size(); ++i) out.values[k][i] = v.x[i] * d[i];
  }
  return out;
}

SampledField x2_dt(const SampledField& v) {
  SampledField out = v;
  std::vector<double> column(v.t.size());
  for (std::size_t i = 0; i < v.x.size(); ++i) {
    for (std::size_t k = 0; k < v.t.size(); ++k) column[k] = v.values[k][i];
    const auto d = differentiate(v.t, column, 1);
    for (std::size_t k = 0; k < v.t.size(); ++k) out.values[k][i] = v.x[i] * v.x[i] * d[k];
  }
  return out;
}

}  // namespace

double sup_norm(const SampledField& v, double gamma) {
  check_field(v);
  double m = 0.0;
  for (const auto& row : weighted(v, gamma)) {
    for (double w : row) m = std::max(m, std::abs(w));
  }
  return m;
}

double seminorm(const SampledField& v, double alpha, double gamma) {
  check_field(v);
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("holder: alpha must lie in (0, 1)");
  const auto w = weighted(v, gamma);
  const std::size_t nx = v.x.size(), nt = v.t.size();
  std::vector<double> xa(nx * nx);
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < nx; ++j) xa[i * nx + j] = std::pow(std::abs(v.x[i] - v.x[j]), alpha);
  double best = 0.0;
  for (std::size_t a = 0; a < nt; ++a) {
    for (std::size_t b = a; b < nt; ++b) {
      const double dt = std::pow(std::abs(v.t[a] - v.t[b]), 0.5 * alpha);
      for (std::size_t i = 0; i < nx; ++i) {
        const double wi = w[a][i];
        for (std::size_t j = (a == b ? i + 1 : 0); j < nx; ++j) {
          const double den = xa[i * nx + j] + dt;
          if (den > 0.0) best = std::max(best, std::abs(wi - w[b][j]) / den);
        }
      }
    }
  }
  return best;
}

double weighted_norm(const SampledField& v, double alpha, double gamma) {
  return sup_norm(v, gamma) + seminorm(v, alpha, gamma);
}

double hybrid_norm(const SampledField& v, double alpha, double gamma) {
  return weighted_norm(v, alpha, gamma) + sup_norm(v, gamma + alpha);
}

double higher_order_norm(const SampledField& v, double alpha, double gamma, int k) {
  if (k < 0 || k > 2) throw DomainError("holder: derivative order k must be 0, 1 or 2");
  double total = hybrid_norm(v, alpha, gamma);
  if (k >= 1) {
    const auto d1 = x_dx(v);
    total += hybrid_norm(d1, alpha, gamma);
    if (k == 2) {
      total += hybrid_norm(x_dx(d1), alpha, gamma);
      total += hybrid_norm(x2_dt(v), alpha, gamma);
    }
  }
  return total;
}

NormWeights weights_from_window(const indicial::HolderWindow& window) {
  if (!window.feasible) {
    std::ostringstream os;
    os << "holder: window infeasible";
    for (const auto& b : window.binding) os << "; violates " << b;
    throw DomainError(os.str());
  }
  NormWeights w;
  w.alpha = window.alpha;
  if (window.gamma) {
    w.gamma_trace = w.gamma_tracefree = *window.gamma;
  } else {
    w.gamma_trace = window.gamma1.value_or(0.0);
    w.gamma_tracefree = window.gamma0.value_or(0.0);
  }
  return w;
}

double holder_norm(const SampledField& v, const indicial::HolderWindow& window, bool tracefree,
                   int k) {
  const auto w = weights_from_window(window);
  return higher_order_norm(v, w.alpha, tracefree ? w.gamma_tracefree : w.gamma_trace, k);
}

}  // namespace edgeflow::holder
