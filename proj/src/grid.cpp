#include "edgeflow/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "edgeflow/errors.hpp"

namespace edgeflow {

double compensated_sum(const std::vector<double>& terms) {
  double sum = 0.0, comp = 0.0;
  for (double x : terms) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }
  return sum + comp;
}

double RadialGrid::integrate(const std::vector<double>& values) const {
  if (values.size() != nodes.size()) throw DomainError("integrate: size mismatch");
  std::vector<double> terms(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) terms[i] = values[i] * weights[i];
  return compensated_sum(terms);
}

RadialGrid make_radial_grid(int n, double x_max, double grading, int f) {
  if (n < 2) throw DomainError("radial grid: need n >= 2 nodes");
  if (!(x_max > 0.0)) throw DomainError("radial grid: x_max must be > 0");
  if (!(grading >= 1.0)) throw DomainError("radial grid: grading exponent must be >= 1");
  if (f < 0) throw DomainError("radial grid: f must be >= 0");
  RadialGrid g;
  g.x_max = x_max;
  g.grading = grading;
  g.f = f;
  g.nodes.resize(n);
  g.weights.resize(n);
  // tau_j = j/n, j = 0..n; node i-1 <-> j = i.
  std::vector<double> c(n + 1, 1.0);
  if (n >= 6) {
    c[0] = c[n] = 3.0 / 8.0;
    c[1] = c[n - 1] = 7.0 / 6.0;
    c[2] = c[n - 2] = 23.0 / 24.0;
  } else {
    c[0] = c[n] = 0.5;
  }
  const double h = 1.0 / n;
  for (int i = 1; i <= n; ++i) {
    const double tau = static_cast<double>(i) / n;
    const double s = (i == n) ? x_max : x_max * std::pow(tau, grading);
    const double ds = grading * x_max * std::pow(tau, grading - 1.0);
    g.nodes[i - 1] = s;
    g.weights[i - 1] = c[i] * h * std::pow(s, f) * ds;
  }
  return g;
}

std::vector<double> fd_weights(double x0, const double* x, int npts, int deriv) {
  // Fornberg's recursion for the weights of all derivative orders up to deriv.
  const int m = deriv;
  std::vector<std::vector<double>> c(npts, std::vector<double>(m + 1, 0.0));
  double c1 = 1.0;
  double c4 = x[0] - x0;
  c[0][0] = 1.0;
  for (int i = 1; i < npts; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) {
          c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        }
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) {
        c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      }
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(npts);
  for (int i = 0; i < npts; ++i) w[i] = c[i][m];
  return w;
}

std::vector<double> differentiate(const std::vector<double>& nodes,
                                  const std::vector<double>& values, int deriv) {
  const int n = static_cast<int>(nodes.size());
  if (n < 5) {
    std::ostringstream os;
    os << "differentiate: " << n << " nodes, need at least 5 for the stencil";
    throw DomainError(os.str());
  }
  if (static_cast<int>(values.size()) != n) throw DomainError("differentiate: size mismatch");
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) {
    const int start = std::clamp(i - 2, 0, n - 5);
    const auto w = fd_weights(nodes[i], nodes.data() + start, 5, deriv);
    double acc = 0.0;
    for (int k = 0; k < 5; ++k) acc += w[k] * values[start + k];
    out[i] = acc;
  }
  return out;
}

double interpolate_cubic(const std::vector<double>& nodes, const std::vector<double>& values,
                         double x) {
  const int n = static_cast<int>(nodes.size());
  if (n < 4) throw DomainError("interpolate_cubic: need at least 4 nodes");
  const int hi = static_cast<int>(std::lower_bound(nodes.begin(), nodes.end(), x) - nodes.begin());
  const int start = std::clamp(hi - 2, 0, n - 4);
  double acc = 0.0;
  for (int k = 0; k < 4; ++k) {
    double l = 1.0;
    for (int m = 0; m < 4; ++m) {
      if (m != k) l *= (x - nodes[start + m]) / (nodes[start + k] - nodes[start + m]);
    }
    acc += l * values[start + k];
  }
  return acc;
}

}  // namespace edgeflow
