#include "edgeflow/indicial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "edgeflow/errors.hpp"

namespace edgeflow::indicial {

using spectra::Kind;

double element(double lambda, int f) {
  if (f < 1) throw DomainError("indicial element: f must be >= 1");
  const double a = 0.5 * (f - 1);
  const double disc = lambda + a * a;
  if (!(disc >= 0.0) || !std::isfinite(lambda)) {
    std::ostringstream os;
    os << "indicial element: eigenvalue lambda=" << lambda << " below -((f-1)/2)^2 = "
       << -a * a << " (f=" << f << ")";
    throw DomainError(os.str());
  }
  if (lambda == 0.0) return 0.0;
  const double root = std::sqrt(disc);
  // root - a = lambda / (root + a); fine unless both vanish
  if (root + a == 0.0) return 0.0;
  if (lambda < 0.0) return root - a;  // root < a: plain difference is exact enough
  return lambda / (root + a);
}

double eigenvalue_from_element(double e, int f) { return e * e + (f - 1) * e; }

IndicialProfile index_set(const spectra::SpectrumTable& spectrum, int f,
                          std::optional<int> perturbation_order) {
  IndicialProfile p;
  p.f = f;
  p.perturbation_order = perturbation_order;
  std::optional<double> u, u0;
  for (const auto& r : spectrum.records) {
    p.elements.push_back({element(r.eigenvalue, f), r.eigenvalue, r.kind});
    if (r.kind == Kind::LichnerowiczTracefree && (!u0 || r.eigenvalue < *u0)) {
      u0 = r.eigenvalue;
    }
  }
  if (u0) p.mu0 = element(*u0, f);
  std::stable_sort(p.elements.begin(), p.elements.end(),
                   [](const IndicialElement& a, const IndicialElement& b) {
                     return a.value < b.value;
                   });
  std::optional<double> u1;
  for (const auto& r : spectrum.of_kind(Kind::ScalarLaplacian)) {
    if (r.eigenvalue != 0.0 && (!u1 || r.eigenvalue < *u1)) u1 = r.eigenvalue;
  }
  if (u1) p.mu1 = element(*u1, f);
  if (spectrum.has_kind(Kind::LichnerowiczTracefree)) {
    u = u1;
    for (const auto& r : spectrum.of_kind(Kind::LichnerowiczTracefree)) {
      if (r.eigenvalue != 0.0 && (!u || r.eigenvalue < *u)) u = r.eigenvalue;
    }
    if (u) p.mu_flat = element(*u, f);
  }
  if (p.mu1) {
    const double m1 = *p.mu1;
    p.mu1_certified = (m1 > 0.0 && m1 <= 1.0) ||
                      (perturbation_order && static_cast<double>(*perturbation_order) >= m1);
  }
  return p;
}

namespace {

bool is_one_over_odd(double alpha) {
  if (!(alpha > 0.0)) return false;
  const double n = std::round(1.0 / alpha);
  if (n < 1.0 || std::fmod(n, 2.0) != 1.0) return false;
  return std::abs(alpha * n - 1.0) <= 1e-12;
}

}  // namespace

HolderWindow holder_window(double mu0, double mu1, int dimB, const Candidate& c,
                           const WindowOptions& options) {
  HolderWindow w;
  w.gamma0 = c.gamma0;
  w.gamma1 = c.gamma1;
  w.alpha = c.alpha;
  w.dimB = dimB;
  const double g0 = c.gamma0, g1 = c.gamma1, a = c.alpha;
  auto need = [&](bool ok, const char* name) {
    if (!ok) w.binding.emplace_back(name);
  };
  need(g0 > 0.0 && g0 < mu0, kG0Range);
  need(g0 <= 2.0 * g1, kG0Le2G1);
  need(g1 > 0.0 && g1 < mu1, kG1Range);
  need(g1 <= g0, kG1LeG0);
  if (options.geometry_gamma) {
    need(g0 < *options.geometry_gamma, kG0LtGamma);
    need(g1 < *options.geometry_gamma, kG1LtGamma);
  }
  if (dimB > 0) {
    need(g0 <= 2.0 * std::min(1.0, g1), kG0EdgeCap);
    need(g1 <= 2.0, kG1EdgeCap);
  }
  need(a > 0.0 && a < mu0 - g0, kAlphaMu0);
  need(a > 0.0 && a < mu1 - g1, kAlphaMu1);
  need(a > 0.0 && a < 1.0, kAlphaUnit);
  if (options.alpha_one_over_odd) need(is_one_over_odd(a), kAlphaOdd);
  w.feasible = w.binding.empty();
  return w;
}

HolderWindow flat_window(double u, int f, double gamma, double alpha, int dimB) {
  if (!(u >= 0.0)) throw DomainError("flat_window: bound u must be >= 0");
  HolderWindow w;
  const double mu = element(u, f);
  w.mu = mu;
  w.gamma = gamma;
  w.alpha = alpha;
  w.dimB = dimB;
  auto need = [&](bool ok, const char* name) {
    if (!ok) w.binding.emplace_back(name);
  };
  need(gamma > 0.0 && gamma < mu, kGammaRange);
  need(alpha > 0.0 && alpha < mu - gamma, kAlphaMu);
  need(alpha > 0.0 && alpha < 1.0, kAlphaUnit);
  if (dimB > 0) need(gamma <= 2.0, kGammaEdgeCap);
  w.feasible = w.binding.empty();
  return w;
}

namespace {

std::vector<Candidate> grid_candidates(double mu0, double mu1, int dimB, int m,
                                       const WindowOptions& options) {
  std::vector<Candidate> out;
  double cap1 = std::min(mu1, mu0);
  if (options.geometry_gamma) cap1 = std::min(cap1, *options.geometry_gamma);
  if (dimB > 0) cap1 = std::min(cap1, 2.0);
  if (!(cap1 > 0.0)) return out;
  for (int i = 0; i < m; ++i) {
    const double g1 = cap1 * (i + 0.5) / m;
    double hi0 = std::min(2.0 * g1, mu0);
    if (options.geometry_gamma) hi0 = std::min(hi0, *options.geometry_gamma);
    if (dimB > 0) hi0 = std::min(hi0, 2.0 * std::min(1.0, g1));
    if (!(hi0 > g1)) continue;
    for (int j = 0; j < m; ++j) {
      const double g0 = g1 + (hi0 - g1) * (j + 0.5) / m;
      const double abound = std::min({mu0 - g0, mu1 - g1, 1.0});
      if (!(abound > 0.0)) continue;
      if (options.alpha_one_over_odd) {
        double n0 = std::floor(1.0 / abound) + 1.0;
        if (std::fmod(n0, 2.0) == 0.0) n0 += 1.0;
        for (int k = 0; k < m; ++k) out.push_back({g0, g1, 1.0 / (n0 + 2.0 * k)});
      } else {
        for (int k = 0; k < m; ++k) out.push_back({g0, g1, abound * (k + 0.5) / m});
      }
    }
  }
  return out;
}

}  // namespace

std::vector<Candidate> sample_window(double mu0, double mu1, int dimB, int n,
                                     const WindowOptions& options) {
  std::vector<Candidate> feasible;
  if (n <= 0) return feasible;
  if (!(mu0 > 0.0 && mu1 > 0.0)) return feasible;
  int m = std::max(2, static_cast<int>(std::ceil(std::cbrt(static_cast<double>(n)))));
  while (m <= 64) {
    feasible.clear();
    for (const auto& c : grid_candidates(mu0, mu1, dimB, m, options)) {
      if (holder_window(mu0, mu1, dimB, c, options).feasible) feasible.push_back(c);
    }
    if (static_cast<int>(feasible.size()) >= n) break;
    m *= 2;
  }
  if (static_cast<int>(feasible.size()) <= n) return feasible;
  std::vector<Candidate> out;
  out.reserve(n);
  const std::size_t total = feasible.size();
  for (int i = 0; i < n; ++i) out.push_back(feasible[(static_cast<std::size_t>(i) * total) / n]);
  return out;
}

}  // namespace edgeflow::indicial
