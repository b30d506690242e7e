#include "edgeflow/norms_appendix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <tuple>

#include "edgeflow/errors.hpp"

namespace edgeflow::appendix {

namespace {

void check_order(int N) {
  if (N < 1 || N % 2 == 0) throw DomainError("appendix: N must be an odd positive integer");
}

void check_interval(const Interval& K, const char* what) {
  if (!(K.lo < K.hi)) {
    std::ostringstream os;
    os << "appendix: " << what << " interval [" << K.lo << ", " << K.hi << "] is empty";
    throw DomainError(os.str());
  }
}

double signed_root(double v, int N) {
  if (N == 1) return v;
  return std::copysign(std::pow(std::abs(v), 1.0 / N), v);
}

double weight(double d, int N) { return N == 1 ? 1.0 : std::pow(std::abs(d), (N - 1.0) / N); }

// Central difference, one-sided second order at the ends of [lo, hi].
template <class Fn>
Eigen::VectorXd derivative_fd(const Fn& fn, double t, double lo, double hi) {
  const double h = 1e-7 * (hi - lo);
  if (t - h >= lo && t + h <= hi) return (fn(t + h) - fn(t - h)) / (2 * h);
  if (t - h < lo) return (-3 * fn(t) + 4 * fn(t + h) - fn(t + 2 * h)) / (2 * h);
  return (3 * fn(t) - 4 * fn(t - h) + fn(t - 2 * h)) / (2 * h);
}

struct Extremum {
  double arg = 0.0;
  double value = 0.0;
};

// Max and min of g over [a, b]: grid search, then golden section around the
// best grid point for the max.
template <class G>
std::pair<Extremum, Extremum> extremes(const G& g, double a, double b) {
  constexpr int n = 257;
  Extremum hi{a, -std::numeric_limits<double>::infinity()};
  Extremum lo{a, std::numeric_limits<double>::infinity()};
  int best = 0;
  for (int k = 0; k < n; ++k) {
    const double t = a + (b - a) * k / (n - 1);
    const double v = g(t);
    if (!std::isfinite(v)) continue;
    if (v > hi.value) {
      hi = {t, v};
      best = k;
    }
    if (v < lo.value) lo = {t, v};
  }
  if (!std::isfinite(hi.value)) return {{a, 0.0}, {a, 0.0}};
  double l = a + (b - a) * std::max(best - 1, 0) / (n - 1);
  double r = a + (b - a) * std::min(best + 1, n - 1) / (n - 1);
  const double phi = 0.5 * (std::sqrt(5.0) - 1);
  double c = r - phi * (r - l), d = l + phi * (r - l);
  double gc = g(c), gd = g(d);
  for (int it = 0; it < 60 && r - l > 1e-15 * (1 + std::abs(l)); ++it) {
    if (gc > gd) {
      r = d;
      d = c;
      gd = gc;
      c = r - phi * (r - l);
      gc = g(c);
    } else {
      l = c;
      c = d;
      gc = gd;
      d = l + phi * (r - l);
      gd = g(d);
    }
  }
  for (auto [t, v] : {std::pair{c, gc}, std::pair{d, gd}}) {
    if (std::isfinite(v) && v > hi.value) hi = {t, v};
  }
  return {hi, lo};
}

double chart_constant(const EdgeChart& chart, double y_ref, int N) {
  const double cx = holder_quotient_constant(N, chart.x);
  const double cy = holder_quotient_constant(N, {chart.y.lo - y_ref, chart.y.hi - y_ref});
  const double cz = weight(chart.z.hi - chart.z.lo, N);
  return std::max({cx, cy, cz});
}

bool inside(const EdgeChart& c, const EdgePoint& p) {
  return p.x > 0.0 && p.x >= c.x.lo && p.x <= c.x.hi && p.y >= c.y.lo && p.y <= c.y.hi &&
         p.z >= c.z.lo && p.z <= c.z.hi;
}

EdgeMeanValueResult edge_check(const EdgeField& w, const EdgeChart& chart, EdgePoint p, EdgePoint q,
                               double y_ref, int N, int segment, double constant) {
  if (p.chart != q.chart || p.chart != chart.id) {
    std::ostringstream os;
    os << "appendix: points lie in charts " << p.chart << " and " << q.chart << ", expected both in "
       << chart.id;
    throw DomainError(os.str());
  }
  if (!inside(chart, p) || !inside(chart, q)) throw DomainError("appendix: point outside its chart");
  if (segment < 1) throw DomainError("appendix: segment sampling needs at least 1 interval");
  if (std::tie(q.x, q.y, q.z) < std::tie(p.x, p.y, p.z)) std::swap(p, q);

  EdgeMeanValueResult r;
  r.constant = constant;
  const double d = edge_distance(p, q);
  if (d == 0.0) return r;
  r.lhs = (w(p.x, p.y, p.z) - w(q.x, q.y, q.z)).norm() / std::pow(d, 1.0 / N);

  auto seg_sup = [&](double a, double b, auto&& g) {
    double m = 0.0;
    for (int k = 0; k <= segment; ++k) m = std::max(m, g(a + (b - a) * k / segment));
    return m;
  };
  r.radial = seg_sup(p.x, q.x, [&](double xi) {
    auto fn = [&](double s) { return w(s, p.y, p.z); };
    return weight(xi, N) * derivative_fd(fn, xi, chart.x.lo, chart.x.hi).norm();
  });
  r.edge = seg_sup(p.y, q.y, [&](double ga) {
    auto fn = [&](double s) { return w(q.x, s, p.z); };
    return weight(ga - y_ref, N) * derivative_fd(fn, ga, chart.y.lo, chart.y.hi).norm();
  });
  r.fibre = seg_sup(p.z, q.z, [&](double ze) {
    auto fn = [&](double s) { return w(q.x, q.y, s); };
    return std::pow(q.x, -1.0 / N) * derivative_fd(fn, ze, chart.z.lo, chart.z.hi).norm();
  });
  r.rhs = r.radial + r.edge + r.fibre;
  r.fitted_c = r.lhs == 0.0 ? 0.0 : r.lhs / r.rhs;
  return r;
}

}  // namespace

double holder_quotient_constant(int N, Interval K, int grid) {
  check_order(N);
  check_interval(K, "K");
  if (grid < 2) throw DomainError("appendix: quotient grid needs at least 2 points");
  std::vector<double> eta(grid), root(grid);
  for (int i = 0; i < grid; ++i) {
    eta[i] = i + 1 == grid ? K.hi : K.lo + (K.hi - K.lo) * i / (grid - 1);
    root[i] = signed_root(eta[i], N);
  }
  double best = 0.0;
  for (int i = 0; i < grid; ++i) {
    for (int j = i + 1; j < grid; ++j) {
      const double den = std::pow(eta[j] - eta[i], 1.0 / N);
      if (den > 0.0) best = std::max(best, N * std::abs(root[j] - root[i]) / den);
    }
  }
  return best;
}

MeanValueResult mean_value_bound_check(const MeanValueSample& s) {
  check_order(s.N);
  check_interval(s.K, "K");
  if (!s.omega) throw DomainError("appendix: sample has no function");
  double a = s.eta, b = s.eta_prime;
  if (a > b) std::swap(a, b);
  if (a < s.K.lo || b > s.K.hi) throw DomainError("appendix: eta, eta' must lie in K");

  MeanValueResult r;
  r.constant = s.constant ? *s.constant : holder_quotient_constant(s.N, s.K);
  r.delta_star = a;
  if (a == b) return r;

  auto dw = [&](double t) -> Eigen::VectorXd {
    if (s.derivative) return s.derivative(t);
    return derivative_fd(s.omega, t, s.K.lo, s.K.hi);
  };
  auto g = [&](double t) { return weight(t, s.N) * dw(t).norm(); };
  const auto [hi, lo] = extremes(g, a, b);
  const double step = std::pow(b - a, 1.0 / s.N);
  r.lhs = (s.omega(a) - s.omega(b)).norm();
  r.delta_star = hi.arg;
  r.rhs = r.constant * step * hi.value;
  r.rhs_min = r.constant * step * lo.value;
  if (r.lhs == 0.0) return r;
  r.ratio = r.rhs > 0.0 ? r.lhs / r.rhs : std::numeric_limits<double>::infinity();
  r.fitted_c = hi.value > 0.0 ? r.lhs / (step * hi.value) : std::numeric_limits<double>::infinity();
  return r;
}

MeanValueAudit mean_value_audit(const Curve& omega, const Curve& derivative, int N, Interval K,
                                int samples, std::uint64_t seed) {
  if (samples < 1) throw DomainError("appendix: audit needs at least one sample");
  MeanValueAudit audit;
  audit.samples = samples;
  audit.constant = holder_quotient_constant(N, K);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(K.lo, K.hi);
  MeanValueSample s{omega, derivative, 0.0, 0.0, N, K, audit.constant};
  for (int i = 0; i < samples; ++i) {
    s.eta = U(rng);
    s.eta_prime = U(rng);
    const auto r = mean_value_bound_check(s);
    if (r.fitted_c > audit.max_fitted_c) {
      audit.max_fitted_c = r.fitted_c;
      audit.worst_eta = s.eta;
      audit.worst_eta_prime = s.eta_prime;
    }
    audit.worst_ratio = std::max(audit.worst_ratio, r.ratio);
  }
  audit.holds = audit.max_fitted_c <= audit.constant + 1e-6;
  return audit;
}

double edge_distance(const EdgePoint& p, const EdgePoint& q) {
  const double dx = p.x - q.x, dy = p.y - q.y, dz = p.z - q.z, sx = p.x + q.x;
  return std::sqrt(dx * dx + sx * sx * dz * dz + dy * dy);
}

EdgeMeanValueResult edge_mean_value_check(const EdgeField& w, const EdgeChart& chart,
                                          const EdgePoint& p, const EdgePoint& q, double y_ref,
                                          int N, int segment) {
  check_order(N);
  return edge_check(w, chart, p, q, y_ref, N, segment, chart_constant(chart, y_ref, N));
}

EdgeAudit edge_mean_value_audit(const EdgeField& w, const EdgeChart& chart, double y_ref, int N,
                                int samples, std::uint64_t seed, int segment) {
  check_order(N);
  if (samples < 1) throw DomainError("appendix: audit needs at least one sample");
  EdgeAudit audit;
  audit.samples = samples;
  audit.constant = chart_constant(chart, y_ref, N);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  auto draw = [&] {
    EdgePoint p;
    p.chart = chart.id;
    // 1 - U lies in (0, 1], keeping x > 0
    p.x = chart.x.lo + (chart.x.hi - chart.x.lo) * (1.0 - U(rng));
    p.y = chart.y.lo + (chart.y.hi - chart.y.lo) * U(rng);
    p.z = chart.z.lo + (chart.z.hi - chart.z.lo) * U(rng);
    return p;
  };
  for (int i = 0; i < samples; ++i) {
    const auto p = draw();
    const auto q = draw();
    const auto r = edge_check(w, chart, p, q, y_ref, N, segment, audit.constant);
    audit.max_fitted_c = std::max(audit.max_fitted_c, r.fitted_c);
  }
  audit.holds = audit.max_fitted_c <= audit.constant;
  return audit;
}

}  // namespace edgeflow::appendix
