#include "edgeflow/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <type_traits>

#include "edgeflow/errors.hpp"
#include "edgeflow/grid.hpp"

namespace edgeflow::geometry {

namespace {

void check_nodes(const std::vector<double>& x) {
  if (x.size() < 5) {
    std::ostringstream os;
    os << "curvature: " << x.size() << " nodes are too few for second differences (need 5)";
    throw DomainError(os.str());
  }
}

void check_warp(const ConeMetric& m) {
  for (std::size_t i = 0; i < m.x.size(); ++i) {
    if (!(m.phi[i] > 0.0)) {
      std::ostringstream os;
      os << "cone metric: warp phi=" << m.phi[i] << " not positive at node " << i;
      throw DomainError(os.str());
    }
  }
}

double default_einstein(int f, std::optional<double> e) { return e ? *e : double(f - 1); }

Matrix inverse_checked(const Matrix& g, const std::string& where) {
  Eigen::FullPivLU<Matrix> lu(g);
  const double scale = g.cwiseAbs().maxCoeff();
  if (!lu.isInvertible() || !(scale > 0.0) ||
      std::abs(lu.determinant()) <= 1e-14 * std::pow(scale, g.rows())) {
    throw LinearAlgebraError("singular metric matrix " + where);
  }
  return lu.inverse();
}

// Fourth-order centred derivative of a matrix-valued map along e_k.
template <class F>
auto centred(F&& fn, const Point& p, int k, double h) ->
    typename std::decay_t<decltype(fn(p))>::PlainObject {
  Point a = p, b = p, c = p, d = p;
  a[k] += 2 * h;
  b[k] += h;
  c[k] -= h;
  d[k] -= 2 * h;
  using Plain = typename std::decay_t<decltype(fn(p))>::PlainObject;
  const Plain fa = fn(a), fb = fn(b), fc = fn(c), fd = fn(d);
  return ((fb - fc) * 8.0 - (fa - fd)) / (12.0 * h);
}

Christoffel assemble_christoffel(const Matrix& ginv, const std::vector<Matrix>& dg) {
  // dg[k](i, j) = d_k g_ij
  const int n = static_cast<int>(ginv.rows());
  Christoffel gamma(n, Matrix::Zero(n, n));
  for (int j = 0; j < n; ++j) {
    for (int p = 0; p < n; ++p) {
      for (int q = p; q < n; ++q) {
        double acc = 0.0;
        for (int m = 0; m < n; ++m) {
          acc += ginv(j, m) * (dg[p](m, q) + dg[q](m, p) - dg[m](p, q));
        }
        gamma[j](p, q) = gamma[j](q, p) = 0.5 * acc;
      }
    }
  }
  return gamma;
}

Matrix symmetrised(const Matrix& g) { return 0.5 * (g + g.transpose()); }

CurvatureTensors from_sectional(const ConeMetric& m, std::vector<double> radial,
                                std::vector<double> fibre) {
  CurvatureTensors c;
  const int f = m.f;
  const int n = static_cast<int>(m.x.size());
  c.f = f;
  c.x = m.x;
  c.radial = std::move(radial);
  c.fibre = std::move(fibre);
  c.ricci_radial.resize(n);
  c.ricci_fibre.resize(n);
  c.scal.resize(n);
  c.tracefree_radial.resize(n);
  c.tracefree_fibre.resize(n);
  const double dim = f + 1;
  for (int i = 0; i < n; ++i) {
    const double kr = c.radial[i], kf = c.fibre[i];
    c.ricci_radial[i] = f * kr;
    c.ricci_fibre[i] = kr + (f - 1) * kf;
    c.scal[i] = 2.0 * f * kr + f * (f - 1.0) * kf;
    // Ric - scal/m g, written so the trace cancels term by term
    c.tracefree_radial[i] = f * (f - 1.0) * (kr - kf) / dim;
    c.tracefree_fibre[i] = -(f - 1.0) * (kr - kf) / dim;
  }
  return c;
}

}  // namespace

ConeMetric exact_cone(const std::vector<double>& x, int f, double c,
                      std::optional<double> einstein_constant) {
  if (f < 1) throw DomainError("exact_cone: f must be >= 1");
  if (!(c > 0.0)) throw DomainError("exact_cone: cone constant c must be > 0");
  ConeMetric m;
  m.f = f;
  m.x = x;
  m.einstein_constant = default_einstein(f, einstein_constant);
  m.exact_cone = true;
  m.cone_c = c;
  for (double xi : x) {
    m.phi.push_back(c * xi);
    m.dphi.push_back(c);
    m.ddphi.push_back(0.0);
  }
  check_warp(m);
  return m;
}

ConeMetric warped_from_samples(const std::vector<double>& x, int f, const std::vector<double>& phi,
                               std::optional<double> einstein_constant) {
  check_nodes(x);
  ConeMetric m;
  m.f = f;
  m.x = x;
  m.phi = phi;
  m.einstein_constant = default_einstein(f, einstein_constant);
  check_warp(m);
  m.dphi = differentiate(x, phi, 1);
  m.ddphi = differentiate(x, phi, 2);
  return m;
}

ConeMetric warped_from_functions(const std::vector<double>& x, int f,
                                 const std::function<double(double)>& phi,
                                 const std::function<double(double)>& dphi,
                                 const std::function<double(double)>& ddphi,
                                 std::optional<double> einstein_constant) {
  ConeMetric m;
  m.f = f;
  m.x = x;
  m.einstein_constant = default_einstein(f, einstein_constant);
  for (double xi : x) {
    m.phi.push_back(phi(xi));
    m.dphi.push_back(dphi(xi));
    m.ddphi.push_back(ddphi(xi));
  }
  check_warp(m);
  return m;
}

double CurvatureTensors::riemann(int node, int a, int b, int c, int d) const {
  if (a == b || c == d) return 0.0;
  const double k = (a == 0 || b == 0) ? radial[node] : fibre[node];
  return k * ((a == d && b == c ? 1.0 : 0.0) - (a == c && b == d ? 1.0 : 0.0));
}

double CurvatureTensors::ricci(int node, int a, int b) const {
  if (a != b) return 0.0;
  return a == 0 ? ricci_radial[node] : ricci_fibre[node];
}

double CurvatureTensors::tracefree_trace(int node) const {
  return tracefree_radial[node] + f * tracefree_fibre[node];
}

CurvatureTensors curvature(const ConeMetric& m) {
  check_warp(m);
  const int n = static_cast<int>(m.x.size());
  std::vector<double> radial(n), fibre(n, 0.0);
  const double kappa = m.kappa();
  for (int i = 0; i < n; ++i) {
    radial[i] = -m.ddphi[i] / m.phi[i];
    if (m.f >= 2) {
      const double d = m.dphi[i];
      fibre[i] = (kappa - d * d) / (m.phi[i] * m.phi[i]);
    }
  }
  return from_sectional(m, std::move(radial), std::move(fibre));
}

ConformalSectional conformal_sectional_on_background(double K_radial, double K_fibre, double w,
                                                     double dw, double psi, double dpsi,
                                                     double ddpsi) {
  // H = Hess psi - dpsi (x) dpsi + |dpsi|^2 g / 2 in the frame of g.
  const double h_xx = ddpsi - 0.5 * dpsi * dpsi;
  const double h_ff = dpsi * dw / w + 0.5 * dpsi * dpsi;
  const double e2 = std::exp(2.0 * psi);
  return {e2 * (K_radial - h_xx - h_ff), e2 * (K_fibre - 2.0 * h_ff)};
}

CurvatureTensors conformal_curvature(const ConeMetric& m, const std::vector<double>& psi,
                                     const std::vector<double>& dpsi,
                                     const std::vector<double>& ddpsi) {
  const auto base = curvature(m);
  const int n = static_cast<int>(m.x.size());
  if (static_cast<int>(psi.size()) != n || static_cast<int>(dpsi.size()) != n ||
      static_cast<int>(ddpsi.size()) != n) {
    throw DomainError("conformal_curvature: psi samples do not match the grid");
  }
  std::vector<double> radial(n), fibre(n);
  for (int i = 0; i < n; ++i) {
    const auto s = conformal_sectional_on_background(base.radial[i], base.fibre[i], m.phi[i],
                                                     m.dphi[i], psi[i], dpsi[i], ddpsi[i]);
    // new orthonormal frame is e^{-psi} times the old one
    const double e4 = std::exp(-4.0 * psi[i]);
    radial[i] = s.radial * e4;
    fibre[i] = m.f >= 2 ? s.fibre * e4 : 0.0;
  }
  return from_sectional(m, std::move(radial), std::move(fibre));
}

CurvatureTensors conformal_curvature(const ConeMetric& m, const std::vector<double>& psi) {
  check_nodes(m.x);
  return conformal_curvature(m, psi, differentiate(m.x, psi, 1), differentiate(m.x, psi, 2));
}

Christoffel christoffel(const MetricFn& g, const Point& p, double h) {
  const Matrix g0 = symmetrised(g(p));
  const int n = static_cast<int>(g0.rows());
  if (p.size() != n) throw DomainError("christoffel: point and metric dimensions differ");
  const Matrix ginv = inverse_checked(g0, "at the evaluation point");
  std::vector<Matrix> dg(n);
  auto gs = [&](const Point& q) -> Matrix { return symmetrised(g(q)); };
  for (int k = 0; k < n; ++k) dg[k] = centred(gs, p, k, h);
  return assemble_christoffel(ginv, dg);
}

std::vector<Christoffel> christoffel_on_grid(const std::vector<double>& x,
                                             const std::vector<Matrix>& metric) {
  check_nodes(x);
  const int nodes = static_cast<int>(x.size());
  if (static_cast<int>(metric.size()) != nodes) {
    throw DomainError("christoffel_on_grid: one metric matrix per node required");
  }
  const int n = static_cast<int>(metric[0].rows());
  // d_x g_ij along the grid; other coordinates do not enter.
  std::vector<Matrix> dgx(nodes, Matrix::Zero(n, n));
  std::vector<double> comp(nodes);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      for (int k = 0; k < nodes; ++k) comp[k] = 0.5 * (metric[k](i, j) + metric[k](j, i));
      const auto d = differentiate(x, comp, 1);
      for (int k = 0; k < nodes; ++k) dgx[k](i, j) = dgx[k](j, i) = d[k];
    }
  }
  std::vector<Christoffel> out;
  out.reserve(nodes);
  for (int k = 0; k < nodes; ++k) {
    const Matrix ginv = inverse_checked(symmetrised(metric[k]), "at node " + std::to_string(k));
    std::vector<Matrix> dg(n, Matrix::Zero(n, n));
    dg[0] = dgx[k];
    out.push_back(assemble_christoffel(ginv, dg));
  }
  return out;
}

CoordinateRiemann riemann_fd(const MetricFn& g, const Point& p, double h) {
  const int n = static_cast<int>(p.size());
  const double inner = std::min(1e-4, h / 10.0);
  // dGamma[c][a](d, b) = d_c Gamma^a_{db}
  std::vector<Christoffel> dgamma(n);
  for (int c = 0; c < n; ++c) {
    Point a2 = p, a1 = p, m1 = p, m2 = p;
    a2[c] += 2 * h;
    a1[c] += h;
    m1[c] -= h;
    m2[c] -= 2 * h;
    const auto G2 = christoffel(g, a2, inner), G1 = christoffel(g, a1, inner);
    const auto M1 = christoffel(g, m1, inner), M2 = christoffel(g, m2, inner);
    dgamma[c].resize(n);
    for (int a = 0; a < n; ++a) {
      dgamma[c][a] = ((G1[a] - M1[a]) * 8.0 - (G2[a] - M2[a])) / (12.0 * h);
    }
  }
  const auto G = christoffel(g, p, inner);
  const Matrix g0 = symmetrised(g(p));
  // Rup(a, b, c, d) = R^a_{bcd}: R(d_c, d_d) d_b = R^a_{bcd} d_a
  std::vector<double> rup(n * n * n * n, 0.0);
  auto idx = [n](int a, int b, int c, int d) { return ((a * n + b) * n + c) * n + d; };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          double v = dgamma[c][a](d, b) - dgamma[d][a](c, b);
          for (int e = 0; e < n; ++e) v += G[a](c, e) * G[e](d, b) - G[a](d, e) * G[e](c, b);
          rup[idx(a, b, c, d)] = v;
        }
  CoordinateRiemann R;
  R.n = n;
  R.data.assign(n * n * n * n, 0.0);
  // R(a, b, c, d) = g(R(d_a, d_b) d_c, d_d) = g_{de} R^e_{cab}
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          double v = 0.0;
          for (int e = 0; e < n; ++e) v += g0(d, e) * rup[idx(e, c, a, b)];
          R.at(a, b, c, d) = v;
        }
  return R;
}

double sectional_fd(const MetricFn& g, const Point& p, int a, int b, double h) {
  const auto R = riemann_fd(g, p, h);
  const Matrix g0 = symmetrised(g(p));
  const double area = g0(a, a) * g0(b, b) - g0(a, b) * g0(a, b);
  return R(a, b, b, a) / area;
}

Point deturck_field(const MetricFn& g_t, const MetricFn& g_ref, const Point& p, double h) {
  const auto Gt = christoffel(g_t, p, h);
  const auto Gr = christoffel(g_ref, p, h);
  const Matrix ginv = inverse_checked(symmetrised(g_t(p)), "(g_t) in deturck_field");
  const int n = static_cast<int>(p.size());
  Point W = Point::Zero(n);
  for (int j = 0; j < n; ++j) W[j] = -(ginv.cwiseProduct(Gt[j] - Gr[j])).sum();
  return W;
}

DeturckProfile deturck_field_on_grid(const std::vector<double>& x, const std::vector<Matrix>& g_t,
                                     const std::vector<Matrix>& g_ref) {
  const auto Gt = christoffel_on_grid(x, g_t);
  const auto Gr = christoffel_on_grid(x, g_ref);
  DeturckProfile out;
  out.x = x;
  const int nodes = static_cast<int>(x.size());
  for (int k = 0; k < nodes; ++k) {
    const Matrix ginv = inverse_checked(symmetrised(g_t[k]), "at node " + std::to_string(k));
    const int n = static_cast<int>(ginv.rows());
    Point W = Point::Zero(n);
    for (int j = 0; j < n; ++j) W[j] = -(ginv.cwiseProduct(Gt[k][j] - Gr[k][j])).sum();
    Point ie = W;
    for (int j = 1; j < n; ++j) ie[j] *= x[k];
    out.coordinate.push_back(W);
    out.ie_frame.push_back(ie);
  }
  const int inner = std::min(3, nodes);
  for (int k = 0; k < inner; ++k) {
    if (out.coordinate[k][0] < 0.0) out.inward_pointing = false;
  }
  return out;
}

bool Box::contains(const Point& p) const {
  for (int i = 0; i < p.size(); ++i) {
    if (p[i] < lo[i] || p[i] > hi[i]) return false;
  }
  return true;
}

double pullback_consistency(const MetricFn& g, const VectorFn& W, double dt,
                            const std::vector<Point>& samples, const Box& domain, double h) {
  double defect = 0.0;
  for (const auto& p : samples) {
    const Point w = W(p);
    const Point q = p + dt * w;
    if (!domain.contains(p) || !domain.contains(q)) {
      std::ostringstream os;
      os << "pullback_consistency: Euler flow map leaves the domain (from " << p.transpose()
         << " to " << q.transpose() << ")";
      throw DomainError(os.str());
    }
    const int n = static_cast<int>(p.size());
    Matrix DW(n, n);  // DW(k, i) = d_i W^k
    for (int i = 0; i < n; ++i) DW.col(i) = centred(W, p, i, h);
    const Matrix g0 = symmetrised(g(p));
    Matrix lie = g0 * DW + DW.transpose() * g0;
    for (int k = 0; k < n; ++k) {
      auto gs = [&](const Point& r) -> Matrix { return symmetrised(g(r)); };
      lie += w[k] * centred(gs, p, k, h);
    }
    const Matrix J = Matrix::Identity(n, n) + dt * DW;
    const Matrix pulled = J.transpose() * symmetrised(g(q)) * J;
    defect = std::max(defect, (pulled - g0 - dt * lie).cwiseAbs().maxCoeff());
  }
  return defect;
}

LogLogFit loglog_fit(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || y[i] == 0.0 || !std::isfinite(y[i])) continue;
    const double lx = std::log(x[i]), ly = std::log(std::abs(y[i]));
    pts.emplace_back(lx, ly);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  if (n < 3) throw FitError("log-log fit: fewer than 3 usable points");
  const double denom = n * sxx - sx * sx;
  if (!(denom > 0.0)) throw FitError("log-log fit: degenerate abscissae");
  LogLogFit fit;
  fit.points = n;
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  double ss_res = 0.0, ss_tot = 0.0;
  const double mean = sy / n;
  for (auto [lx, ly] : pts) {
    const double r = ly - (fit.intercept + fit.slope * lx);
    ss_res += r * r;
    ss_tot += (ly - mean) * (ly - mean);
  }
  fit.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : (ss_res == 0.0 ? 1.0 : 0.0);
  return fit;
}

RegularityReport regularity_report(const ConeMetric& m, double x_lo, double x_hi) {
  if (!(x_lo > 0.0 && x_hi > x_lo)) throw DomainError("regularity_report: need 0 < x_lo < x_hi");
  if (m.x.empty() || x_lo < m.x.front() * (1 - 1e-12) || x_hi > m.x.back() * (1 + 1e-12)) {
    throw DomainError("regularity_report: window outside grid support");
  }
  const auto c = curvature(m);
  std::vector<double> xs;
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < m.x.size(); ++i) {
    if (m.x[i] >= x_lo && m.x[i] <= x_hi) {
      xs.push_back(m.x[i]);
      idx.push_back(i);
    }
  }
  if (xs.size() < 3) throw FitError("regularity_report: fewer than 3 nodes in window");
  RegularityReport rep;
  auto fit_component = [&](const std::string& name, const std::vector<double>& values) {
    std::vector<double> ys;
    double scaled_max = 0.0;
    for (std::size_t k = 0; k < idx.size(); ++k) {
      ys.push_back(values[idx[k]]);
      scaled_max = std::max(scaled_max, std::abs(values[idx[k]]) * xs[k] * xs[k]);
    }
    ExponentFit e;
    e.component = name;
    if (scaled_max <= 1e-9) {
      e.vanishing = true;
    } else {
      const auto fit = loglog_fit(xs, ys);
      e.slope = fit.slope;
      double ss = 0.0;
      for (std::size_t k = 0; k < xs.size(); ++k) {
        const double r = std::log(std::abs(ys[k])) - fit.intercept - fit.slope * std::log(xs[k]);
        ss += r * r;
      }
      e.residual = std::sqrt(ss / xs.size());
    }
    rep.exponents.push_back(e);
    return e;
  };
  std::vector<ExponentFit> curv;
  curv.push_back(fit_component("R radial", c.radial));
  if (m.f >= 2) curv.push_back(fit_component("R fibre", c.fibre));
  const auto scal = fit_component("scal", c.scal);
  const auto tr = fit_component("Ric' radial", c.tracefree_radial);
  const auto tf = fit_component("Ric' fibre", c.tracefree_fibre);

  rep.curvature_clause = true;
  for (const auto& e : curv) {
    if (!e.vanishing && e.slope < -2.0 - 1e-3) rep.curvature_clause = false;
  }
  std::optional<double> min_slope;
  for (const auto& e : {scal, tr, tf}) {
    if (!e.vanishing) min_slope = min_slope ? std::min(*min_slope, e.slope) : e.slope;
  }
  if (!min_slope) {
    rep.weight_clause = true;
    rep.verdict = "γ unconstrained (vanishing curvature)";
  } else {
    rep.gamma_fit = 2.0 + *min_slope;
    rep.weight_clause = *rep.gamma_fit > 0.0;
    std::ostringstream os;
    os << "gamma_fit = " << *rep.gamma_fit;
    rep.verdict = os.str();
  }
  return rep;
}

BdfRenormalization renormalize_bdf(double u0) {
  if (!(u0 > -1.0)) {
    std::ostringstream os;
    os << "renormalize_bdf: u0=" << u0 << " <= -1 gives a degenerate metric";
    throw DomainError(os.str());
  }
  BdfRenormalization r;
  r.u0 = u0;
  r.scale = std::sqrt(1.0 + u0);
  std::ostringstream os;
  os << "x~ = " << r.scale << " x; (1+u0)(dx^2 + x^2 g_F) = dx~^2 + x~^2 g_F";
  r.description = os.str();
  return r;
}

LogLogFit bdf_residual_decay(double u0, const std::vector<double>& x, const std::vector<double>& u) {
  renormalize_bdf(u0);
  if (x.size() != u.size()) throw DomainError("bdf_residual_decay: size mismatch");
  std::vector<double> r(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!(1.0 + u[i] > 0.0)) throw StateError("bdf_residual_decay: 1 + u <= 0");
    r[i] = (u[i] - u0) / (1.0 + u0);
  }
  return loglog_fit(x, r);
}

}  // namespace edgeflow::geometry
