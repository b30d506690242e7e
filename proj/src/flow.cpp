#include "edgeflow/flow.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "edgeflow/errors.hpp"
#include "edgeflow/specfun.hpp"

namespace edgeflow::flow {

std::string mode_name(Mode m) { return m == Mode::ShortTime ? "short-time" : "flat-long-time"; }

Mode parse_mode(const std::string& s) {
  if (s == "short-time") return Mode::ShortTime;
  if (s == "flat-long-time") return Mode::FlatLongTime;
  throw ValidationError("unknown flow mode '" + s + "' (short-time | flat-long-time)");
}

std::string profile_name(Profile p) { return p == Profile::GroundMode ? "ground-mode" : "bump"; }

Profile parse_profile(const std::string& s) {
  if (s == "ground-mode") return Profile::GroundMode;
  if (s == "bump") return Profile::Bump;
  throw ValidationError("unknown initial profile '" + s + "' (ground-mode | bump)");
}

double mu_trace(int f) { return 0.5 * (f - 1); }
double mu_tracefree(int f) { return 0.5 * (f + 3); }

void validate(const FlowConfig& c) {
  auto fail = [](const std::string& m) { throw ValidationError("flow config: " + m); };
  if (c.f < 1) fail("f must be >= 1");
  if (!(c.cone_c > 0.0)) fail("cone_c must be > 0");
  if (c.n_space < 10) fail("n_space must be >= 10");
  if (!(c.x_max > 0.0)) fail("x_max must be > 0");
  if (!(c.grading >= 1.0)) fail("grading must be >= 1");
  if (!(c.t_end > 0.0)) fail("t_end must be > 0");
  if (c.modes < 0) fail("modes must be >= 0");
  if (!(c.tol > 0.0)) fail("tol must be > 0");
  if (c.max_iters < 1) fail("max_iters must be >= 1");
  if (!(c.weights.alpha > 0.0 && c.weights.alpha < 1.0)) fail("alpha must lie in (0, 1)");
  if (!(c.decay_from >= 0.0 && c.decay_from < 1.0)) fail("decay_from must lie in [0, 1)");
  if (c.mode == Mode::FlatLongTime && c.f >= 2 && c.cone_c != 1.0) {
    fail("flat-long-time mode needs a flat background (f = 1, or cone_c = 1)");
  }
  if (c.n_time < 5) {
    std::ostringstream os;
    os << "time grid with " << c.n_time
       << " points is too coarse for the Duhamel convolution; use n_time >= 5";
    throw QuadratureError(os.str());
  }
}

double PerturbationState::min_metric_factor(int f) const {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < u.size(); ++k) {
    for (std::size_t i = 0; i < u[k].size(); ++i) {
      const double a = u[k][i], w = omega[k][i];
      m = std::min({m, 1.0 + a, 1.0 + a + f * w, 1.0 + a - w});
    }
  }
  return m;
}

namespace {

int mode_count(const FlowConfig& c, const RadialGrid& g) {
  return c.modes > 0 ? c.modes : modeheat::default_mode_count(g);
}

RadialGrid grid_for(const FlowConfig& c) {
  validate(c);
  return make_radial_grid(c.n_space, c.x_max, c.grading, c.f);
}

// Per-node ingredients of the warped metric P dx^2 + phi^2 S g_F.
struct Local {
  double a, b, P, S, a1, a2, b1, b2;  // P = 1 + a, S = 1 + b
  double phi, dphi, ddphi;
};

struct Pointwise {
  double kr, kf, q_p, q_s;
};

Pointwise evaluate(const Local& l, int f, double kappa) {
  const double P = l.P, S = l.S;
  const double beta = std::sqrt(S);
  const double db = l.b1 / (2 * beta);                               // beta'
  const double ddb = l.b2 / (2 * beta) - l.b1 * l.b1 / (4 * beta * S);  // beta''
  const double r1 = l.dphi / l.phi;                                  // phi'/phi
  const double r2 = l.ddphi / l.phi;                                 // phi''/phi
  const double Bp_B = r1 + db / beta;
  const double Bpp_B = r2 + 2 * r1 * db / beta + ddb / beta;
  const double Ap_A = l.a1 / (2 * P);
  Pointwise out{};
  out.kr = (-Bpp_B + Bp_B * Ap_A) / P;
  // kappa - B'^2/A^2 with the O(1) parts cancelled analytically
  const double omega_part = l.a - l.b;
  const double num = (kappa - l.dphi * l.dphi) +
                     (l.dphi * l.dphi * omega_part - l.phi * l.dphi * l.b1 -
                      l.phi * l.phi * db * db) / P;
  out.kf = f >= 2 ? num / (l.phi * l.phi * S) : 0.0;

  // de Turck field W = g_t^{pq}(Gamma(g_t) - Gamma(g))^x_pq and its derivative
  const double PS = P * S;
  const double dPS = l.a1 * S + P * l.b1;
  const double SmP = l.b - l.a;
  const double W = l.a1 / (2 * P * P) - f * r1 * SmP / PS - f * l.b1 / (2 * PS);
  const double dr1 = r2 - r1 * r1;
  const double dW = l.a2 / (2 * P * P) - l.a1 * l.a1 / (P * P * P) -
                    f * (dr1 * SmP / PS + r1 * ((l.b1 - l.a1) / PS - SmP * dPS / (PS * PS))) -
                    f * (l.b2 / (2 * PS) - l.b1 * dPS / (2 * PS * PS));
  out.q_p = -2 * P * f * out.kr + W * l.a1 + 2 * P * dW;
  out.q_s = -2 * S * (out.kr + (f - 1) * out.kf) + W * (2 * r1 * S + l.b1);
  return out;
}

}  // namespace

FlowProblem::FlowProblem(const FlowConfig& config)
    : config_(config),
      grid_(grid_for(config)),
      background_(geometry::exact_cone(grid_.nodes, config.f, config.cone_c,
                                       config.einstein_constant)),
      basis_u_(modeheat::ModeKernelSpec{mu_trace(config.f), config.f, std::nullopt}, grid_,
               mode_count(config, grid_)),
      basis_w_(modeheat::ModeKernelSpec{mu_tracefree(config.f), config.f, std::nullopt}, grid_,
               mode_count(config, grid_)) {
  const int n = config.n_time;
  times_.resize(n);
  for (int k = 0; k < n; ++k) times_[k] = config.t_end * k / (n - 1);
}

namespace {

template <class Fn>
void for_nodes(const RadialGrid& grid, const geometry::ConeMetric& bg, const std::vector<double>& u,
               const std::vector<double>& w, int f, Fn&& fn) {
  const int n = grid.size();
  if (static_cast<int>(u.size()) != n || static_cast<int>(w.size()) != n) {
    throw DomainError("flow: field size differs from the grid");
  }
  const auto u1 = differentiate(grid.nodes, u, 1), u2 = differentiate(grid.nodes, u, 2);
  const auto w1 = differentiate(grid.nodes, w, 1), w2 = differentiate(grid.nodes, w, 2);
  for (int i = 0; i < n; ++i) {
    Local l{};
    l.a = u[i] + f * w[i];
    l.b = u[i] - w[i];
    l.P = 1.0 + l.a;
    l.S = 1.0 + l.b;
    if (!(l.P > 0.0) || !(l.S > 0.0) || !(1.0 + u[i] > 0.0)) {
      std::ostringstream os;
      os << "flow: metric degenerates at node " << i << " (x=" << grid.nodes[i]
         << ", 1+u=" << 1.0 + u[i] << ", omega=" << w[i] << ")";
      throw StateError(os.str());
    }
    l.a1 = u1[i] + f * w1[i];
    l.a2 = u2[i] + f * w2[i];
    l.b1 = u1[i] - w1[i];
    l.b2 = u2[i] - w2[i];
    l.phi = bg.phi[i];
    l.dphi = bg.dphi[i];
    l.ddphi = bg.ddphi[i];
    fn(i, l, u1[i], u2[i], w1[i], w2[i]);
  }
}

}  // namespace

Sources FlowProblem::ricci_deturck(const std::vector<double>& u,
                                   const std::vector<double>& omega) const {
  const int f = config_.f;
  const double kappa = background_.kappa();
  Sources s;
  s.trace.resize(grid_.size());
  s.tracefree.resize(grid_.size());
  for_nodes(grid_, background_, u, omega, f, [&](int i, const Local& l, double, double, double, double) {
    const auto p = evaluate(l, f, kappa);
    s.trace[i] = (p.q_p + f * p.q_s) / (f + 1);
    s.tracefree[i] = (p.q_p - p.q_s) / (f + 1);
  });
  return s;
}

Sources FlowProblem::rhs(const std::vector<double>& u, const std::vector<double>& omega) const {
  const int f = config_.f;
  const double kappa = background_.kappa();
  const double a = 0.5 * (f - 1);
  const double pot_w = mu_tracefree(f) * mu_tracefree(f) - a * a;  // 2(f+1)
  Sources s;
  s.trace.resize(grid_.size());
  s.tracefree.resize(grid_.size());
  for_nodes(grid_, background_, u, omega, f,
            [&](int i, const Local& l, double du, double ddu, double dw, double ddw) {
              const double x = grid_.nodes[i];
              const auto p = evaluate(l, f, kappa);
              const double lu = -ddu - f * du / x;
              const double lw = -ddw - f * dw / x + pot_w * omega[i] / (x * x);
              s.trace[i] = (p.q_p + f * p.q_s) / (f + 1) + lu;
              s.tracefree[i] = (p.q_p - p.q_s) / (f + 1) + lw;
            });
  return s;
}

Sources FlowProblem::rhs_F(const PerturbationState& state, int t_index) const {
  if (t_index < 0 || t_index >= static_cast<int>(state.u.size())) {
    throw DomainError("rhs_F: time index out of range");
  }
  return rhs(state.u[t_index], state.omega[t_index]);
}

std::pair<std::vector<double>, std::vector<double>> FlowProblem::perturbed_curvature(
    const std::vector<double>& u, const std::vector<double>& omega) const {
  std::vector<double> kr(grid_.size()), kf(grid_.size());
  for_nodes(grid_, background_, u, omega, config_.f,
            [&](int i, const Local& l, double, double, double, double) {
              const auto p = evaluate(l, config_.f, background_.kappa());
              kr[i] = p.kr;
              kf[i] = p.kf;
            });
  return {kr, kf};
}

KernelElement FlowProblem::initial_data() const {
  KernelElement v;
  const int n = grid_.size();
  v.u.assign(n, 0.0);
  v.omega.assign(n, 0.0);
  auto fill = [&](std::vector<double>& out, const modeheat::DirichletBasis& b, double amp) {
    if (amp == 0.0) return;
    if (config_.profile == Profile::GroundMode) {
      const auto& g = b.sampled(0);
      double peak = 0.0;
      for (double y : g) peak = std::max(peak, std::abs(y));
      for (int i = 0; i < n; ++i) out[i] = amp * g[i] / peak;
    } else {
      const double L = grid_.x_max;
      for (int i = 0; i < n; ++i) {
        const double s = grid_.nodes[i];
        const double q = 4.0 * s * (L - s) / (L * L);
        out[i] = amp * q * q;
      }
    }
  };
  fill(v.u, basis_u_, config_.amplitude_u);
  fill(v.omega, basis_w_, config_.amplitude_omega);
  return v;
}

PerturbationState FlowProblem::heat(const KernelElement& initial) const {
  return duhamel(initial, {});
}

namespace {

// h-scaled weights of the linear interpolant's endpoint values in
// int_0^h e^{-lambda (h - s)} c(s) ds.
void product_weights(double z, double& w_left, double& w_right) {
  if (z < 1e-4) {
    w_right = 0.5 - z / 6.0 + z * z / 24.0;
    const double phi1 = 1.0 - z / 2.0 + z * z / 6.0;
    w_left = phi1 - w_right;
    return;
  }
  const double e = std::exp(-z);
  const double phi1 = -std::expm1(-z) / z;
  w_right = (z - 1.0 + e) / (z * z);
  w_left = phi1 - w_right;
}

void propagate_component(const modeheat::DirichletBasis& basis, const std::vector<double>& initial,
                         const std::vector<std::vector<double>>* sources,
                         const std::vector<double>& times, std::vector<std::vector<double>>& out) {
  const int nt = static_cast<int>(times.size());
  const int m = basis.modes();
  const auto& lam = basis.eigenvalues();
  out.assign(nt, {});
  out[0] = initial;
  const auto c0 = basis.project(initial);
  std::vector<std::vector<double>> d;
  if (sources) {
    d.reserve(nt);
    for (const auto& s : *sources) d.push_back(basis.project(s));
  }
  std::vector<double> acc(m, 0.0), coeff(m);
  for (int k = 1; k < nt; ++k) {
    const double h = times[k] - times[k - 1];
    for (int j = 0; j < m; ++j) {
      if (sources) {
        double wl = 0.0, wr = 0.0;
        product_weights(lam[j] * h, wl, wr);
        acc[j] = std::exp(-lam[j] * h) * acc[j] + h * (wl * d[k - 1][j] + wr * d[k][j]);
      }
      coeff[j] = c0[j] * std::exp(-lam[j] * times[k]) + acc[j];
    }
    out[k] = basis.reconstruct(coeff);
  }
}

}  // namespace

PerturbationState FlowProblem::duhamel(const KernelElement& initial,
                                       const std::vector<Sources>& sources) const {
  const int nt = static_cast<int>(times_.size());
  if (!sources.empty() && static_cast<int>(sources.size()) != nt) {
    throw DomainError("duhamel: one source slice per time required");
  }
  PerturbationState s;
  s.times = times_;
  if (sources.empty()) {
    propagate_component(basis_u_, initial.u, nullptr, times_, s.u);
    propagate_component(basis_w_, initial.omega, nullptr, times_, s.omega);
    return s;
  }
  std::vector<std::vector<double>> tr(nt), tf(nt);
  for (int k = 0; k < nt; ++k) {
    tr[k] = sources[k].trace;
    tf[k] = sources[k].tracefree;
  }
  propagate_component(basis_u_, initial.u, &tr, times_, s.u);
  propagate_component(basis_w_, initial.omega, &tf, times_, s.omega);
  return s;
}

PerturbationState FlowProblem::picard_step(const PerturbationState& state,
                                           const KernelElement& initial) const {
  const int nt = static_cast<int>(times_.size());
  if (static_cast<int>(state.u.size()) != nt) throw DomainError("picard_step: state time grid mismatch");
  std::vector<Sources> src(nt);
  for (int k = 0; k < nt; ++k) src[k] = rhs_F(state, k);
  return duhamel(initial, src);
}

namespace {

holder::SampledField as_field(const RadialGrid& g, const std::vector<double>& t,
                              const std::vector<std::vector<double>>& v) {
  return holder::SampledField{g.nodes, t, v};
}

}  // namespace

double FlowProblem::state_norm(const PerturbationState& s) const {
  const auto& w = config_.weights;
  return holder::weighted_norm(as_field(grid_, s.times, s.u), w.alpha, w.gamma_trace) +
         holder::weighted_norm(as_field(grid_, s.times, s.omega), w.alpha, w.gamma_tracefree);
}

double FlowProblem::difference_norm(const PerturbationState& a, const PerturbationState& b) const {
  PerturbationState d = a;
  for (std::size_t k = 0; k < d.u.size(); ++k) {
    for (std::size_t i = 0; i < d.u[k].size(); ++i) {
      d.u[k][i] -= b.u[k][i];
      d.omega[k][i] -= b.omega[k][i];
    }
  }
  return state_norm(d);
}

double FlowProblem::inner(const KernelElement& a, const KernelElement& b) const {
  const int f = config_.f;
  std::vector<double> terms(grid_.size());
  for (int i = 0; i < grid_.size(); ++i) {
    terms[i] = (f + 1.0) * a.u[i] * b.u[i] + f * (f + 1.0) * a.omega[i] * b.omega[i];
  }
  return grid_.integrate(terms);
}

Split kernel_projection(const FlowProblem& problem, const KernelElement& v,
                        const std::vector<KernelElement>& basis) {
  Split out;
  out.parallel.u.assign(v.u.size(), 0.0);
  out.parallel.omega.assign(v.omega.size(), 0.0);
  out.perp = v;
  const int m = static_cast<int>(basis.size());
  if (m == 0) return out;
  Eigen::MatrixXd G(m, m);
  Eigen::VectorXd r(m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) G(i, j) = problem.inner(basis[i], basis[j]);
    r[i] = problem.inner(basis[i], v);
  }
  out.gram_defect = (G - Eigen::MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(G);
  const double lo = eig.eigenvalues().minCoeff(), hi = eig.eigenvalues().maxCoeff();
  if (!(lo > 0.0) || hi / lo > 1e12) {
    std::ostringstream os;
    os << "kernel_projection: Gram matrix ill-conditioned (eigenvalues " << lo << " .. " << hi << ")";
    throw BasisError(os.str());
  }
  const Eigen::VectorXd c = G.ldlt().solve(r);
  for (int k = 0; k < m; ++k) {
    for (std::size_t i = 0; i < v.u.size(); ++i) {
      out.parallel.u[i] += c[k] * basis[k].u[i];
      out.parallel.omega[i] += c[k] * basis[k].omega[i];
    }
  }
  for (std::size_t i = 0; i < v.u.size(); ++i) {
    out.perp.u[i] = v.u[i] - out.parallel.u[i];
    out.perp.omega[i] = v.omega[i] - out.parallel.omega[i];
  }
  return out;
}

DecayFit decay_rate(const std::vector<double>& t, const std::vector<double>& y, double t_lo,
                    double t_hi) {
  DecayFit fit;
  std::vector<double> ts, ls;
  for (std::size_t k = 0; k < t.size() && k < y.size(); ++k) {
    if (t[k] < t_lo || t[k] > t_hi) continue;
    if (!(y[k] > 0.0) || !std::isfinite(y[k])) {
      fit.verdict = "no fit: trajectory not positive on the window";
      return fit;
    }
    ts.push_back(t[k]);
    ls.push_back(std::log(y[k]));
  }
  const int n = static_cast<int>(ts.size());
  if (n < 3) {
    fit.verdict = "no fit: fewer than 3 samples in the window";
    return fit;
  }
  double st = 0, sl = 0, stt = 0, stl = 0;
  for (int k = 0; k < n; ++k) {
    st += ts[k];
    sl += ls[k];
    stt += ts[k] * ts[k];
    stl += ts[k] * ls[k];
  }
  const double den = n * stt - st * st;
  const double slope = (n * stl - st * sl) / den;
  const double icpt = (sl - slope * st) / n;
  double ss_res = 0, ss_tot = 0;
  for (int k = 0; k < n; ++k) {
    const double r = ls[k] - icpt - slope * ts[k];
    ss_res += r * r;
    ss_tot += (ls[k] - sl / n) * (ls[k] - sl / n);
  }
  fit.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : (ss_res == 0.0 ? 1.0 : 0.0);
  fit.rate = -slope;
  if (fit.r2 < 0.95) {
    std::ostringstream os;
    os << "no fit: r^2 = " << fit.r2 << " < 0.95";
    fit.verdict = os.str();
    return fit;
  }
  fit.fitted = true;
  fit.verdict = "fitted";
  return fit;
}

KernelElement trace_constant_element(const FlowProblem& problem) {
  KernelElement e;
  const int n = problem.grid().size();
  e.u.assign(n, 1.0);
  e.omega.assign(n, 0.0);
  const double norm = std::sqrt(problem.inner(e, e));
  for (double& x : e.u) x /= norm;
  return e;
}

std::vector<double> pure_trace_sweep(const FlowProblem& problem, const std::vector<double>& eps) {
  const int n = problem.grid().size();
  const std::vector<double> zero(n, 0.0);
  const auto base = problem.rhs(zero, zero);
  std::vector<double> out;
  for (double e : eps) {
    const auto s = problem.rhs(std::vector<double>(n, e), zero);
    double m = 0.0;
    for (int i = 0; i < n; ++i) {
      const double x = problem.grid().nodes[i];
      m = std::max(m, x * x * std::abs(s.trace[i] - base.trace[i]));
    }
    out.push_back(m);
  }
  return out;
}

FlowResult run_flow(const FlowConfig& config, const std::vector<KernelElement>& kernel) {
  FlowProblem problem(config);
  FlowResult res;
  auto& rep = res.report;
  const int f = config.f;
  const int n = problem.grid().size();
  const auto& x = problem.grid().nodes;

  KernelElement initial = problem.initial_data();
  if (config.mode == Mode::ShortTime) {
    if (config.amplitude_u != 0.0 || config.amplitude_omega != 0.0) {
      rep.note = "short-time mode starts from v(0) = 0; amplitudes ignored";
    }
    initial.u.assign(n, 0.0);
    initial.omega.assign(n, 0.0);
  } else if (config.project_kernel && !kernel.empty()) {
    initial = kernel_projection(problem, initial, kernel).perp;
  }

  {
    const std::vector<double> zero(n, 0.0);
    const auto src = problem.rhs(zero, zero);
    for (int i = 0; i < n; ++i) {
      rep.trace_source_max = std::max(rep.trace_source_max, x[i] * x[i] * std::abs(src.trace[i]));
      rep.tracefree_source_max =
          std::max(rep.tracefree_source_max, x[i] * x[i] * std::abs(src.tracefree[i]));
    }
  }

  PerturbationState state = problem.heat(initial);
  bool converged = false;
  int above = 0;
  for (int it = 1; it <= config.max_iters; ++it) {
    PerturbationState next;
    try {
      next = problem.picard_step(state, initial);
    } catch (const StateError& e) {
      rep.positivity_preserved = false;
      rep.note = e.what();
      break;
    }
    const double factor = next.min_metric_factor(f);
    if (!(factor > 0.0)) {
      rep.positivity_preserved = false;
      std::ostringstream os;
      os << "iteration " << it << " produced a degenerate metric (min factor " << factor << ")";
      rep.note = os.str();
      break;
    }
    const double r = problem.difference_norm(next, state);
    if (!std::isfinite(r)) {
      rep.diverged = true;
      rep.note = "non-finite residual";
      break;
    }
    state = std::move(next);
    rep.iterations = it;
    rep.residual_history.push_back(r);
    const double scale = problem.state_norm(state);
    if (rep.residual_history.size() >= 2) {
      const double prev = rep.residual_history[rep.residual_history.size() - 2];
      const double ratio = prev > 0.0 ? r / prev : 0.0;
      rep.contraction_ratios.push_back(ratio);
      if (r > 1e-13 * scale) rep.max_contraction_ratio = std::max(rep.max_contraction_ratio, ratio);
      above = ratio > 1.0 ? above + 1 : 0;
      if (above >= 3) {
        rep.diverged = true;
        rep.note = "residual grew for 3 consecutive iterations";
        break;
      }
    }
    if (r == 0.0 || r <= config.tol * scale) {
      converged = true;
      break;
    }
  }
  rep.contracted = converged && !rep.diverged;
  rep.min_metric_factor = state.min_metric_factor(f);
  if (rep.min_metric_factor <= 0.0) rep.positivity_preserved = false;

  const auto& w = config.weights;
  for (std::size_t k = 0; k < state.times.size(); ++k) {
    const holder::SampledField fu{x, {state.times[k]}, {state.u[k]}};
    const holder::SampledField fw{x, {state.times[k]}, {state.omega[k]}};
    rep.holder_trajectory.push_back(holder::weighted_norm(fu, w.alpha, w.gamma_trace) +
                                    holder::weighted_norm(fw, w.alpha, w.gamma_tracefree));
    const KernelElement slice{state.u[k], state.omega[k]};
    const auto perp = kernel.empty() ? slice : kernel_projection(problem, slice, kernel).perp;
    rep.l2_trajectory.push_back(std::sqrt(std::max(0.0, problem.inner(perp, perp))));
    double curv = 0.0;
    if (rep.positivity_preserved) {
      const auto [kr, kf] = problem.perturbed_curvature(state.u[k], state.omega[k]);
      for (int i = 0; i < n; ++i) curv = std::max(curv, x[i] * x[i] * (std::abs(kr[i]) + std::abs(kf[i])));
    }
    rep.curvature_trajectory.push_back(curv);
  }

  if (config.mode == Mode::FlatLongTime) {
    std::optional<double> lam;
    auto consider = [&](double mu, double amp) {
      if (amp == 0.0) return;
      const double j = specfun::bessel_j_first_zero(mu);
      const double l = (j / config.x_max) * (j / config.x_max);
      lam = lam ? std::min(*lam, l) : l;
    };
    consider(mu_trace(f), config.amplitude_u);
    consider(mu_tracefree(f), config.amplitude_omega);
    rep.lambda0 = lam;
    rep.decay = decay_rate(state.times, rep.l2_trajectory, config.decay_from * config.t_end,
                           config.t_end);
    rep.decayed = rep.decay.fitted && rep.decay.rate > 0.0;
  } else {
    rep.decay.verdict = "not applicable in short-time mode";
  }
  res.state = std::move(state);
  return res;
}

void write_state_csv(std::ostream& out, const FlowProblem& problem, const PerturbationState& state) {
  out << "t,x,u,omega\n";
  char buf[160];
  for (std::size_t k = 0; k < state.times.size(); ++k) {
    for (int i = 0; i < problem.grid().size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", state.times[k],
                    problem.grid().nodes[i], state.u[k][i], state.omega[k][i]);
      out << buf;
    }
  }
}

}  // namespace edgeflow::flow
