#include "edgeflow/modeheat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "edgeflow/errors.hpp"
#include "edgeflow/specfun.hpp"

namespace edgeflow::modeheat {

namespace {

void check_spec(const ModeKernelSpec& spec) {
  if (!(spec.mu >= 0.0) || !std::isfinite(spec.mu)) {
    throw DomainError("mode kernel: mu must be finite and >= 0");
  }
  if (spec.f < 1) throw DomainError("mode kernel: f must be >= 1");
}

// log I_mu(z) - z, extending past the tabulated argument range through the
// asymptotic expansion (which only gets better there).
double log_scaled_bessel(double mu, double z) {
  if (z <= specfun::kMaxArgument) return specfun::log_bessel_i(mu, z) - z;
  double out = 0.0;
  if (!specfun::detail::log_bessel_i_hankel(mu, z, out)) {
    std::ostringstream os;
    os << "mode kernel: asymptotic Bessel evaluation failed at mu=" << mu << ", z=" << z;
    throw NumericError(os.str());
  }
  return out - z;
}

}  // namespace

ModeKernelSpec spec_from_eigenvalue(double lambda, int f) {
  const double a = 0.5 * (f - 1);
  if (!(lambda + a * a >= 0.0)) {
    std::ostringstream os;
    os << "mode kernel: eigenvalue lambda=" << lambda << " gives complex mu for f=" << f;
    throw DomainError(os.str());
  }
  return ModeKernelSpec{std::sqrt(lambda + a * a), f, lambda};
}

double boundary_element(const ModeKernelSpec& spec) { return spec.mu - 0.5 * (spec.f - 1); }

double log_mode_heat_kernel(const ModeKernelSpec& spec, double t, double s, double s_tilde) {
  check_spec(spec);
  if (!(t > 0.0)) throw DomainError("mode kernel: t must be > 0");
  if (!(s > 0.0) || !(s_tilde > 0.0)) throw DomainError("mode kernel: s and s_tilde must be > 0");
  const double ss = s * s_tilde;
  const double z = ss / (2.0 * t);
  const double d = s - s_tilde;
  return -std::log(2.0 * t) + 0.5 * (1.0 - spec.f) * std::log(ss) +
         log_scaled_bessel(spec.mu, z) - d * d / (4.0 * t);
}

double mode_heat_kernel(const ModeKernelSpec& spec, double t, double s, double s_tilde) {
  return std::exp(log_mode_heat_kernel(spec, t, s, s_tilde));
}

namespace {

// Simpson integral of K(t, s, .) * field * (.)^f over [a, b] on a uniform
// sub-grid, with the field interpolated from the coarse grid and taken as
// zero beyond x_max.
double fine_row(const ModeKernelSpec& spec, double t, double s, const RadialGrid& grid,
                const std::vector<double>& field, double a, double b, double step) {
  int m = static_cast<int>(std::ceil((b - a) / step));
  if (m % 2) ++m;
  m = std::max(m, 2);
  const double h = (b - a) / m;
  std::vector<double> terms(m + 1);
  for (int k = 0; k <= m; ++k) {
    const double x = (k == m) ? b : a + k * h;
    double v = 0.0;
    if (x > 0.0 && x <= grid.x_max) {
      const double lk = log_mode_heat_kernel(spec, t, s, x) + spec.f * std::log(x);
      if (lk > -745.0) v = std::exp(lk) * interpolate_cubic(grid.nodes, field, x);
    }
    const double c = (k == 0 || k == m) ? 1.0 : (k % 2 ? 4.0 : 2.0);
    terms[k] = c * v;
  }
  return compensated_sum(terms) * h / 3.0;
}

}  // namespace

std::vector<double> mode_propagate(const ModeKernelSpec& spec, double t, const RadialGrid& grid,
                                   const std::vector<double>& field, Boundary boundary) {
  check_spec(spec);
  if (!(t > 0.0)) throw DomainError("mode_propagate: t must be > 0");
  const int n = grid.size();
  if (static_cast<int>(field.size()) != n) throw DomainError("mode_propagate: field size mismatch");
  for (double v : field) {
    if (!std::isfinite(v)) throw DomainError("mode_propagate: field has non-finite values");
  }
  if (boundary == Boundary::Dirichlet) {
    DirichletBasis basis(spec, grid, default_mode_count(grid));
    return basis.propagate(t, field);
  }
  const double sigma = std::sqrt(2.0 * t);
  std::vector<double> out(n, 0.0);
  std::vector<double> terms(n);
  for (int i = 0; i < n; ++i) {
    const double s = grid.nodes[i];
    const double left = (i > 0) ? s - grid.nodes[i - 1] : s;
    const double right = (i + 1 < n) ? grid.nodes[i + 1] - s : left;
    const double spacing = std::max(left, right);
    if (sigma >= 3.0 * spacing) {
      for (int j = 0; j < n; ++j) {
        const double lk = log_mode_heat_kernel(spec, t, s, grid.nodes[j]);
        terms[j] = (lk > -745.0) ? std::exp(lk) * field[j] * grid.weights[j] : 0.0;
      }
      out[i] = compensated_sum(terms);
    } else {
      const double a = std::max(0.0, s - 12.0 * sigma);
      const double b = std::min(grid.x_max, s + 12.0 * sigma);
      out[i] = fine_row(spec, t, s, grid, field, a, b, sigma / 6.0);
    }
  }
  return out;
}

int default_mode_count(const RadialGrid& grid) {
  return std::max(4, static_cast<int>(grid.size() / (5.0 * grid.grading)));
}

DirichletBasis::DirichletBasis(const ModeKernelSpec& spec, const RadialGrid& grid, int modes)
    : spec_(spec), grid_(grid) {
  check_spec(spec);
  if (modes < 1) throw DomainError("DirichletBasis: need at least one mode");
  zeros_.resize(modes);
  specfun::bessel_j_zeros(spec.mu, modes, zeros_.data());
  const double L = grid.x_max;
  lambda_.resize(modes);
  norm_.resize(modes);
  phi_.assign(modes, std::vector<double>(grid.size()));
  for (int k = 0; k < modes; ++k) {
    lambda_[k] = (zeros_[k] / L) * (zeros_[k] / L);
    norm_[k] = std::sqrt(2.0) / (L * std::abs(specfun::bessel_j(spec.mu + 1.0, zeros_[k])));
    for (int i = 0; i < grid.size(); ++i) phi_[k][i] = eigenfunction(k, grid.nodes[i]);
  }
}

double DirichletBasis::eigenfunction(int k, double s) const {
  const double L = grid_.x_max;
  return norm_[k] * std::pow(s, 0.5 * (1.0 - spec_.f)) * specfun::bessel_j(spec_.mu, zeros_[k] * s / L);
}

std::vector<double> DirichletBasis::project(const std::vector<double>& field) const {
  std::vector<double> c(modes());
  std::vector<double> terms(grid_.size());
  for (int k = 0; k < modes(); ++k) {
    for (int i = 0; i < grid_.size(); ++i) terms[i] = phi_[k][i] * field[i] * grid_.weights[i];
    c[k] = compensated_sum(terms);
  }
  return c;
}

std::vector<double> DirichletBasis::reconstruct(const std::vector<double>& coeffs) const {
  std::vector<double> out(grid_.size(), 0.0);
  for (int k = 0; k < modes(); ++k) {
    for (int i = 0; i < grid_.size(); ++i) out[i] += coeffs[k] * phi_[k][i];
  }
  return out;
}

std::vector<double> DirichletBasis::propagate(double t, const std::vector<double>& field) const {
  auto c = project(field);
  for (int k = 0; k < modes(); ++k) c[k] *= std::exp(-lambda_[k] * t);
  return reconstruct(c);
}

double boundary_exponent(const ModeKernelSpec& spec, double t, double s_tilde, double s_lo,
                         double s_hi) {
  if (!(s_lo > 0.0 && s_hi > s_lo)) throw DomainError("boundary_exponent: need 0 < s_lo < s_hi");
  if (s_hi > std::min(s_tilde, std::sqrt(t))) {
    throw DomainError("boundary_exponent: fit range must lie below min(s_tilde, sqrt(t))");
  }
  const double span = std::log(s_hi / s_lo);
  const int count = static_cast<int>(std::floor(span / 0.1 + 1e-12)) + 1;
  if (count < 4) {
    std::ostringstream os;
    os << "boundary_exponent: only " << count << " sample points in [" << s_lo << ", " << s_hi
       << "], need 4";
    throw FitError(os.str());
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int k = 0; k < count; ++k) {
    const double ls = std::log(s_lo) + 0.1 * k;
    const double ly = log_mode_heat_kernel(spec, t, std::exp(ls), s_tilde);
    sx += ls;
    sy += ly;
    sxx += ls * ls;
    sxy += ls * ly;
  }
  const double denom = count * sxx - sx * sx;
  if (!(denom > 0.0)) throw FitError("boundary_exponent: degenerate design");
  return (count * sxy - sx * sy) / denom;
}

ConeKernelSum assemble_cone_kernel(const std::vector<WeightedMode>& modes, double t, double s,
                                   double s_tilde) {
  if (modes.empty()) throw DomainError("assemble_cone_kernel: empty mode list");
  std::vector<WeightedMode> sorted = modes;
  std::stable_sort(sorted.begin(), sorted.end(), [](const WeightedMode& a, const WeightedMode& b) {
    return a.spec.mu < b.spec.mu;
  });
  ConeKernelSum result;
  double sum = 0.0, comp = 0.0;
  std::size_t k = 0;
  for (; k < sorted.size(); ++k) {
    const double term = sorted[k].weight * mode_heat_kernel(sorted[k].spec, t, s, s_tilde);
    const double tt = sum + term;
    comp += (std::abs(sum) >= std::abs(term)) ? (sum - tt) + term : (term - tt) + sum;
    sum = tt;
    const double running = sum + comp;
    if (k > 0 && std::abs(term) < 1e-14 * std::abs(running)) {
      ++k;
      break;
    }
  }
  result.value = sum + comp;
  result.modes_used = static_cast<int>(k);
  const double z = s * s_tilde / (2.0 * t);
  double tail = 0.0;
  for (std::size_t r = k; r < sorted.size(); ++r) {
    const auto& m = sorted[r];
    if (m.weight == 0.0) continue;
    const double mu = m.spec.mu;
    const double log_bound = -std::log(2.0 * t) + 0.5 * (1.0 - m.spec.f) * std::log(s * s_tilde) +
                             mu * std::log(0.5 * z) - std::lgamma(mu + 1.0) +
                             z * z / (4.0 * (mu + 1.0)) -
                             (s * s + s_tilde * s_tilde) / (4.0 * t);
    tail += std::abs(m.weight) * std::exp(log_bound);
  }
  result.tail_bound = tail;
  return result;
}

void write_kernel_csv(std::ostream& out, const std::vector<ModeKernelSpec>& specs,
                      const std::vector<double>& times, const std::vector<double>& points) {
  out << "t,s,s_tilde,mu,f,value\n";
  char buf[256];
  for (const auto& spec : specs) {
    for (double t : times) {
      for (double s : points) {
        for (double st : points) {
          std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%d,%.17g\n", t, s, st, spec.mu,
                        spec.f, mode_heat_kernel(spec, t, s, st));
          out << buf;
        }
      }
    }
  }
}

}  // namespace edgeflow::modeheat
