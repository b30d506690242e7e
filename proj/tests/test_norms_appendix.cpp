#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "edgeflow/errors.hpp"
#include "edgeflow/norms_appendix.hpp"

using namespace edgeflow;
using namespace edgeflow::appendix;

namespace {

Eigen::VectorXd scalar(double v) { return Eigen::VectorXd::Constant(1, v); }

// Independent grid search over (eta, eta', delta) of the smallest C making
// |cbrt(eta) - cbrt(eta')| <= C |eta - eta'|^{1/3} max_delta delta^{2/3} |d/d delta cbrt|.
double cube_root_constant_oracle(int n) {
  double best = 0.0;
  for (int i = 0; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      const double a = static_cast<double>(i) / n, b = static_cast<double>(j) / n;
      // delta^{2/3} * delta^{-2/3} / 3 is 1/3 for every delta > 0
      const double rhs = std::cbrt(b - a) / 3.0;
      best = std::max(best, (std::cbrt(b) - std::cbrt(a)) / rhs);
    }
  }
  return best;
}

}  // namespace

TEST_CASE("quotient constant") {
  CHECK(holder_quotient_constant(1, {0.0, 1.0}) == 1.0);
  CHECK(holder_quotient_constant(1, {2.0, 5.0}) == 1.0);
  CHECK(holder_quotient_constant(1, {-1.0, 1.0}) == 1.0);
  CHECK(holder_quotient_constant(3, {0.0, 1.0}) == doctest::Approx(3.0).epsilon(1e-3));
  for (double L : {0.01, 7.0, 300.0}) {
    CAPTURE(L);
    CHECK(holder_quotient_constant(3, {0.0, L}) ==
          doctest::Approx(holder_quotient_constant(3, {0.0, 1.0})).epsilon(1e-12));
  }
  double prev = 0.0;
  for (int N : {1, 3, 5, 7}) {
    const double c = holder_quotient_constant(N, {0.0, 1.0}, 401);
    CHECK(c >= prev);
    // attained at eta' = 0: N eta^{1/N} / eta^{1/N}
    CHECK(c == doctest::Approx(N).epsilon(1e-12));
    prev = c;
  }
  // away from zero the quotient stays below its value at an endpoint 0
  CHECK(holder_quotient_constant(3, {1.0, 2.0}) < 3.0);
  // odd roots extend to negative arguments
  CHECK(holder_quotient_constant(3, {-1.0, 1.0}) == doctest::Approx(3 * std::cbrt(4.0)).epsilon(1e-3));
}

TEST_CASE("classical mean value theorem for N = 1") {
  MeanValueSample s;
  s.omega = [](double e) { return scalar(e); };
  s.derivative = [](double) { return scalar(1.0); };
  s.eta = 0.7;
  s.eta_prime = 0.2;
  s.N = 1;
  s.K = {0.0, 1.0};
  const auto r = mean_value_bound_check(s);
  CHECK(r.constant == 1.0);
  CHECK(r.ratio == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(r.fitted_c == doctest::Approx(1.0).epsilon(1e-14));

  // smooth vector-valued curve, derivative by finite differences
  MeanValueSample v;
  v.omega = [](double e) {
    Eigen::VectorXd w(2);
    w << std::sin(3 * e), e * e;
    return w;
  };
  v.N = 1;
  v.K = {-1.0, 2.0};
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(-1.0, 2.0);
  double worst = 0.0;
  for (int i = 0; i < 300; ++i) {
    v.eta = U(rng);
    v.eta_prime = U(rng);
    worst = std::max(worst, mean_value_bound_check(v).ratio);
  }
  CHECK(worst <= 1 + 1e-8);
}

TEST_CASE("degenerate samples") {
  MeanValueSample s;
  s.omega = [](double) { return scalar(4.0); };
  s.eta = 0.1;
  s.eta_prime = 0.9;
  s.N = 3;
  const auto r = mean_value_bound_check(s);
  CHECK(r.lhs == 0.0);
  CHECK(r.ratio == 0.0);

  s.omega = [](double e) { return scalar(e * e); };
  s.eta_prime = s.eta;
  const auto z = mean_value_bound_check(s);
  CHECK(z.lhs == 0.0);
  CHECK(z.rhs == 0.0);
  CHECK(z.ratio == 0.0);
}

TEST_CASE("delta is existential") {
  // omega = eta^2 on [0, 1]: the weighted derivative vanishes at delta = 0,
  // so only a well-chosen delta carries the bound.
  MeanValueSample s;
  s.omega = [](double e) { return scalar(e * e); };
  s.derivative = [](double e) { return scalar(2 * e); };
  s.eta = 0.0;
  s.eta_prime = 1.0;
  s.N = 1;
  const auto r = mean_value_bound_check(s);
  CHECK(r.lhs == 1.0);
  CHECK(r.rhs_min == 0.0);
  CHECK(r.rhs == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(r.delta_star == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.ratio <= 1.0);
}

TEST_CASE("cube root with N = 3") {
  const Curve w = [](double e) { return scalar(std::cbrt(e)); };
  const Curve dw = [](double e) { return scalar(1.0 / (3.0 * std::cbrt(e * e))); };
  const auto audit = mean_value_audit(w, dw, 3, {0.0, 1.0}, 2000, 11);
  CHECK(audit.holds);
  CHECK(audit.max_fitted_c <= 3.0 + 1e-6);
  CHECK(audit.constant == doctest::Approx(3.0).epsilon(1e-3));
  const double oracle = cube_root_constant_oracle(400);
  CHECK(oracle <= 3.0 + 1e-12);
  CHECK(audit.max_fitted_c <= oracle + 1e-6);
}

TEST_CASE("audits are reproducible") {
  const Curve w = [](double e) { return scalar(std::sin(e)); };
  const auto a = mean_value_audit(w, {}, 3, {0.0, 2.0}, 200, 5);
  const auto b = mean_value_audit(w, {}, 3, {0.0, 2.0}, 200, 5);
  CHECK(a.max_fitted_c == b.max_fitted_c);
  CHECK(a.worst_eta == b.worst_eta);
  CHECK(a.holds);
}

TEST_CASE("edge chart check") {
  EdgeChart chart;
  chart.x = {0.0, 1.0};
  chart.y = {-0.5, 0.5};
  chart.z = {0.0, 2.0};
  const EdgePoint p{0, 0.3, 0.1, 0.4}, q{0, 0.8, -0.2, 1.5};

  const EdgeField constant = [](double, double, double) { return scalar(2.0); };
  CHECK(edge_mean_value_check(constant, chart, p, q, 0.0, 3).lhs == 0.0);

  // w = x with equal y, z: only the radial term is left
  const EdgeField radial = [](double x, double, double) { return scalar(x); };
  const EdgePoint r1{0, 0.2, 0.1, 0.4}, r2{0, 0.9, 0.1, 0.4};
  const auto r = edge_mean_value_check(radial, chart, r1, r2, 0.0, 3);
  CHECK(r.edge == 0.0);
  CHECK(r.fibre == 0.0);
  CHECK(r.lhs == doctest::Approx(std::pow(0.7, 2.0 / 3.0)).epsilon(1e-12));
  CHECK(r.radial == doctest::Approx(std::pow(0.9, 2.0 / 3.0)).epsilon(1e-6));

  const EdgeField w = [](double x, double y, double z) {
    Eigen::VectorXd v(2);
    v << std::pow(x, 0.7) * std::cos(z), y * std::sin(z);
    return v;
  };
  const auto a = edge_mean_value_check(w, chart, p, q, 0.1, 3);
  const auto b = edge_mean_value_check(w, chart, q, p, 0.1, 3);
  CHECK(a.lhs == b.lhs);
  CHECK(a.rhs == b.rhs);
  CHECK(a.fitted_c == b.fitted_c);
  CHECK(a.fitted_c <= a.constant);

  const EdgePoint other{1, 0.3, 0.1, 0.4};
  CHECK_THROWS_AS(edge_mean_value_check(w, chart, p, other, 0.0, 3), DomainError);
  const EdgePoint outside{0, 1.5, 0.1, 0.4};
  CHECK_THROWS_AS(edge_mean_value_check(w, chart, p, outside, 0.0, 3), DomainError);
}

TEST_CASE("edge audit on a sampled cone chart") {
  EdgeChart chart;
  chart.z = {0.0, 2 * std::numbers::pi};
  const EdgeField w = [](double x, double, double z) { return scalar(std::pow(x, 0.7) * std::cos(z)); };
  const auto coarse = edge_mean_value_audit(w, chart, 0.5, 3, 2000, 3, 32);
  const auto fine = edge_mean_value_audit(w, chart, 0.5, 3, 2000, 3, 64);
  CHECK(coarse.holds);
  CHECK(fine.holds);
  CHECK(std::abs(fine.max_fitted_c - coarse.max_fitted_c) <= 0.1 * fine.max_fitted_c);
}

TEST_CASE("argument checks") {
  CHECK_THROWS_AS(holder_quotient_constant(2, {0.0, 1.0}), DomainError);
  CHECK_THROWS_AS(holder_quotient_constant(3, {1.0, 1.0}), DomainError);
  MeanValueSample s;
  s.omega = [](double e) { return scalar(e); };
  s.eta = 0.5;
  s.eta_prime = 1.5;
  CHECK_THROWS_AS(mean_value_bound_check(s), DomainError);
}
