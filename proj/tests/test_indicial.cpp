#include <cmath>
#include <random>

#include "doctest.h"
#include "edgeflow/errors.hpp"
#include "edgeflow/indicial.hpp"

using namespace edgeflow;
using namespace edgeflow::indicial;
using spectra::Kind;

namespace {

// Direct evaluation in extended precision.
double element_oracle(double lambda, int f) {
  const long double a = (f - 1) / 2.0L;
  return static_cast<double>(std::sqrt(static_cast<long double>(lambda) + a * a) - a);
}

bool has(const HolderWindow& w, const char* name) {
  for (const auto& b : w.binding) {
    if (b == name) return true;
  }
  return false;
}

// Independent recheck of every relation, written out longhand.
bool relations_hold(double mu0, double mu1, int dimB, const Candidate& c) {
  const double g0 = c.gamma0, g1 = c.gamma1, a = c.alpha;
  bool ok = g0 > 0 && g0 < mu0 && g0 <= 2 * g1 && g1 > 0 && g1 < mu1 && g1 <= g0;
  if (dimB > 0) ok = ok && g0 <= 2 * std::min(1.0, g1) && g1 <= 2;
  ok = ok && a > 0 && a < mu0 - g0 && a < mu1 - g1;
  return ok;
}

}  // namespace

TEST_CASE("element examples") {
  CHECK(element(0.0, 1) == 0.0);
  CHECK(element(0.0, 5) == 0.0);
  CHECK(element(3.0, 3) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(element(4.0, 2) == doctest::Approx(1.5615528128088303).epsilon(1e-14));
  CHECK(element(4.0, 2) == doctest::Approx(std::sqrt(17.0) / 2 - 0.5).epsilon(1e-14));
}

TEST_CASE("element below the real-root bound is a domain error naming lambda") {
  CHECK_THROWS_AS(element(-1.01, 3), DomainError);
  try {
    element(-5.0, 2);
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("lambda") != std::string::npos);
  }
  CHECK_NOTHROW(element(-1.0, 3));  // exactly -a^2
  CHECK(element(-1.0, 3) == doctest::Approx(-1.0));
}

TEST_CASE("element agrees with the extended-precision closed form") {
  for (int f = 1; f <= 9; ++f) {
    for (double lam : {1e-12, 1e-6, 0.3, 1.0, 7.0, 42.0, 1e4}) {
      CHECK(element(lam, f) == doctest::Approx(element_oracle(lam, f)).epsilon(1e-14));
    }
  }
}

TEST_CASE("inverse identity and monotonicity") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> lam(0.0, 100.0);
  for (int i = 0; i < 2000; ++i) {
    const int f = 1 + i % 8;
    const double l = lam(rng);
    const double e = element(l, f);
    CHECK(std::abs(eigenvalue_from_element(e, f) - l) <= 1e-12 * std::max(l, 1e-300) + 1e-300);
    CHECK(e >= 0.0);
    CHECK(element(l * 1.01 + 1e-9, f) > e);       // increasing in lambda
    if (l > 0) CHECK(element(l, f + 1) < e);      // decreasing in f
  }
}

TEST_CASE("index_set from a table") {
  spectra::SpectrumTable t;
  t.fibre_dimension = 3;
  t.records = {{0.0, 1, Kind::ScalarLaplacian},
               {3.0, 4, Kind::ScalarLaplacian},
               {8.0, 9, Kind::ScalarLaplacian},
               {8.0, 10, Kind::LichnerowiczTracefree},
               {5.0, 2, Kind::EinsteinTT}};
  auto p = index_set(t, 3);
  REQUIRE(p.elements.size() == 5);
  for (std::size_t i = 1; i < p.elements.size(); ++i) {
    CHECK(p.elements[i - 1].value <= p.elements[i].value);
  }
  CHECK(p.elements.front().value == 0.0);
  REQUIRE(p.mu0);
  CHECK(*p.mu0 == doctest::Approx(2.0));
  REQUIRE(p.mu1);
  CHECK(*p.mu1 == doctest::Approx(1.0));
  REQUIRE(p.mu_flat);
  CHECK(*p.mu_flat == doctest::Approx(1.0));  // min(3, 8)
  CHECK(p.mu1_certified);                      // mu1 in (0, 1]

  t.records[1].eigenvalue = 5.0;  // mu1 = sqrt(6) - 1 > 1
  p = index_set(t, 3);
  CHECK_FALSE(p.mu1_certified);
  p = index_set(t, 3, 2);
  CHECK(p.mu1_certified);
  p = index_set(t, 3, 1);
  CHECK_FALSE(p.mu1_certified);

  t.records.push_back({-2.0, 1, Kind::EinsteinTT});
  CHECK_THROWS_AS(index_set(t, 3), DomainError);
}

TEST_CASE("holder_window examples") {
  auto w = holder_window(2.0, 1.5, 1, {1.0, 1.0, 0.25});
  CHECK(w.feasible);
  CHECK(w.binding.empty());
  w = holder_window(2.0, 1.5, 1, {1.0, 1.0, 0.6});
  CHECK_FALSE(w.feasible);
  CHECK(has(w, kAlphaMu1));

  for (double mu0 : {0.0, -1.0}) {
    for (double g : {0.1, 0.5, 1.0}) {
      auto v = holder_window(mu0, 1.0, 0, {g, g, 0.01});
      CHECK_FALSE(v.feasible);
      CHECK(has(v, kG0Range));
    }
  }

  w = holder_window(2.0, 2.0, 0, {0.5, 0.8, 0.1});
  CHECK_FALSE(w.feasible);
  CHECK(has(w, kG1LeG0));

  w = holder_window(5.0, 5.0, 1, {2.5, 2.5, 0.1});
  CHECK(has(w, kG0EdgeCap));
  CHECK(has(w, kG1EdgeCap));
  CHECK(holder_window(5.0, 5.0, 0, {2.5, 2.5, 0.1}).feasible);

  WindowOptions opt;
  opt.geometry_gamma = 0.4;
  w = holder_window(2.0, 2.0, 0, {0.5, 0.3, 0.1}, opt);
  CHECK(has(w, kG0LtGamma));
  CHECK_FALSE(has(w, kG1LtGamma));

  opt = {};
  opt.alpha_one_over_odd = true;
  CHECK(holder_window(2.0, 2.0, 0, {0.5, 0.5, 1.0 / 3.0}, opt).feasible);
  CHECK(has(holder_window(2.0, 2.0, 0, {0.5, 0.5, 0.25}, opt), kAlphaOdd));
}

TEST_CASE("flat_window examples") {
  auto w = flat_window(0.0, 3, 0.1, 0.01, 0);
  CHECK(*w.mu == 0.0);
  CHECK_FALSE(w.feasible);
  w = flat_window(3.0, 3, 0.5, 0.25, 0);
  CHECK(*w.mu == doctest::Approx(1.0));
  CHECK(w.feasible);
  w = flat_window(4.0, 2, 1.5, 0.05, 0);
  CHECK(*w.mu == doctest::Approx(1.5615528));
  CHECK(w.feasible);
  w = flat_window(4.0, 2, 1.6, 0.01, 0);
  CHECK_FALSE(w.feasible);
  CHECK(has(w, kGammaRange));
  w = flat_window(100.0, 2, 2.5, 0.5, 1);
  CHECK(has(w, kGammaEdgeCap));
  CHECK_THROWS_AS(flat_window(-1.0, 2, 0.1, 0.1, 0), DomainError);
}

TEST_CASE("sample_window") {
  CHECK(sample_window(0.0, 0.0, 0, 100).empty());
  CHECK(sample_window(2.0, 2.0, 0, 0).empty());
  CHECK(sample_window(-0.5, 2.0, 1, 100).empty());
  for (int dimB : {0, 1, 3}) {
    for (auto [mu0, mu1] : {std::pair{2.0, 2.0}, {0.3, 1.7}, {4.0, 0.2}, {2.5, 3.5}}) {
      auto s = sample_window(mu0, mu1, dimB, 1000);
      CHECK(s.size() == 1000);
      for (const auto& c : s) {
        CHECK(relations_hold(mu0, mu1, dimB, c));
        CHECK(holder_window(mu0, mu1, dimB, c).feasible);
      }
    }
  }
  WindowOptions opt;
  opt.alpha_one_over_odd = true;
  auto s = sample_window(1.5, 1.5, 0, 200, opt);
  CHECK_FALSE(s.empty());
  for (const auto& c : s) CHECK(holder_window(1.5, 1.5, 0, c, opt).feasible);
}
