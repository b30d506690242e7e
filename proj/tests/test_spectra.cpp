#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "edgeflow/errors.hpp"
#include "edgeflow/spectra.hpp"

using namespace edgeflow;
using namespace edgeflow::spectra;

namespace {

SpectrumTable tt_table(int f, std::vector<double> eigs) {
  SpectrumTable t;
  t.fibre_dimension = f;
  for (double e : eigs) t.records.push_back({e, 1, Kind::EinsteinTT});
  return t;
}

SpectrumTable scalar_table(int f, std::vector<std::pair<double, int>> eigs) {
  SpectrumTable t;
  t.fibre_dimension = f;
  for (auto [e, m] : eigs) t.records.push_back({e, m, Kind::ScalarLaplacian});
  return t;
}

bool has_rule(const StabilityReport& r, double eig, const std::string& rule) {
  return std::any_of(r.violations.begin(), r.violations.end(), [&](const Violation& v) {
    return v.eigenvalue == eig && v.rule == rule;
  });
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("edgeflow_" + name)).string();
}

}  // namespace

TEST_CASE("parse two scalar records") {
  auto t = parse_spectrum("fibre_dimension=3\n0 1 scalar-laplacian\n3 4 scalar-laplacian\n");
  validate(t);
  CHECK(t.fibre_dimension == 3);
  REQUIRE(t.records.size() == 2);
  CHECK(t.records[1].eigenvalue == 3.0);
  CHECK(t.records[1].multiplicity == 4);
}

TEST_CASE("empty file fails with missing zero eigenvalue") {
  const auto path = temp_path("empty.txt");
  { std::ofstream(path) << ""; }
  try {
    load_spectrum(path, 3);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("missing zero eigenvalue") != std::string::npos);
  }
  std::remove(path.c_str());
}

TEST_CASE("multiplicity zero is rejected") {
  auto t = parse_spectrum("0 1 scalar-laplacian\n2 0 scalar-laplacian\n", 3);
  CHECK_THROWS_AS(validate(t), ValidationError);
}

TEST_CASE("unsorted or duplicate eigenvalues within a kind are rejected") {
  CHECK_THROWS_AS(validate(parse_spectrum("0 1 scalar-laplacian\n3 1 scalar-laplacian\n3 1 scalar-laplacian\n", 3)),
                  ValidationError);
  CHECK_THROWS_AS(validate(parse_spectrum("0 1 scalar-laplacian\n5 1 scalar-laplacian\n3 1 scalar-laplacian\n", 3)),
                  ValidationError);
  // different kinds are ordered independently
  CHECK_NOTHROW(validate(parse_spectrum("0 1 scalar-laplacian\n5 1 scalar-laplacian\n3 1 einstein-tt\n", 3)));
}

TEST_CASE("malformed lines report their line number") {
  try {
    parse_spectrum("fibre_dimension=3\n# comment\n0 1 scalar-laplacian\n1.5 x scalar-laplacian\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
  }
  CHECK_THROWS_AS(parse_spectrum("0 1 banana\n"), ParseError);
  CHECK_THROWS_AS(parse_spectrum("0 1\n"), ParseError);
  CHECK_THROWS_AS(parse_spectrum("fibre_dimension=three\n"), ParseError);
}

TEST_CASE("save and load round-trip bit-exactly") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> step(1e-9, 3.0);
  SpectrumTable t;
  t.fibre_dimension = 5;
  t.source = "random test table";
  double e = 0.0;
  t.records.push_back({0.0, 1, Kind::ScalarLaplacian});
  for (int i = 0; i < 50; ++i) {
    e += step(rng);
    t.records.push_back({e, 1 + i % 7, Kind::ScalarLaplacian});
  }
  e = -0.3;
  for (int i = 0; i < 20; ++i) {
    e += step(rng) / 7.0;
    t.records.push_back({e, 2, Kind::LichnerowiczTracefree});
  }
  const auto path = temp_path("roundtrip.txt");
  save_spectrum(t, path);
  auto back = load_spectrum(path);
  std::remove(path.c_str());
  CHECK(back.fibre_dimension == 5);
  CHECK(back.source == t.source);
  REQUIRE(back.records.size() == t.records.size());
  for (std::size_t i = 0; i < t.records.size(); ++i) {
    CHECK(back.records[i].eigenvalue == t.records[i].eigenvalue);
    CHECK(back.records[i].multiplicity == t.records[i].multiplicity);
    CHECK(back.records[i].kind == t.records[i].kind);
  }
  CHECK(format_spectrum(back) == format_spectrum(t));
}

TEST_CASE("sphere scalar spectrum") {
  auto s3 = sphere_scalar_spectrum(3, 4);
  validate(s3);
  CHECK(s3.records[0].eigenvalue == 0.0);
  CHECK(s3.records[0].multiplicity == 1);
  CHECK(s3.records[1].eigenvalue == 3.0);
  CHECK(s3.records[2].eigenvalue == 8.0);
  // S^3 multiplicities are (k+1)^2
  for (int k = 0; k <= 4; ++k) CHECK(s3.records[k].multiplicity == (k + 1) * (k + 1));
  // S^2: 2k+1; circle: 1, 2, 2, ...
  auto s2 = sphere_scalar_spectrum(2, 5);
  for (int k = 0; k <= 5; ++k) CHECK(s2.records[k].multiplicity == 2 * k + 1);
  auto s1 = sphere_scalar_spectrum(1, 3);
  CHECK(s1.records[3].eigenvalue == 9.0);
  CHECK(s1.records[3].multiplicity == 2);
  // eigenvalue oracle k(k+f-1) for a range of f
  for (int f = 1; f <= 8; ++f) {
    auto s = sphere_scalar_spectrum(f, 6);
    for (int k = 0; k <= 6; ++k) CHECK(s.records[k].eigenvalue == double(k * (k + f - 1)));
  }
}

TEST_CASE("unit spheres are weakly but not tangentially stable") {
  for (int f = 3; f <= 6; ++f) {
    auto scalar = sphere_scalar_spectrum(f, 6);
    auto tt = tt_table(f, {2.0 * (f + 1), 3.0 * (f + 2)});
    auto strict = check_tangential_stability(tt, scalar, f);
    auto weak = check_weak_tangential_stability(tt, scalar, f);
    CAPTURE(f);
    CHECK(strict.applicable);
    CHECK_FALSE(strict.tangential);
    CHECK(strict.weak);
    CHECK(has_rule(strict, 2.0 * (f + 1), kRuleScalarClosed));
    CHECK(strict.violations.size() == 1);
    CHECK(weak.weak);
    CHECK(weak.violations.empty());
    REQUIRE(strict.u1);
    CHECK(*strict.u1 == double(f));
  }
}

TEST_CASE("verdict examples") {
  const int f = 4;
  auto gap = scalar_table(f, {{0, 1}, {2.0 * (f + 1) + 1, 3}});
  auto tt_pos = tt_table(f, {0.5, 2.0});
  auto r = check_tangential_stability(tt_pos, gap, f);
  CHECK(r.tangential);
  CHECK(r.weak);

  auto tt_zero = tt_table(f, {0.0, 2.0});
  r = check_tangential_stability(tt_zero, gap, f);
  CHECK_FALSE(r.tangential);
  CHECK(has_rule(r, 0.0, kRuleTTNonpositive));
  r = check_weak_tangential_stability(tt_zero, gap, f);
  CHECK(r.weak);

  auto inside = scalar_table(f, {{0, 1}, {f + 0.5, 1}});
  r = check_weak_tangential_stability(tt_pos, inside, f);
  CHECK_FALSE(r.weak);
  CHECK(has_rule(r, f + 0.5, kRuleScalarOpen));
}

TEST_CASE("f below 3 abstains") {
  auto scalar = sphere_scalar_spectrum(2, 3);
  auto r = check_tangential_stability(tt_table(2, {1.0}), scalar, 2);
  CHECK_FALSE(r.applicable);
  CHECK_FALSE(r.tangential);
  CHECK(r.u1);
  CHECK(r.note.find("outside theorem hypothesis") != std::string::npos);
}

TEST_CASE("u0 and u from a lichnerowicz table") {
  SpectrumTable lich;
  lich.fibre_dimension = 4;
  lich.records = {{0.7, 2, Kind::LichnerowiczTracefree}, {3.0, 1, Kind::LichnerowiczTracefree}};
  auto scalar = scalar_table(4, {{0, 1}, {11, 2}});
  auto r = check_weak_tangential_stability(tt_table(4, {1.0}), scalar, 4, &lich);
  REQUIRE(r.u0);
  CHECK(*r.u0 == 0.7);
  REQUIRE(r.u);
  CHECK(*r.u == 0.7);
  CHECK(*r.u1 == 11.0);
}

TEST_CASE("property: tangential implies weak, verdicts invariant under permutation and splitting") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> eig(-1.0, 20.0);
  std::uniform_int_distribution<int> mult(1, 4);
  std::uniform_int_distribution<int> fdist(3, 7);
  for (int trial = 0; trial < 400; ++trial) {
    const int f = fdist(rng);
    std::vector<double> tt_e, sc_e;
    for (int i = 0; i < 4; ++i) tt_e.push_back(eig(rng) + 1.0);
    for (int i = 0; i < 5; ++i) sc_e.push_back(std::abs(eig(rng)));
    // integers hit the interval endpoints now and then
    if (trial % 5 == 0) sc_e.push_back(2.0 * (f + 1));
    if (trial % 7 == 0) sc_e.push_back(double(f));
    if (trial % 11 == 0) tt_e.push_back(0.0);
    std::sort(tt_e.begin(), tt_e.end());
    std::sort(sc_e.begin(), sc_e.end());
    tt_e.erase(std::unique(tt_e.begin(), tt_e.end()), tt_e.end());
    sc_e.erase(std::unique(sc_e.begin(), sc_e.end()), sc_e.end());
    SpectrumTable tt;
    tt.fibre_dimension = f;
    for (double e : tt_e) tt.records.push_back({e, mult(rng), Kind::EinsteinTT});
    SpectrumTable sc;
    sc.fibre_dimension = f;
    sc.records.push_back({0.0, 1, Kind::ScalarLaplacian});
    for (double e : sc_e) {
      if (e > 0) sc.records.push_back({e, mult(rng), Kind::ScalarLaplacian});
    }
    auto a = check_tangential_stability(tt, sc, f);
    auto b = check_weak_tangential_stability(tt, sc, f);
    if (a.tangential) CHECK(a.weak);
    CHECK(a.weak == b.weak);

    // permuted + split copies (unnormalised input is accepted by the audit)
    SpectrumTable tt2 = tt, sc2;
    sc2.fibre_dimension = f;
    for (const auto& r : sc.records) {
      for (int m = 0; m < r.multiplicity; ++m) sc2.records.push_back({r.eigenvalue, 1, r.kind});
    }
    std::shuffle(tt2.records.begin(), tt2.records.end(), rng);
    std::shuffle(sc2.records.begin(), sc2.records.end(), rng);
    auto a2 = check_tangential_stability(tt2, sc2, f);
    auto b2 = check_weak_tangential_stability(tt2, sc2, f);
    CHECK(a2.tangential == a.tangential);
    CHECK(b2.weak == b.weak);
    CHECK(a2.violations.size() == a.violations.size());
    CHECK(a2.u1 == a.u1);
  }
}

TEST_CASE("rotation representation dimensions") {
  // (k) is the space of degree-k harmonics on S^{n-1}
  for (int n = 3; n <= 8; ++n) {
    const auto s = sphere_scalar_spectrum(n - 1, 5);
    for (int k = 0; k <= 5; ++k) CHECK(rotation_irrep_dimension(n, {k}) == s.records[k].multiplicity);
    if (n >= 4) CHECK(rotation_irrep_dimension(n, {1, 1}) == n * (n - 1) / 2);
  }
  // SO(4) = SU(2) x SU(2): (k, +-2) are ((k+2)/2, (k-2)/2) and its mirror
  for (int k = 2; k <= 6; ++k) CHECK(rotation_irrep_dimension(4, {k, 2}) == 2 * (k - 1) * (k + 3));
  CHECK(rotation_irrep_dimension(5, {2, 2}) == 35);
  CHECK_THROWS_AS(rotation_irrep_dimension(5, {1, 2}), DomainError);
}

TEST_CASE("sphere einstein spectrum on TT") {
  for (int f = 3; f <= 6; ++f) {
    const auto tt = sphere_tt_spectrum(f, 5);
    CHECK_NOTHROW(validate(tt));
    REQUIRE(tt.records.size() == 4);
    CHECK(tt.records[0].eigenvalue == 2.0 * (f + 1));
    const auto strict = check_tangential_stability(tt, sphere_scalar_spectrum(f, 6), f);
    CHECK_FALSE(strict.tangential);
    CHECK(strict.violations.size() == 1);
  }
  CHECK(sphere_tt_spectrum(2, 4).records.empty());
}
