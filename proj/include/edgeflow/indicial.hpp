#pragma once

#include <optional>
#include <string>
#include <vector>

#include "edgeflow/spectra.hpp"

namespace edgeflow::indicial {

/// sqrt(lambda + a^2) - a with a = (f-1)/2, evaluated without cancellation.
/// lambda < -a^2 raises DomainError naming lambda.
double element(double lambda, int f);

/// Inverse map: lambda = e^2 + (f-1) e.
double eigenvalue_from_element(double e, int f);

struct IndicialElement {
  double value = 0.0;
  double lambda = 0.0;
  spectra::Kind kind = spectra::Kind::ScalarLaplacian;
};

struct IndicialProfile {
  int f = 0;
  std::vector<IndicialElement> elements;  // sorted by value
  std::optional<double> mu0;              // from the lichnerowicz-tracefree minimum
  std::optional<double> mu1;              // from the least nonzero scalar eigenvalue
  std::optional<double> mu_flat;          // element of u (both nonzero parts)
  std::optional<int> perturbation_order;  // N with |h| = O(x^N), if supplied
  // Whether mu1 is the least nonzero element of the generated index set:
  // always when mu1 in (0, 1], otherwise only for N >= mu1.
  bool mu1_certified = false;
};

IndicialProfile index_set(const spectra::SpectrumTable& spectrum, int f,
                          std::optional<int> perturbation_order = std::nullopt);

struct Candidate {
  double gamma0 = 0.0;
  double gamma1 = 0.0;
  double alpha = 0.0;
};

struct WindowOptions {
  // Hoelder-regularity weight of the geometry; adds gamma0 < gamma, gamma1 < gamma.
  std::optional<double> geometry_gamma;
  // Require alpha = 1/N with N an odd integer.
  bool alpha_one_over_odd = false;
};

struct HolderWindow {
  std::optional<double> gamma0;
  std::optional<double> gamma1;
  std::optional<double> gamma;  // flat windows only
  std::optional<double> mu;     // flat windows only
  double alpha = 0.0;
  int dimB = 0;
  bool feasible = false;
  std::vector<std::string> binding;  // names of violated inequalities
};

// Inequality names as reported in HolderWindow::binding.
inline constexpr const char* kG0Range = "γ₀ ∈ (0, μ₀)";
inline constexpr const char* kG0Le2G1 = "γ₀ ≤ 2γ₁";
inline constexpr const char* kG0LtGamma = "γ₀ < γ";
inline constexpr const char* kG1Range = "γ₁ ∈ (0, μ₁)";
inline constexpr const char* kG1LeG0 = "γ₁ ≤ γ₀";
inline constexpr const char* kG1LtGamma = "γ₁ < γ";
inline constexpr const char* kG0EdgeCap = "γ₀ ≤ 2·min{1, γ₁}";
inline constexpr const char* kG1EdgeCap = "γ₁ ≤ 2";
inline constexpr const char* kAlphaMu0 = "α ∈ (0, μ₀−γ₀)";
inline constexpr const char* kAlphaMu1 = "α ∈ (0, μ₁−γ₁)";
inline constexpr const char* kAlphaUnit = "α ∈ (0, 1)";
inline constexpr const char* kAlphaOdd = "α = 1/N, N odd";
inline constexpr const char* kGammaRange = "γ ∈ (0, μ)";
inline constexpr const char* kAlphaMu = "α ∈ (0, μ−γ)";
inline constexpr const char* kGammaEdgeCap = "γ ≤ 2";

HolderWindow holder_window(double mu0, double mu1, int dimB, const Candidate& c,
                           const WindowOptions& options = {});

/// mu = element(u, f); checks gamma in (0, mu), alpha in (0, mu - gamma) and
/// (0, 1), gamma <= 2 when dimB > 0.
HolderWindow flat_window(double u, int f, double gamma, double alpha, int dimB);

/// Up to n feasible tuples from a deterministic interior grid of the
/// feasibility region, each re-verified with holder_window.
std::vector<Candidate> sample_window(double mu0, double mu1, int dimB, int n,
                                     const WindowOptions& options = {});

}  // namespace edgeflow::indicial
