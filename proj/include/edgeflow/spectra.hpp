#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace edgeflow::spectra {

enum class Kind { ScalarLaplacian, EinsteinTT, LichnerowiczTracefree };

std::string_view kind_name(Kind kind);
/// Parses "scalar-laplacian", "einstein-tt" or "lichnerowicz-tracefree".
std::optional<Kind> parse_kind(std::string_view text);

struct SpectrumRecord {
  double eigenvalue = 0.0;
  int multiplicity = 1;
  Kind kind = Kind::ScalarLaplacian;
};

struct SpectrumTable {
  std::vector<SpectrumRecord> records;
  int fibre_dimension = 0;
  std::string source;

  /// Records of one kind in file order.
  std::vector<SpectrumRecord> of_kind(Kind kind) const;
  bool has_kind(Kind kind) const;
};

/// Throws ValidationError on the first broken invariant:
/// multiplicities >= 1, finite eigenvalues, strictly increasing within a
/// kind, scalar eigenvalues >= 0, and a scalar zero eigenvalue whenever the
/// table holds scalar records or no records at all.
void validate(const SpectrumTable& table);

/// Parses the text format; `fibre_dimension_hint` is used when the text has
/// no `fibre_dimension=` header. Malformed lines raise ParseError.
SpectrumTable parse_spectrum(std::string_view text, int fibre_dimension_hint = 0);
SpectrumTable load_spectrum(const std::string& path, int fibre_dimension_hint = 0);

std::string format_spectrum(const SpectrumTable& table);
void save_spectrum(const SpectrumTable& table, const std::string& path);

/// Scalar Laplacian of the unit round S^f, eigenvalues k(k+f-1), k=0..k_max.
SpectrumTable sphere_scalar_spectrum(int f, int k_max);

/// Dimension of the irreducible SO(n) representation with highest weight
/// (w_1 >= w_2 >= ... >= 0), padded with zeros, by the Weyl dimension formula.
/// For even n a nonzero last entry counts both signs of that entry.
long long rotation_irrep_dimension(int n, const std::vector<int>& weight);

/// Einstein operator on trace-free transverse 2-tensors of the unit round S^f
/// (f >= 3): eigenvalues k(k+f-1) for k = 2..k_max, multiplicity the SO(f+1)
/// representation of highest weight (k, 2). Empty for f < 3.
SpectrumTable sphere_tt_spectrum(int f, int k_max);

struct Violation {
  double eigenvalue = 0.0;
  std::string rule;
};

struct StabilityReport {
  std::optional<double> u0;  // min Spec of the trace-free tangential operator
  std::optional<double> u1;  // min nonzero scalar eigenvalue
  std::optional<double> u;   // min over both nonzero parts
  bool applicable = true;    // false when f < 3: no verdict is claimed
  bool tangential = false;
  bool weak = false;
  std::vector<Violation> violations;
  std::string note;
};

inline constexpr const char* kRuleTTNonpositive = "einstein-tt nonpositive";
inline constexpr const char* kRuleTTNegative = "einstein-tt negative";
inline constexpr const char* kRuleScalarClosed = "scalar in (f, 2(f+1)]";
inline constexpr const char* kRuleScalarOpen = "scalar in (f, 2(f+1))";

/// Tangential stability for f >= 3: Spec(einstein-tt) > 0 and no nonzero
/// scalar eigenvalue in (f, 2(f+1)]. Violations hold every witness of this
/// criterion; both verdict flags are filled. `lichnerowicz` is optional and
/// only feeds u0 / u.
StabilityReport check_tangential_stability(const SpectrumTable& einstein_tt,
                                           const SpectrumTable& scalar, int f,
                                           const SpectrumTable* lichnerowicz = nullptr);

/// Weak variant: Spec(einstein-tt) >= 0 and the open interval (f, 2(f+1)).
StabilityReport check_weak_tangential_stability(const SpectrumTable& einstein_tt,
                                                const SpectrumTable& scalar, int f,
                                                const SpectrumTable* lichnerowicz = nullptr);

}  // namespace edgeflow::spectra
